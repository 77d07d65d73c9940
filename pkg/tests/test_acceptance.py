"""Acceptance criteria, one test each.

Every test runs the relevant seeded checks at (at least) the required instance
counts, asserts the time budget where there is one, and records a single
pass/fail line that is printed in the terminal summary.
"""

import subprocess
import sys
import time

from conftest import ACCEPTANCE_LINES

from smithcalc import charp, checks
from smithcalc.roots import highest_root_coeffs, root_datum

SEED = 42


def _criterion(label, wanted, budget=None, extra=None):
    """wanted: list of (check name, count to run, minimum instances)."""
    t0 = time.perf_counter()
    failures = []
    for name, count, minimum in wanted:
        r = checks.run_check(name, SEED, count)
        if not r.passed:
            failures.append(f"{name}: {r.counterexample}")
        elif r.instances < minimum:
            failures.append(f"{name}: only {r.instances} instances")
    if extra is not None:
        failures += extra()
    dt = time.perf_counter() - t0
    if budget is not None and dt >= budget:
        failures.append(f"took {dt:.1f}s, budget {budget}s")
    ok = not failures
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}  ({dt:.1f}s)")
    assert ok, "; ".join(failures)


def test_smith_congruence():
    _criterion("smith congruence, 300 regular G-complexes, p in {2,3,5}, < 30 s",
               [("simplicial.smith_congruence", 300, 300)], budget=30)


def test_duality_and_exchange():
    _criterion("D^2 = id on 300 functions; D(j_U) = i_U on 20 complexes",
               [("simplicial.duality_involution", 300, 300), ("simplicial.star_exchange", 20, 20)])


def test_smith_commutes_with_operations():
    ops = ["dualize", "u_shriek_push", "u_star_push", "u_star_pull", "u_shriek_pull", "psi"]
    _criterion("smith restriction commutes with D, u_!, u_*, u^*, u^!, psi (100 each)",
               [(f"simplicial.smith_commutes_{op}", 100, 100) for op in ops])


def test_hecke():
    def orders():
        r = checks.run_check("hecke.group_ring_bridge", SEED)
        seen = set(r.detail.get("orders", []))
        return [] if {2, 3, 4, 6, 8} <= seen else [f"group orders covered: {sorted(seen)}"]
    _criterion("hecke associativity, smith homomorphism, group rings |G| in {2,3,4,6,8}",
               [("hecke.associativity", 100, 100), ("hecke.smith_homomorphism", 100, 100),
                ("hecke.group_ring_bridge", 1, 1)], extra=orders)


def test_fourier_sato():
    def signs():
        r = checks.run_check("conic.mod2_necessity", SEED)
        sq = checks.run_check("conic.smith_ft_square", SEED, 1).detail
        out = []
        if sorted(r.detail.get("over_Z", [])) != [-1, 1]:
            out.append(f"mod-2 example over Z gave {r.detail}")
        if any(a == b for a, b in sq.get("swap_Q2_p2", [])):
            out.append("swap example agrees over Z")
        if any((a - b) % 3 for a, b in sq.get("cyclic_Q3_p3", [])):
            out.append("cyclic example fails mod 3")
        return out
    _criterion("fourier-sato box oracle (50), smith-FT square on Q^2 swap and Q^3 cycle, +1 vs -1 over Z",
               [("conic.box_oracle", 50, 50), ("conic.smith_ft_square", 30, 32),
                ("conic.mod2_necessity", 1, 1)], extra=signs)


def test_root_golden_values():
    golden = {
        ("G", 2): (2, 3),
        ("F", 4): (2, 3, 4, 2),
        ("E", 6): (1, 2, 2, 3, 2, 1),
        ("E", 7): (2, 2, 3, 4, 3, 2, 1),
        ("E", 8): (2, 3, 4, 6, 5, 4, 3, 2),
    }

    def direct():
        return [f"{t}{n}: {highest_root_coeffs(root_datum(t, n))}" for (t, n), v in golden.items()
                if tuple(highest_root_coeffs(root_datum(t, n))) != v]
    _criterion("highest roots G2, F4, E6, E7, E8; kac lists rank <= 8, p in {2,3,5}; C_n gives Sp x Sp",
               [("roots.golden_values", 1, 5), ("roots.kac_lists", 1, 1),
                ("roots.symplectic_centralizers", 1, 1)], extra=direct)


def test_centralizer_two_routes():
    _criterion("centralizer by deletion = by congruence at every prime node, < 60 s",
               [("roots.centralizer_two_routes", 1, 1)], budget=60)


def test_coroot_compatibility():
    _criterion("coroot compatibility and reflection matching at every prime node",
               [("roots.coroot_compatibility", 1, 1)])


def test_branching_c2():
    _criterion("C2 to A1 x A1 branching of five characters against a weight sort",
               [("roots.branching_c2", 1, 5)])


def test_charp_embeddings():
    def f4():
        rep = charp.f4_primitivity_check()
        return [] if rep["passed"] and rep["roots"] == 48 and not rep["non_primitive_roots"] else [f"f4: {rep}"]

    def detail():
        out = []
        ex = checks.run_check("charp.odd_sum_exhaustive", SEED)
        if ex.instances != 36:
            out.append(f"exhaustive (1,1) covered {ex.instances} pairs")
        so = checks.run_check("charp.so_to_sp", SEED).detail
        for key in ("1,F2", "2,F2"):
            if so.get(key, [None])[0] != "enumerated":
                out.append(f"so_to_sp {key} not exhaustive")
        return out
    _criterion("char 2: odd sums (36 exhaustive, 1000 sampled x4), so_to_sp 2a <= 4, F4 48 primitive roots",
               [("charp.odd_sum_exhaustive", 1, 36), ("charp.odd_sum_sampled", 1000, 4000),
                ("charp.so_to_sp", 1, 2)], extra=lambda: f4() + detail())


def test_tate():
    def chis():
        d = checks.run_check("tate.chi_examples", SEED).detail["chi_K_free"]
        return [] if all(d[str(p)] == [1, 0] for p in (2, 3, 5)) else [f"chi: {d}"]
    _criterion("tate: chi(K)=1, chi(free)=0, periodicity witnesses, cochain lemma (100), links, < 30 s",
               [("tate.chi_examples", 1, 6), ("tate.periodicity_witnesses", 20, 24),
                ("tate.cochain_lemma", 100, 100), ("tate.link_cone_perfection", 1, 3)],
               budget=30, extra=chis)


def test_end_to_end():
    t0 = time.perf_counter()
    res = subprocess.run([sys.executable, "-m", "smithcalc", "check", "all", "--seed", "42"],
                         capture_output=True, text=True, timeout=600)
    dt = time.perf_counter() - t0
    ok = res.returncode == 0 and dt < 300
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  check all --seed 42 exits 0 in < 5 min  ({dt:.1f}s)")
    assert res.returncode == 0, res.stdout[-2000:] + res.stderr[-2000:]
    assert dt < 300
