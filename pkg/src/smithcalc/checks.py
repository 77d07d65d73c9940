"""Seeded property suite behind ``check all``.

Every check draws its random instances from ``random.Random(f"{seed}/{name}/{i}")``,
so a failing instance can be replayed on its own.  A check returns the number
of instances it examined and, on failure, the first counterexample as a JSON
document.  Reports contain no timings unless asked for, so identical seeds
give byte-identical reports.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

import numpy as np

from . import charp, conic, hecke, tate
from . import io as sio
from .errors import SmithcalcError
from .fields import finite_field
from .oracles import alternation_decompose, box_oracle
from .roots import (
    SIMPLE_TYPES,
    InvariantElement,
    branching,
    center_index_check,
    centralizer_by_congruence,
    centralizer_by_deletion,
    decompose,
    display_layout,
    dual_datum,
    highest_root,
    highest_root_coeffs,
    kac_order_p_nodes,
    normalize_type,
    restrict_invariants,
    root_datum,
    sha_model,
    smith_sha,
    verify_coroot_compatibility,
    weyl_character,
    weyl_dimension,
)
from .roots.kac import centralizer_datum
from .simplicial import (
    build_complex,
    dualize,
    euler_integral,
    fixed_subcomplex,
    inclusion,
    pullback,
    pullback_shriek,
    pushforward,
    pushforward_star,
    smith_restrict,
    specialize,
    standard_costandard,
    zero_subcomplex,
)
from .simplicial.action import GComplex
from .simplicial.complex import constant_map
from .simplicial.generators import (
    random_cfun,
    random_closed_manifold,
    random_complex,
    random_equivariant_map,
    random_invariant_cfun,
    random_invariant_signs,
    random_regular_gcomplex,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    instances: int
    detail: dict = field(default_factory=dict)
    counterexample: dict | None = None
    seconds: float = 0.0

    def to_json(self, timing: bool = False) -> dict:
        out = {"name": self.name, "passed": self.passed, "instances": self.instances, "detail": self.detail}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


class _Fail(Exception):
    def __init__(self, doc: dict):
        super().__init__("property violated")
        self.doc = doc


@dataclass
class _Check:
    name: str
    fn: Callable
    count: int


CHECKS: dict[str, _Check] = {}


def check(name: str, count: int = 1):
    def deco(fn):
        CHECKS[name] = _Check(name, fn, count)
        return fn
    return deco


def _rng(seed, name, i) -> random.Random:
    return random.Random(f"{seed}/{name}/{i}")


def _loop(seed, name, n, body) -> tuple[int, dict]:
    """Run ``body(rng)`` on n instances; body returns (ok, witnesses)."""
    for i in range(n):
        ok, wit = body(_rng(seed, name, i))
        if not ok:
            doc = {"instance": i, "seed": f"{seed}/{name}/{i}"}
            doc.update({k: _enc(v) for k, v in wit.items()})
            raise _Fail(doc)
    return n, {}


def _enc(v):
    try:
        return sio.encode(v)
    except TypeError:
        return sio._plain(v)
    except SmithcalcError:
        return repr(v)


def golden_tables() -> dict:
    return json.loads(resources.files("smithcalc").joinpath("data/root_tables.json").read_text())


# ---------------------------------------------------------------------------
# simplicial


@check("simplicial.smith_congruence", 300)
def _smith_congruence(seed, n):
    primes = [2, 3, 5]
    counter = {2: 0, 3: 0, 5: 0}
    largest = 0
    for i in range(n):
        rng = _rng(seed, "simplicial.smith_congruence", i)
        p = primes[i % 3]
        # small, medium and large complexes in turn
        g = random_regular_gcomplex(rng, p=p, max_simplices=150, min_simplices=(0, 30, 80)[(i // 3) % 3])
        f = random_invariant_cfun(rng, g)
        if euler_integral(smith_restrict(g, f)) != euler_integral(f):
            raise _Fail({"instance": i, "gcomplex": _enc(g), "f": _enc(f)})
        counter[p] += 1
        largest = max(largest, len(g.base))
    return n, {"per_prime": counter, "largest": largest}


@check("simplicial.duality_involution", 300)
def _duality(seed, n):
    def body(rng):
        c = random_complex(rng, max_simplices=200)
        f = random_cfun(rng, c)
        return dualize(dualize(f)) == f, {"f": f}
    return _loop(seed, "simplicial.duality_involution", n, body)


@check("simplicial.star_exchange", 20)
def _star_exchange(seed, n):
    stars = 0
    for i in range(n):
        m = random_closed_manifold(_rng(seed, "simplicial.star_exchange", i))
        for v in m.vertices:
            i_u, j_u = standard_costandard(m, v)
            if dualize(j_u) != i_u:
                raise _Fail({"instance": i, "complex": _enc(m), "vertex": str(v)})
            stars += 1
    return n, {"stars": stars}


def _smith_square(op):
    def body(rng):
        fixed_weight = 0.5 if op == "specialize" else 0.3
        g = random_regular_gcomplex(rng, max_simplices=100, fixed_weight=fixed_weight,
                                    min_simplices=rng.choice([0, 25]))
        if op == "dual":
            f = random_invariant_cfun(rng, g)
            return smith_restrict(g, dualize(f)) == dualize(smith_restrict(g, f)), {"gcomplex": g, "f": f}
        if op == "specialize":
            signs = random_invariant_signs(rng, g)
            f = random_invariant_cfun(rng, g)
            z = zero_subcomplex(g.base, signs)
            lhs = smith_restrict(g.restrict(z), specialize(g.base, signs, f))
            fx = fixed_subcomplex(g)
            rhs = specialize(fx, {v: signs[v] for v in fx.vertices}, smith_restrict(g, f))
            return lhs == rhs, {"gcomplex": g, "f": f, "signs": {str(k): v for k, v in signs.items()}}
        em = random_equivariant_map(rng, g)
        s, t, u, uf = em.source, em.target, em.map, em.on_fixed_points()
        if op in ("push", "push_star"):
            f = random_invariant_cfun(rng, s)
            fn = pushforward if op == "push" else pushforward_star
            ok = smith_restrict(t, fn(u, f)) == fn(uf, smith_restrict(s, f))
        else:
            f = random_invariant_cfun(rng, t)
            fn = pullback if op == "pull" else pullback_shriek
            ok = smith_restrict(s, fn(u, f)) == fn(uf, smith_restrict(t, f))
        return ok, {"source": s, "target": t, "assignment": {str(k): v for k, v in u.assignment.items()},
                    "f": f}
    return body


for _op, _label in [("dual", "dualize"), ("push", "u_shriek_push"), ("push_star", "u_star_push"),
                    ("pull", "u_star_pull"), ("pull_shriek", "u_shriek_pull"), ("specialize", "psi")]:
    def _make(op=_op, label=_label):
        name = f"simplicial.smith_commutes_{label}"

        @check(name, 100)
        def _run(seed, n):
            return _loop(seed, name, n, _smith_square(op))
        return _run
    _make()


@check("simplicial.functoriality", 50)
def _functoriality(seed, n):
    def body(rng):
        g = random_regular_gcomplex(rng, max_simplices=80)
        u = random_equivariant_map(rng, g).map
        v = constant_map(u.target)
        f = random_cfun(rng, u.source)
        h = random_cfun(rng, v.target)
        ok = (pushforward(u.compose(v), f) == pushforward(v, pushforward(u, f))
              and pullback(u.compose(v), h) == pullback(u, pullback(v, h))
              and euler_integral(pushforward(u, f)) == euler_integral(f))
        return ok, {"f": f}
    return _loop(seed, "simplicial.functoriality", n, body)


@check("simplicial.base_change", 50)
def _base_change(seed, n):
    def body(rng):
        g = random_regular_gcomplex(rng, max_simplices=80)
        u = random_equivariant_map(rng, g).map
        y = u.target
        w = y.closure(rng.sample(list(y.simplices), max(1, len(y) // 3)))
        z = u.preimage(w)
        f = random_cfun(rng, u.source)
        return pushforward(u, f).restrict(w) == pushforward(u.restrict(z, w), f.restrict(z)), {"f": f}
    return _loop(seed, "simplicial.base_change", n, body)


@check("simplicial.closed_immersion_duality", 50)
def _closed_immersion(seed, n):
    def body(rng):
        c = random_complex(rng, max_simplices=100)
        sub = c.closure(rng.sample(list(c.simplices), max(1, len(c) // 3)))
        f = random_cfun(rng, sub)
        i = inclusion(sub, c)
        return dualize(pushforward(i, f)) == pushforward(i, dualize(f)), {"f": f}
    return _loop(seed, "simplicial.closed_immersion_duality", n, body)


@check("simplicial.dual_triangular", 30)
def _dual_triangular(seed, n):
    def body(rng):
        c = random_complex(rng, max_simplices=60)
        ok = True
        for s in c.simplices:
            col = dualize(random_cfun(rng, c, density=0) + _indicator(c, s))
            for t, v in col.coefficients.items():
                if t == s:
                    ok &= v == (-1) ** (len(s) - 1)
                else:
                    ok &= set(t) < set(s)
        return ok, {"complex": c}
    return _loop(seed, "simplicial.dual_triangular", n, body)


def _indicator(c, s):
    from .simplicial import CFun
    return CFun.indicator(c, [s])


# ---------------------------------------------------------------------------
# hecke


@check("hecke.associativity", 100)
def _hecke_assoc(seed, n):
    def body(rng):
        c = random_complex(rng, max_simplices=30)
        ring = rng.choice(["Z", "F2", "F3"])
        f, g, h = (hecke.random_kernel(rng, c, ring) for _ in range(3))
        ok = hecke.convolve(hecke.convolve(f, g), h) == hecke.convolve(f, hecke.convolve(g, h))
        return ok, {"f1": f, "f2": g, "f3": h}
    return _loop(seed, "hecke.associativity", n, body)


@check("hecke.smith_homomorphism", 100)
def _hecke_smith(seed, n):
    def body(rng):
        act = hecke.random_hecke_action(rng)
        f = hecke.random_invariant_kernel(rng, act)
        g = hecke.random_invariant_kernel(rng, act)
        fg = hecke.convolve(f, g)
        ok = hecke.check_invariance(fg, act)
        ok = ok and hecke.smith_hecke(fg, act) == hecke.convolve(hecke.smith_hecke(f, act),
                                                                  hecke.smith_hecke(g, act))
        fixed = fixed_subcomplex(act.varpi_gcomplex())
        if ok and len(fixed):
            ok = hecke.check_invariance(hecke.smith_hecke(f, act), act.induced_on(fixed, act.normalizer))
        return ok, {"group": act, "f1": f, "f2": g}
    return _loop(seed, "hecke.smith_homomorphism", n, body)


@check("hecke.group_ring_bridge")
def _group_ring(seed, n):
    groups = 0
    for order in (2, 3, 4, 5, 6, 7, 8):
        for name, g in hecke.small_groups(order).items():
            rep = hecke.group_ring_bridge(g).verify()
            if not all(rep.values()):
                raise _Fail({"group": name, "report": rep})
            groups += 1
    return groups, {"orders": [2, 3, 4, 5, 6, 7, 8]}


# ---------------------------------------------------------------------------
# conic


@check("conic.box_oracle", 50)
def _box(seed, n):
    def body(rng):
        dim = rng.choice([1, 2])
        f = conic.random_conic_cfun(rng, conic.random_fan(rng, dim))
        xi = [rng.randint(-4, 4) for _ in range(dim)]
        return conic.ft_value(f, xi) == box_oracle(f, xi), {"f": f, "covector": xi}
    return _loop(seed, "conic.box_oracle", n, body)


@check("conic.conicity", 30)
def _conicity(seed, n):
    def body(rng):
        fan = conic.random_fan(rng, rng.choice([1, 2, 3]))
        f = conic.random_conic_cfun(rng, fan)
        xi = [rng.randint(-3, 3) for _ in range(fan.dim)]
        t = rng.randint(2, 5)
        return conic.ft_value(f, xi) == conic.ft_value(f, [t * x for x in xi]), {"f": f, "covector": xi}
    return _loop(seed, "conic.conicity", n, body)


@check("conic.linearity", 30)
def _linearity(seed, n):
    def body(rng):
        fan = conic.random_fan(rng, rng.choice([1, 2, 3]))
        f, g = conic.random_conic_cfun(rng, fan), conic.random_conic_cfun(rng, fan)
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        xi = [rng.randint(-3, 3) for _ in range(fan.dim)]
        ok = conic.ft_value(a * f + b * g, xi) == a * conic.ft_value(f, xi) + b * conic.ft_value(g, xi)
        return ok, {"f": f, "g": g, "covector": xi}
    return _loop(seed, "conic.linearity", n, body)


def swap_example():
    """Q^2 with the coordinate swap and f = 1_V."""
    fan = conic.refine_by_hyperplane(conic.coordinate_fan(2), (1, -1))
    return conic.ConicCFun.constant(fan), [1, 0]


def cyclic_example():
    """Q^3 with the cyclic coordinate permutation and f = 1_V."""
    fan = conic.coordinate_fan(3)
    for nrm in [(1, -1, 0), (0, 1, -1), (1, 0, -1)]:
        fan = conic.refine_by_hyperplane(fan, nrm)
    return conic.ConicCFun.constant(fan), [1, 2, 0]


@check("conic.smith_ft_square", 30)
def _square(seed, n):
    covs = [(1,), (-1,), (0,), (3,), (-2,)]
    detail = {}
    for label, (f, perm) in [("swap_Q2_p2", swap_example()), ("cyclic_Q3_p3", cyclic_example())]:
        rows = conic.smith_ft_square(f, perm, covs)
        if not all(r["equal_mod_p"] for r in rows):
            raise _Fail({"example": label, "rows": rows})
        detail[label] = [[r["ft_then_smith"], r["smith_then_ft"]] for r in rows]

    def body(rng):
        perm = rng.choice([[1, 0], [1, 2, 0], [1, 0, 2]])
        fan = conic.random_invariant_fan(rng, perm)
        f = conic.random_invariant_conic_cfun(rng, fan, perm)
        m = len(conic.fixed_fan(fan, perm).rays[0])
        cv = [tuple(rng.randint(-3, 3) for _ in range(m)) for _ in range(4)]
        rows = conic.smith_ft_square(f, perm, cv)
        return all(r["equal_mod_p"] for r in rows), {"f": f, "perm": perm, "rows": rows}
    k, _ = _loop(seed, "conic.smith_ft_square", n, body)
    return k + 2, detail


@check("conic.mod2_necessity")
def _mod2(seed, n):
    f, perm = swap_example()
    rows = conic.smith_ft_square(f, perm, [(1,), (-1,), (0,), (3,)])
    ok = all(r["ft_then_smith"] == 1 and r["smith_then_ft"] == -1 and not r["equal_over_Z"]
             and r["equal_mod_p"] for r in rows)
    if not ok:
        raise _Fail({"rows": rows})
    return len(rows), {"over_Z": [1, -1]}


# ---------------------------------------------------------------------------
# roots


CLASSICAL_ROOT_COUNTS = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
}
EXCEPTIONAL_ROOT_COUNTS = {"E6": 72, "E7": 126, "E8": 240, "F4": 48, "G2": 12}


def expected_kac_nodes(t: str, p: int, golden: dict | None = None) -> list[int]:
    """Nodes with coefficient p: the classical pattern, or the stored exceptional table."""
    golden = golden or golden_tables()
    kind, n = t[0], int(t[1:])
    if t in golden["exceptional_kac_nodes"]:
        return golden["exceptional_kac_nodes"][t][str(p)]
    if p != 2 or kind == "A":
        return []
    if kind == "B":
        return list(range(2, n + 1))
    if kind == "C":
        return list(range(1, n))
    return list(range(2, n - 1))


@check("roots.root_counts")
def _root_counts(seed, n):
    for t in SIMPLE_TYPES:
        rd = root_datum(t)
        want = EXCEPTIONAL_ROOT_COUNTS.get(t) or CLASSICAL_ROOT_COUNTS[t[0]](int(t[1:]))
        if len(rd.roots) != want:
            raise _Fail({"type": t, "roots": len(rd.roots), "expected": want})
        top = highest_root(rd)
        if not rd.is_dominant(top):
            raise _Fail({"type": t, "highest_root_not_dominant": list(top)})
        c = highest_root_coeffs(rd)
        if any(x > y for a in rd.positive_roots for x, y in zip(rd.coefficients(a), c)):
            raise _Fail({"type": t, "highest_root_not_maximal": list(c)})
    return len(SIMPLE_TYPES), {}


@check("roots.golden_values")
def _golden(seed, n):
    gold = golden_tables()
    f4 = [list(r) for r in root_datum("F4").cartan]
    if f4 != gold["cartan_F4"]:
        raise _Fail({"cartan_F4": f4})
    got = {}
    for t, want in gold["highest_root"].items():
        c = list(highest_root_coeffs(root_datum(t)))
        got[t] = c
        if c != want:
            raise _Fail({"type": t, "highest_root": c, "expected": want})
        lay = display_layout(root_datum(t))
        rows = gold["diagram_rows"][t]
        above = [lay["above"]["value"], lay["above"]["over"]] if lay["above"] else None
        if lay["row"] != rows["row"] or above != rows["above"]:
            raise _Fail({"type": t, "layout": lay})
    return len(got), {"highest_root": got}


@check("roots.kac_lists")
def _kac(seed, n):
    gold = golden_tables()
    count = 0
    for t in SIMPLE_TYPES:
        rd = root_datum(t)
        for p in (2, 3, 5):
            got = [k.index for k in kac_order_p_nodes(rd, p)]
            if got != expected_kac_nodes(t, p, gold):
                raise _Fail({"type": t, "p": p, "nodes": got, "expected": expected_kac_nodes(t, p, gold)})
            count += 1
    return count, {}


@check("roots.symplectic_centralizers")
def _sp(seed, n):
    count = 0
    for r in range(2, 9):
        rd = root_datum("C", r)
        for node in kac_order_p_nodes(rd, 2):
            a = node.index
            got = normalize_type(centralizer_datum(rd, node).type)
            if got != normalize_type(f"C{a}xC{r - a}"):
                raise _Fail({"type": f"C{r}", "node": a, "centralizer": got})
            count += 1
    for r in range(2, 9):
        rd = root_datum("B", r)
        for node in kac_order_p_nodes(rd, 2):
            a = node.index
            want = f"D{a}" + (f"xB{r - a}" if a < r else "")
            if normalize_type(centralizer_datum(rd, node).type) != normalize_type(want):
                raise _Fail({"type": f"B{r}", "node": a})
            count += 1
    gold = golden_tables()["exceptional_centralizers"]
    for t, table in gold.items():
        rd = root_datum(t)
        c = highest_root_coeffs(rd)
        for idx, want in table.items():
            node = next(k for k in kac_order_p_nodes(rd, c[int(idx) - 1]) if k.index == int(idx))
            if centralizer_datum(rd, node).type != want:
                raise _Fail({"type": t, "node": idx, "expected": want})
            count += 1
    return count, {}


def _prime_nodes(rd):
    for p in (2, 3, 5, 7):
        yield from kac_order_p_nodes(rd, p)


@check("roots.centralizer_two_routes")
def _two_routes(seed, n):
    count = 0
    for t in SIMPLE_TYPES:
        rd = root_datum(t)
        for node in _prime_nodes(rd):
            h = centralizer_by_deletion(rd, node)
            if set(h.roots) != centralizer_by_congruence(rd, node) or h.rank != rd.rank:
                raise _Fail({"type": t, "node": node.index})
            count += 1
    return count, {}


@check("roots.coroot_compatibility")
def _coroots(seed, n):
    count = 0
    for t in SIMPLE_TYPES:
        rd = root_datum(t)
        for node in _prime_nodes(rd):
            rep = verify_coroot_compatibility(rd, node)
            if not rep["passed"]:
                raise _Fail({k: v for k, v in rep.items()})
            if not center_index_check(rd, node)["passed"]:
                raise _Fail({"type": t, "node": node.index, "center_index": False})
            h = centralizer_datum(rd, node)
            if set(dual_datum(h).roots) != set(h.coroots):
                raise _Fail({"type": t, "node": node.index, "dual_roots": False})
            count += 1
    return count, {}


@check("roots.dual_involution")
def _dual(seed, n):
    count = 0
    for t in SIMPLE_TYPES:
        for iso in ("sc", "ad"):
            rd = root_datum(t, isogeny=iso)
            d = dual_datum(rd)
            if dual_datum(d) != rd or d.cartan != tuple(zip(*rd.cartan)):
                raise _Fail({"type": t, "isogeny": iso})
            count += 1
    for r in range(2, 9):
        if dual_datum(root_datum("B", r)) != root_datum("C", r, "ad"):
            raise _Fail({"type": f"B{r}", "dual": "not C adjoint"})
    return count, {}


@check("roots.weyl_dimension", 30)
def _weyl_dim(seed, n):
    small = [t for t in SIMPLE_TYPES if int(t[1:]) <= 4]

    def body(rng):
        t = rng.choice(small)
        rd = root_datum(t)
        lam = tuple(rng.randint(0, 3 if t != "F4" else 1) for _ in range(rd.rank))
        lam = rd.weight_of(lam)
        chi = weyl_character(rd, lam)
        ok = sum(chi.weights.values()) == weyl_dimension(rd, lam) and decompose(chi) == [(lam, 1)]
        return ok, {"datum": rd, "weight": list(lam)}
    return _loop(seed, "roots.weyl_dimension", n, body)


def c2_pair():
    """(C2, its node, dual of C2, dual of the A1xA1 centralizer)."""
    c2 = root_datum("C2")
    node = kac_order_p_nodes(c2, 2)[0]
    return c2, node, dual_datum(c2), dual_datum(centralizer_datum(c2, node))


def first_five_weights(g):
    doms = {(a, b) for a in range(-4, 5) for b in range(-4, 5) if g.is_dominant((a, b))}
    return sorted(doms, key=lambda w: (g.level(w), w))[:5]


@check("roots.branching_c2")
def _branching(seed, n):
    _, _, g, h = c2_pair()
    table = {}
    for lam in first_five_weights(g):
        got = dict(branching(g, h, lam))
        want = alternation_decompose(h, weyl_character(g, lam).weights)
        if got != want:
            raise _Fail({"weight": list(lam), "branching": _pairs(got), "oracle": _pairs(want)})
        table[sio._key(lam)] = _pairs(got)
    return len(table), {"branching": table}


def _pairs(d):
    return [[list(k), v] for k, v in sorted(d.items())]


@check("roots.smith_sha_multiplicative", 30)
def _sha(seed, n):
    c2, node, g, h = c2_pair()
    model = sha_model(c2)

    def body(rng):
        pts = [(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(2)]
        e1 = model.orbit_basis(pts[0]).scale(rng.randint(-2, 2)) + model.unit()
        e2 = model.orbit_basis(pts[1])
        s = lambda e: smith_sha(model, e, node)  # noqa: E731
        ok = (restrict_invariants(g, h, e1 * e2) == restrict_invariants(g, h, e1) * restrict_invariants(g, h, e2)
              and s(e1 * e2) == s(e1) * s(e2) and s(e1 + e2) == s(e1) + s(e2)
              and s(model.unit()) == InvariantElement.unit(h, "F2"))
        return ok, {"e1": e1, "e2": e2}
    return _loop(seed, "roots.smith_sha_multiplicative", n, body)


# ---------------------------------------------------------------------------
# charp


@check("charp.odd_sum_exhaustive")
def _odd_exh(seed, n):
    rep = charp.odd_orthogonal_sum_embedding(1, 1, 2)
    if not rep["passed"] or rep["pairs"] != 36:
        raise _Fail(rep)
    return rep["pairs"], {"mode": rep["mode"], "source_orders": rep["source_orders"]}


@check("charp.odd_sum_sampled", 1000)
def _odd_sampled(seed, n):
    detail = {}
    for a, b, q in [(1, 2, 2), (2, 2, 2), (1, 2, 4), (2, 2, 4)]:
        rep = charp.odd_orthogonal_sum_embedding(a, b, q, samples=n, seed=seed)
        if not rep["passed"]:
            raise _Fail({"a": a, "b": b, "q": q, "failures": rep["failures"][:1],
                         "unique_line": rep["unique_line"]})
        detail[f"{a},{b},F{q}"] = rep["pairs"]
    return 4 * n, detail


@check("charp.so_to_sp")
def _so_sp(seed, n):
    detail = {}
    for a, q in [(1, 2), (2, 2), (1, 4)]:
        rep = charp.so_to_sp(a, q)
        if not rep["passed"]:
            raise _Fail({k: v for k, v in rep.items()})
        detail[f"{a},F{q}"] = [rep["checked"], rep["count"], rep["so_count"]]
    return len(detail), detail


@check("charp.alternating_polar")
def _alternating(seed, n):
    count = 0
    for q in (2, 4):
        for d in (2, 4, 6, 8):
            if q ** d > 2 ** 16:
                continue
            f = charp.standard_form(d, q)
            b, alt = charp.polar_form(f)
            vecs = f.all_vectors
            F = f.field
            diag = F.matmul(F.matmul(vecs, b), vecs.T) if len(vecs) <= 4096 else None
            if not alt or (diag is not None and np.any(np.diagonal(diag))):
                raise _Fail({"dim": d, "q": q})
            count += 1
    return count, {}


@check("charp.dickson_additivity")
def _dickson(seed, n):
    f = charp.standard_form(4)
    group = charp.enumerate_isometries(f)
    F = finite_field(2)
    d = {m.tobytes(): charp.dickson_invariant(m, f) for m in group}
    for g, h in itertools.product(group, group):
        if d[F.matmul(g, h).tobytes()] != d[g.tobytes()] ^ d[h.tobytes()]:
            raise _Fail({"g": g.tolist(), "h": h.tolist()})
    return len(group) ** 2, {"group_order": len(group), "so_order": sum(1 for v in d.values() if v == 0)}


@check("charp.f4_primitivity")
def _f4(seed, n):
    rep = charp.f4_primitivity_check()
    if not rep["passed"] or rep["roots"] != 48:
        raise _Fail(rep)
    return rep["roots"], {"column_gcds": rep["column_gcds"]}


# ---------------------------------------------------------------------------
# tate


@check("tate.chi_examples")
def _chi(seed, n):
    out = {}
    for p in (2, 3, 5):
        k, fr = tate.unit(p), tate.free_module(p)
        vals = [tate.chi_mod_p(k), tate.chi_mod_p(fr)]
        if vals != [1, 0] or tate.is_perfect(k) or not tate.is_perfect(fr):
            raise _Fail({"p": p, "chi": vals})
        out[str(p)] = vals
    return 6, {"chi_K_free": out}


@check("tate.periodicity_witnesses", 20)
def _periodicity(seed, n):
    count = 0
    for p in (2, 3, 5):
        for short in ([False, True] if p == 2 else [False]):
            rep = tate.periodicity_witness(tate.unit(p), short=short).verify()
            if not (rep["quasi_isomorphism"] and rep["cone_perfect"]):
                raise _Fail({"p": p, "short": short, "report": rep})
            count += 1

    def body(rng):
        m = tate.random_tate_complex(rng)
        ok = True
        for short in ([False, True] if m.p == 2 else [False]):
            rep = tate.periodicity_witness(m, short=short).verify()
            ok &= rep["quasi_isomorphism"] and rep["cone_perfect"]
        return ok, {"complex": m}
    k, _ = _loop(seed, "tate.periodicity_witnesses", n, body)
    return count + k, {}


@check("tate.chi_additivity", 40)
def _chi_add(seed, n):
    def body(rng):
        a = tate.random_tate_complex(rng)
        b = tate.random_tate_complex(rng, a.p)
        c = tate.cone(tate.random_chain_map(rng, a, b))
        return tate.chi_mod_p(c) == (tate.chi_mod_p(b) - tate.chi_mod_p(a)) % a.p, {"source": a, "target": b}
    return _loop(seed, "tate.chi_additivity", n, body)


@check("tate.structure", 40)
def _structure(seed, n):
    def body(rng):
        m = tate.random_tate_complex(rng)
        h = tate.tate_cohomology(m)
        ok = all(h[i] == h[i + 2] for i in h if i + 2 in h)
        if tate.is_perfect(m):
            ok &= tate.chi_mod_p(m) == 0
        fr = tate.shift(tate.free_module(m.p, rank=rng.randint(1, 2)), rng.randint(-1, 1))
        ok &= tate.is_perfect(tate.tensor(m, fr))
        ok &= tate.is_perfect(tate.dual(m)) == tate.is_perfect(m)
        # acyclic free summand: same chi, same Tate cohomology
        deg = rng.randint(-2, 2)
        f1 = tate.free_module(m.p, degree=deg)
        acyclic = tate.cone(tate.ChainMap(f1, f1, {deg: np.eye(m.p, dtype=np.int64)}))
        big = tate.direct_sum(m, acyclic)
        ok &= tate.chi_mod_p(big) == tate.chi_mod_p(m)
        ok &= tate.tate_cohomology(big, tate.stable_window(m)) == h
        return ok, {"complex": m}
    return _loop(seed, "tate.structure", n, body)


@check("tate.cochain_lemma", 100)
def _cochains(seed, n):
    def body(rng):
        g = random_regular_gcomplex(rng, free=True, max_simplices=200)
        return tate.is_perfect(tate.equivariant_cochains(g)), {"gcomplex": g}
    return _loop(seed, "tate.cochain_lemma", n, body)


def square_reflection() -> GComplex:
    sq = build_complex([["1", "2"], ["2", "3"], ["3", "4"], ["1", "4"]])
    return GComplex(sq, {"2": "4", "4": "2"}, 2)


def hexagon_cone() -> GComplex:
    hexagon = [[f"h{i}", f"h{(i + 1) % 6}"] for i in range(6)]
    c = build_complex([s + ["apex"] for s in hexagon])
    return GComplex(c, {f"h{i}": f"h{(i + 3) % 6}" for i in range(6)}, 2)


@check("tate.link_cone_perfection")
def _links(seed, n):
    out = {}
    for label, g, v in [("square_reflection", square_reflection(), "1"),
                        ("hexagon_cone", hexagon_cone(), "apex")]:
        res = tate.link_cone_perfection(g, v)
        if not (res.applicable and res.perfect):
            raise _Fail({"example": label, "reason": res.reason})
        out[label] = True
    triv = tate.link_cone_perfection(GComplex(square_reflection().base, {}, 2), "1")
    if triv.applicable:
        raise _Fail({"example": "trivial_action", "applicable": True})
    if tate.is_perfect(tate.equivariant_cochains(hexagon_cone())):
        raise _Fail({"example": "hexagon_cone", "whole_complex_perfect": True})
    return 3, out


# ---------------------------------------------------------------------------
# runner


def run_check(name: str, seed: int = 42, count: int | None = None) -> CheckResult:
    c = CHECKS[name]
    n = c.count if count is None else count
    t0 = time.perf_counter()
    try:
        k, detail = c.fn(seed, n)
        res = CheckResult(name, True, k, detail)
    except _Fail as e:
        res = CheckResult(name, False, 0, {}, e.doc)
    except SmithcalcError as e:
        res = CheckResult(name, False, 0, {}, {"error": type(e).__name__, "message": str(e)})
    res.seconds = time.perf_counter() - t0
    return res


def select(pattern: str = "all") -> list[str]:
    if pattern == "all":
        return list(CHECKS)
    names = [n for n in CHECKS if n == pattern or n.startswith(pattern + ".")]
    if not names:
        raise KeyError(pattern)
    return names


def run_all(seed: int = 42, pattern: str = "all", scale: float = 1.0) -> list[CheckResult]:
    out = []
    for name in select(pattern):
        c = CHECKS[name]
        n = max(1, round(c.count * scale)) if c.count > 1 else c.count
        out.append(run_check(name, seed, n))
    return sorted(out, key=lambda r: r.name)
