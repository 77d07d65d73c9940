import json
import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from oracles import alternation_decompose, weyl_group_matrices
from smithcalc.errors import MalformedInputError, NotInvariantError
from smithcalc.roots import (
    SIMPLE_TYPES,
    InvariantElement,
    branching,
    center_index_check,
    centralizer_by_congruence,
    centralizer_by_deletion,
    centralizer_datum,
    classify,
    convolve_full,
    decompose,
    display_layout,
    dual_datum,
    highest_root,
    highest_root_coeffs,
    kac_order_p_nodes,
    normalize_type,
    recompose,
    restrict_invariants,
    root_datum,
    sha_model,
    smith_sha,
    verify_coroot_compatibility,
    weyl_character,
    weyl_dimension,
)

GOLDEN = json.loads((Path(__file__).parent / "golden" / "root_tables.json").read_text())
seeds = st.integers(min_value=0, max_value=2**32 - 1)

CLASSICAL_COUNTS = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
}
EXCEPTIONAL_COUNTS = {"E6": 72, "E7": 126, "E8": 240, "F4": 48, "G2": 12}


def expected_kac_nodes(t: str, p: int) -> list[int]:
    kind, n = t[0], int(t[1:])
    if t in GOLDEN["exceptional_kac_nodes"]:
        return GOLDEN["exceptional_kac_nodes"][t][str(p)]
    if p != 2 or kind == "A":
        return []
    if kind == "B":
        return list(range(2, n + 1))
    if kind == "C":
        return list(range(1, n))
    return list(range(2, n - 1))


def test_f4_cartan_matrix_as_printed():
    rd = root_datum("F", 4)
    assert [list(r) for r in rd.cartan] == GOLDEN["cartan_F4"]
    # in the weight basis the simple roots are the columns
    assert [list(a) for a in rd.simple_roots] == [list(c) for c in zip(*GOLDEN["cartan_F4"])]


@pytest.mark.parametrize("t", SIMPLE_TYPES)
def test_root_counts(t):
    for iso in ("sc", "ad"):
        rd = root_datum(t, isogeny=iso)
        n = EXCEPTIONAL_COUNTS.get(t) or CLASSICAL_COUNTS[t[0]](int(t[1:]))
        assert len(rd.roots) == n
        assert len(rd.positive_roots) == n // 2
        assert classify(rd.cartan) == [t] or normalize_type(t) == normalize_type(rd.type)
        roots = set(rd.roots)
        for a in roots:
            for i in range(rd.rank):
                assert rd.reflect(i, a) in roots


def test_small_examples_and_errors():
    assert len(root_datum("A", 1).roots) == 2
    with pytest.raises(MalformedInputError):
        root_datum("E", 5)
    with pytest.raises(MalformedInputError):
        root_datum("A", 9)
    with pytest.raises(MalformedInputError):
        root_datum("Q", 2)


@pytest.mark.parametrize("t", ["G2", "F4", "E6", "E7", "E8"])
def test_highest_roots_golden(t):
    rd = root_datum(t)
    assert list(highest_root_coeffs(rd)) == GOLDEN["highest_root"][t]
    lay = display_layout(rd)
    want = GOLDEN["diagram_rows"][t]
    assert lay["row"] == want["row"]
    if want["above"] is None:
        assert lay["above"] is None
    else:
        assert [lay["above"]["value"], lay["above"]["over"]] == want["above"]


@pytest.mark.parametrize("t", SIMPLE_TYPES)
def test_highest_root_is_dominant_and_maximal(t):
    rd = root_datum(t)
    theta = highest_root(rd)
    assert rd.is_dominant(theta)
    c = highest_root_coeffs(rd)
    for a in rd.positive_roots:
        assert all(x <= y for x, y in zip(rd.coefficients(a), c))


def test_highest_root_needs_irreducible():
    c2 = root_datum("C2")
    h = centralizer_datum(c2, kac_order_p_nodes(c2, 2)[0])
    with pytest.raises(MalformedInputError):
        highest_root_coeffs(h)


@pytest.mark.parametrize("t", SIMPLE_TYPES)
@pytest.mark.parametrize("p", [2, 3, 5])
def test_kac_nodes_match_coefficients(t, p):
    rd = root_datum(t)
    nodes = kac_order_p_nodes(rd, p)
    assert [n.index for n in nodes] == expected_kac_nodes(t, p)
    for n in nodes:
        assert n.order == p
        # beta_i is dual to the simple roots
        for j, a in enumerate(rd.simple_roots):
            assert sum(x * b for x, b in zip(a, n.coweight)) == int(j == n.index - 1)


def test_kac_nodes_examples():
    assert kac_order_p_nodes(root_datum("A7"), 2) == []
    assert len(kac_order_p_nodes(root_datum("E8"), 5)) == 1
    assert len(kac_order_p_nodes(root_datum("C5"), 2)) == 4
    with pytest.raises(MalformedInputError):
        kac_order_p_nodes(root_datum("C3", isogeny="ad"), 2)


def _centralizer_type(t, index):
    rd = root_datum(t)
    node = next(n for n in kac_order_p_nodes(rd, highest_root_coeffs(rd)[index - 1]) if n.index == index)
    return normalize_type(centralizer_datum(rd, node).type)


def test_centralizer_examples():
    assert _centralizer_type("C3", 2) == normalize_type("C1xC2")
    assert _centralizer_type("B3", 2) == normalize_type("D2xB1")
    assert _centralizer_type("F4", 1) == normalize_type("A1xC3")


@pytest.mark.parametrize("n", range(2, 9))
def test_symplectic_centralizers(n):
    rd = root_datum("C", n)
    for node in kac_order_p_nodes(rd, 2):
        a = node.index
        assert normalize_type(centralizer_datum(rd, node).type) == normalize_type(f"C{a}xC{n - a}")


@pytest.mark.parametrize("n", range(2, 9))
def test_odd_orthogonal_centralizers(n):
    rd = root_datum("B", n)
    for node in kac_order_p_nodes(rd, 2):
        a = node.index
        want = f"D{a}" + (f"xB{n - a}" if a < n else "")
        assert normalize_type(centralizer_datum(rd, node).type) == normalize_type(want)


@pytest.mark.parametrize("t", sorted(GOLDEN["exceptional_centralizers"]))
def test_exceptional_centralizers(t):
    rd = root_datum(t)
    c = highest_root_coeffs(rd)
    for idx, want in GOLDEN["exceptional_centralizers"][t].items():
        node = next(n for n in kac_order_p_nodes(rd, c[int(idx) - 1]) if n.index == int(idx))
        assert centralizer_datum(rd, node).type == want


@pytest.mark.parametrize("t", SIMPLE_TYPES)
def test_centralizer_two_routes(t):
    rd = root_datum(t)
    for p in (2, 3, 5, 7):
        for node in kac_order_p_nodes(rd, p):
            h = centralizer_by_deletion(rd, node)
            assert set(h.roots) == centralizer_by_congruence(rd, node)
            assert h.rank == rd.rank
            rep = verify_coroot_compatibility(rd, node)
            assert rep["passed"], rep["violations"]
            assert center_index_check(rd, node)["passed"]


def test_coroot_compatibility_examples():
    c2 = root_datum("C2")
    rep = verify_coroot_compatibility(c2, kac_order_p_nodes(c2, 2)[0])
    assert rep["passed"] and rep["node"] == 1 and rep["roots_checked"] == 4
    g2 = root_datum("G2")
    assert verify_coroot_compatibility(g2, kac_order_p_nodes(g2, 2)[0])["passed"]
    f4 = root_datum("F4")
    assert verify_coroot_compatibility(f4, kac_order_p_nodes(f4, 3)[0])["passed"]


def test_dual_datum():
    for n in range(2, 6):
        b = root_datum("B", n)
        assert dual_datum(b) == root_datum("C", n, "ad")
    g2 = root_datum("G2")
    assert normalize_type(dual_datum(g2).type) == "G2"
    for t in SIMPLE_TYPES:
        rd = root_datum(t)
        assert dual_datum(dual_datum(rd)) == rd
        d = dual_datum(rd)
        assert sorted(d.roots) == sorted(rd.coroots)
        assert [list(r) for r in d.cartan] == [list(c) for c in zip(*rd.cartan)]


@pytest.mark.parametrize("t", ["C3", "F4", "E7"])
def test_dual_of_centralizer_roots_are_coroots(t):
    rd = root_datum(t)
    for node in kac_order_p_nodes(rd, 2):
        h = centralizer_datum(rd, node)
        assert set(dual_datum(h).roots) == set(h.coroots)


def test_intermediate_isogeny_and_center():
    # SO(8) sits between Spin(8) and PSO(8)
    d4 = root_datum("D", 4, "intermediate", basis=[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 2]])
    assert d4.center_order == 2
    assert root_datum("D4").center_order == 4 and root_datum("D4", isogeny="ad").center_order == 1
    assert root_datum("A", 2, "intermediate", basis=[[1, 0], [0, 1]]) == root_datum("A2")
    with pytest.raises(MalformedInputError):
        root_datum("A", 2, "intermediate", basis=[[2, 0], [0, 2]])


# characters -----------------------------------------------------------------------


def test_a1_characters():
    rd = root_datum("A1")
    assert weyl_character(rd, (0,)) == InvariantElement.unit(rd)
    chi = weyl_character(rd, (1,))
    assert chi.weights == {(1,): 1, (-1,): 1}
    sq = chi * chi
    assert sq == weyl_character(rd, (2,)) + weyl_character(rd, (0,))
    assert decompose(sq) == [((0,), 1), ((2,), 1)]
    assert decompose(InvariantElement.unit(rd)) == [((0,), 1)]
    with pytest.raises(MalformedInputError):
        weyl_character(rd, (-1,))


def test_non_invariant_input_rejected():
    rd = root_datum("A1")
    with pytest.raises(NotInvariantError):
        InvariantElement(rd, "Z", {"1": 1})
    with pytest.raises(MalformedInputError):
        InvariantElement(rd, "Z", {"1,2": 1})


def test_fundamental_dimensions():
    assert weyl_character(root_datum("E8"), (0,) * 7 + (1,)).dimension() == 248
    assert weyl_dimension(root_datum("E8"), (1,) + (0,) * 7) == 3875
    assert weyl_character(root_datum("F4"), (0, 0, 0, 1)).dimension() == 26
    assert weyl_character(root_datum("G2"), (0, 1)).dimension() == 7


def test_convolution_agrees_with_full_convolution():
    rd = root_datum("B2", isogeny="ad")
    a, b = weyl_character(rd, (1, 1)), weyl_character(rd, (1, 2))
    prod = a * b
    assert prod.weights == convolve_full(a, b)


SMALL = [t for t in SIMPLE_TYPES if int(t[1:]) <= 4]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), seeds)
def test_weyl_dimension_formula(t, seed):
    rng = random.Random(seed)
    rd = root_datum(t)
    lam = tuple(rng.randint(0, 3) for _ in range(rd.rank))
    if t == "F4" and sum(lam) > 6:
        lam = tuple(min(x, 1) for x in lam)
    chi = weyl_character(rd, lam)
    assert chi.dimension() == weyl_dimension(rd, lam)
    assert sum(chi.weights.values()) == weyl_dimension(rd, lam)
    assert decompose(chi) == [(lam, 1)]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["A1", "A2", "B2", "G2", "C3"]), seeds)
def test_decompose_matches_alternation(t, seed):
    rng = random.Random(seed)
    rd = root_datum(t)
    lam = tuple(rng.randint(0, 2) for _ in range(rd.rank))
    mu = tuple(rng.randint(0, 1) for _ in range(rd.rank))
    e = weyl_character(rd, lam) * weyl_character(rd, mu)
    terms = decompose(e)
    assert recompose(rd, terms) == e
    assert dict(terms) == alternation_decompose(rd, e.weights)


def test_weyl_orbit_sizes_by_enumeration():
    for t in ("B3", "G2", "A3"):
        rd = root_datum(t)
        group = weyl_group_matrices(rd)
        assert len(group) == rd.weyl_order
        for lam in [(1,) + (0,) * (rd.rank - 1), (0,) * (rd.rank - 1) + (1,)]:
            imgs = {tuple(sum(lam[k] * m[k][b] for k in range(rd.rank)) for b in range(rd.rank)) for m in group}
            assert len(imgs) == rd.orbit_size(lam) == len(rd.orbit(lam))


# restriction and the Satake model ---------------------------------------------------


def _c2_pair():
    c2 = root_datum("C2")
    node = kac_order_p_nodes(c2, 2)[0]
    return c2, node, dual_datum(c2), dual_datum(centralizer_datum(c2, node))


def test_restrict_examples():
    _, _, g, h = _c2_pair()
    e = weyl_character(g, (1, 1))
    assert sorted(e.weights) == [(-1, -1), (0, -1), (0, 0), (0, 1), (1, 1)]
    assert restrict_invariants(g, g, e) == e
    assert restrict_invariants(g, h, InvariantElement.unit(g)) == InvariantElement.unit(h)
    r = restrict_invariants(g, h, e)
    assert r.weights == e.weights
    assert dict(decompose(r)) == alternation_decompose(h, r.weights)


def test_restrict_rejects_foreign_weyl_group():
    g = root_datum("B2", isogeny="ad")
    other = root_datum("C2", isogeny="ad")
    with pytest.raises(MalformedInputError):
        restrict_invariants(g, other, InvariantElement.unit(g))


def test_branching_first_five():
    _, _, g, h = _c2_pair()
    doms = sorted({(a, b) for a in range(-4, 5) for b in range(-4, 5) if g.is_dominant((a, b))},
                  key=lambda w: (g.level(w), w))[:5]
    for lam in doms:
        chi = weyl_character(g, lam)
        assert dict(branching(g, h, lam)) == alternation_decompose(h, chi.weights)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_restriction_and_smith_are_multiplicative(seed):
    rng = random.Random(seed)
    c2, node, g, h = _c2_pair()
    model = sha_model(c2)
    pts = [(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(2)]
    e1 = model.orbit_basis(pts[0]).scale(rng.randint(-2, 2)) + model.unit()
    e2 = model.orbit_basis(pts[1])
    assert restrict_invariants(g, h, e1 * e2) == restrict_invariants(g, h, e1) * restrict_invariants(g, h, e2)
    s = lambda e: smith_sha(model, e, node)  # noqa: E731
    assert s(e1 * e2) == s(e1) * s(e2)
    assert s(e1 + e2) == s(e1) + s(e2)


def test_smith_sha_examples():
    c2, node, g, h = _c2_pair()
    model = sha_model(c2)
    assert smith_sha(model, model.unit(), node) == InvariantElement.unit(h, "F2")
    e = model.orbit_basis((1, 0))
    assert len(e.weights) == 4
    assert smith_sha(model, e, node) == restrict_invariants(g, h, e).reduce(2)
    with pytest.raises(MalformedInputError):
        smith_sha(model, e, node, p=3)


def test_packaged_tables_match_test_copy():
    from smithcalc.checks import golden_tables
    here = Path(__file__).parent / "golden" / "root_tables.json"
    assert golden_tables() == json.loads(here.read_text())
