import random

import numpy as np

import pytest
from hypothesis import given, settings, strategies as st

from smithcalc.errors import (
    MalformedInputError,
    NonRegularActionError,
    NotInvariantError,
    NotSimplicialError,
    RingMismatchError,
)
from smithcalc.simplicial import (
    CFun,
    barycentric_subdivide,
    build_complex,
    constant_map,
    dualize,
    euler_integral,
    fixed_subcomplex,
    group_action,
    identity_map,
    inclusion,
    point,
    pullback,
    pullback_shriek,
    pushforward,
    pushforward_star,
    simplicial_map,
    smith_restrict,
    specialize,
    standard_costandard,
)
from oracles import fiber_chi_c
from smithcalc.simplicial.generators import (
    random_cfun,
    random_closed_manifold,
    random_complex,
    random_equivariant_map,
    random_invariant_cfun,
    random_regular_gcomplex,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)

TRI = [["a", "b", "c"]]
HOLLOW = [["a", "b"], ["b", "c"], ["c", "a"]]
SQUARE = [["1", "2"], ["2", "3"], ["3", "4"], ["1", "4"]]


@pytest.fixture
def solid():
    return build_complex(TRI)


@pytest.fixture
def hollow():
    return build_complex(HOLLOW)


@pytest.fixture
def collapse(solid):
    edge = build_complex([["x", "y"]])
    return simplicial_map(solid, edge, {"a": "x", "b": "x", "c": "y"})


# construction ----------------------------------------------------------------


def test_face_closure_counts(solid, hollow):
    assert len(solid) == 7
    assert len(hollow) == 6
    assert len(build_complex([["a"]])) == 1


def test_duplicate_vertex_rejected():
    with pytest.raises(MalformedInputError):
        build_complex([["a", "a"]])


def test_simplicial_map_validation(solid, hollow):
    assert identity_map(solid)(("a", "b", "c")) == ("a", "b", "c")
    constant_map(hollow)
    # the hollow triangle has no 2-simplex, so the identity-on-vertices map from the solid one fails
    with pytest.raises(NotSimplicialError, match="a', 'b', 'c"):
        simplicial_map(solid, hollow, {"a": "a", "b": "b", "c": "c"})


def test_collapse_image(collapse):
    assert collapse(("a", "b", "c")) == ("x", "y")
    assert collapse(("a", "b")) == ("x",)


# actions ---------------------------------------------------------------------


def test_regularity_examples(hollow):
    sq = build_complex(SQUARE)
    refl = group_action(sq, {"1": "1", "2": "4", "3": "3", "4": "2"}, 2)
    assert refl.is_regular
    assert fixed_subcomplex(refl).simplices == (("1",), ("3",))
    rot = group_action(hollow, {"a": "b", "b": "c", "c": "a"}, 3)
    assert rot.is_regular
    assert len(fixed_subcomplex(rot)) == 0
    edge = build_complex([["a", "b"]])
    swap = group_action(edge, {"a": "b", "b": "a"}, 2)
    assert not swap.is_regular
    with pytest.raises(NonRegularActionError, match="barycentric"):
        fixed_subcomplex(swap)


def test_trivial_action_fixes_everything(solid):
    g = group_action(solid, {}, 3)
    assert fixed_subcomplex(g) == solid


def test_bad_actions(hollow):
    with pytest.raises(MalformedInputError):
        group_action(hollow, {"a": "b", "b": "c", "c": "a"}, 6)
    with pytest.raises(MalformedInputError):
        group_action(hollow, {"a": "b", "b": "c", "c": "a"}, 2)
    sq = build_complex(SQUARE)
    with pytest.raises(NotSimplicialError):
        group_action(sq, {"1": "2", "2": "1"}, 2)


def test_subdivision_regularizes(hollow):
    edge = build_complex([["a", "b"]])
    sd = barycentric_subdivide(group_action(edge, {"a": "b", "b": "a"}, 2))
    assert len(sd.complex.vertices) == 3
    assert sd.gcomplex.is_regular
    assert fixed_subcomplex(sd.gcomplex).simplices == ((("a", "b"),),)
    sd3 = barycentric_subdivide(group_action(hollow, {"a": "b", "b": "c", "c": "a"}, 3))
    assert len(sd3.complex.vertices) == 6 and sd3.gcomplex.is_regular
    assert len(fixed_subcomplex(sd3.gcomplex)) == 0


def test_transport_preserves_integral(solid):
    sd = barycentric_subdivide(solid)
    f = CFun(solid, "Z", {("a", "b", "c"): 2, ("a",): 5, ("b", "c"): -1})
    assert euler_integral(sd.transport(f)) == euler_integral(f)


# calculus examples -------------------------------------------------------------


def test_euler_integral_examples(solid, hollow):
    assert euler_integral(CFun.constant(solid)) == 1
    assert euler_integral(CFun.constant(hollow)) == 0
    assert euler_integral(CFun.indicator(solid, [("a", "b", "c")], 2)) == 2


def test_pullback_examples(solid, collapse):
    edge = collapse.target
    assert pullback(collapse, CFun.constant(edge, 4)) == CFun.constant(solid, 4)
    g = CFun.indicator(edge, [("x", "y")])
    assert set(pullback(collapse, g).support) == {("a", "c"), ("b", "c"), ("a", "b", "c")}
    e = build_complex([["a", "b"]])
    assert pullback(inclusion(e, solid), CFun.indicator(solid, [("a", "b", "c")])) == CFun.zero(e)


def test_pushforward_examples(solid, collapse):
    to_pt = constant_map(solid)
    assert pushforward(to_pt, CFun.constant(solid))[("*",)] == 1
    f = CFun(solid, "Z", {("a",): 3, ("b", "c"): -2})
    assert pushforward(identity_map(solid), f) == f
    pushed = pushforward(collapse, CFun.indicator(solid, [("a", "b", "c")]))
    assert pushed.coefficients == {("x", "y"): -1}


def test_collapse_pushforward_matches_fiber_oracle(solid, collapse):
    images = {"a": [1, 0], "b": [1, 0], "c": [0, 1]}
    assert fiber_chi_c(("a", "b", "c"), images, [0.5, 0.5]) == -1


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_pushforward_matches_fiber_oracle(seed):
    rng = random.Random(seed)
    g = random_regular_gcomplex(rng, max_simplices=40)
    u = random_equivariant_map(rng, g).map
    tv = list(u.target.vertices)
    basis = {w: [1 if w == x else 0 for x in tv] for w in tv}
    images = {v: basis[u.assignment[v]] for v in u.source.vertices}
    for tau in rng.sample(list(u.source.simplices), min(6, len(u.source))):
        img = u(tau)
        y = [sum(basis[w][i] for w in img) / len(img) for i in range(len(tv))]
        pushed = pushforward(u, CFun.indicator(u.source, [tau]))
        assert pushed[img] == fiber_chi_c(tau, images, y)


def test_dualize_examples(solid):
    e = build_complex([["a", "b"]])
    assert dualize(CFun.indicator(e, [("a", "b")], -1)) == CFun.constant(e)
    pt = point()
    assert dualize(CFun.constant(pt)) == CFun.constant(pt)
    rng = random.Random(5)
    f = random_cfun(rng, solid)
    assert dualize(dualize(f)) == f


def test_star_and_shriek(solid):
    v = build_complex([["a"]])
    i = inclusion(v, solid)
    f = CFun.constant(v, 3)
    assert pushforward_star(i, f) == pushforward(i, f)
    idm = identity_map(solid)
    g = CFun(solid, "Z", {("a", "b"): 2, ("c",): 1})
    assert pushforward_star(idm, g) == g
    assert pullback_shriek(idm, g) == g
    h = CFun.indicator(solid, [("a", "b", "c")])
    to_pt = constant_map(solid)
    assert pushforward_star(to_pt, h) == dualize(pushforward(to_pt, dualize(h)))


def test_dualize_matrix_is_triangular(solid):
    n = len(solid)
    for j, s in enumerate(solid.simplices):
        col = dualize(CFun.indicator(solid, [s])).as_vector()
        assert col[j] == (-1) ** (len(s) - 1)
        assert all(col[i] == 0 for i in range(j + 1, n) if not set(s) <= set(solid.simplices[i]))


def test_standard_costandard():
    seg = build_complex([["l", "v"], ["v", "r"]])
    i_u, j_u = standard_costandard(seg, "v")
    assert set(i_u.support) == set(seg.simplices)
    assert j_u.coefficients == {("v",): -1, ("l", "v"): -1, ("r", "v"): -1}
    iso = build_complex([["v"], ["a", "b"]])
    i_u, j_u = standard_costandard(iso, "v")
    assert i_u == j_u == CFun.indicator(iso, [("v",)])


def test_standard_costandard_exchanged_on_spheres():
    rng = random.Random(11)
    for _ in range(20):
        m = random_closed_manifold(rng)
        for v in m.vertices:
            i_u, j_u = standard_costandard(m, v)
            assert dualize(j_u) == i_u


def test_smith_examples():
    sq = build_complex(SQUARE)
    refl = group_action(sq, {"2": "4", "4": "2"}, 2)
    one = CFun.constant(sq, 1, "F2")
    res = smith_restrict(refl, one)
    assert res.coefficients == {("1",): 1, ("3",): 1}
    assert euler_integral(one) == euler_integral(res) == 0
    anti = group_action(sq, {"1": "3", "3": "1", "2": "4", "4": "2"}, 2)
    assert smith_restrict(anti, one).coefficients == {}
    hollow = build_complex(HOLLOW)
    rot = group_action(hollow, {"a": "b", "b": "c", "c": "a"}, 3)
    assert smith_restrict(rot, CFun.constant(hollow, 1, "F3")).coefficients == {}


def test_smith_refuses_integers_and_noninvariant():
    sq = build_complex(SQUARE)
    refl = group_action(sq, {"2": "4", "4": "2"}, 2)
    with pytest.raises(RingMismatchError, match="reduce"):
        smith_restrict(refl, CFun.constant(sq))
    with pytest.raises(NotInvariantError):
        smith_restrict(refl, CFun.indicator(sq, [("2",)], 1, "F2"))
    assert smith_restrict(refl, CFun.constant(sq, 5).reduce(2)).coefficients == {("1",): 1, ("3",): 1}


def test_specialize_examples():
    seg = build_complex([["m", "z"], ["z", "p"]])
    signs = {"m": "-", "z": "0", "p": "+"}
    assert specialize(seg, signs, CFun.constant(seg)).coefficients == {("z",): 1}
    neg_half = CFun.indicator(seg, [("m",), ("z",), ("m", "z")])
    assert specialize(seg, signs, neg_half).coefficients == {}
    zeros = {v: "0" for v in seg.vertices}
    assert specialize(seg, zeros, CFun.constant(seg)).coefficients == {}
    with pytest.raises(MalformedInputError, match="subdivide"):
        specialize(build_complex([["m", "p"]]), {"m": "-", "p": "+"}, CFun.constant(build_complex([["m", "p"]])))


def test_cfun_rejects_non_simplex_key(solid):
    with pytest.raises(MalformedInputError):
        CFun(solid, "Z", {("a", "z"): 1})


# properties --------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(seeds)
def test_duality_involution(seed):
    rng = random.Random(seed)
    c = random_complex(rng, max_simplices=200)
    f = random_cfun(rng, c)
    assert dualize(dualize(f)) == f


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_functoriality_and_integral(seed):
    rng = random.Random(seed)
    g = random_regular_gcomplex(rng, max_simplices=80)
    u = random_equivariant_map(rng, g).map
    v = constant_map(u.target)
    f = random_cfun(rng, u.source)
    assert pushforward(u.compose(v), f) == pushforward(v, pushforward(u, f))
    h = random_cfun(rng, v.target)
    assert pullback(u.compose(v), h) == pullback(u, pullback(v, h))
    assert euler_integral(pushforward(u, f)) == euler_integral(f)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_base_change(seed):
    rng = random.Random(seed)
    g = random_regular_gcomplex(rng, max_simplices=80)
    u = random_equivariant_map(rng, g).map
    y = u.target
    w = y.closure(rng.sample(list(y.simplices), max(1, len(y) // 3)))
    z = u.preimage(w)
    f = random_cfun(rng, u.source)
    u_res = u.restrict(z, w)
    assert pushforward(u, f).restrict(w) == pushforward(u_res, f.restrict(z))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_closed_immersion_duality(seed):
    rng = random.Random(seed)
    c = random_complex(rng, max_simplices=100)
    sub = c.closure(rng.sample(list(c.simplices), max(1, len(c) // 3)))
    f = random_cfun(rng, sub)
    i = inclusion(sub, c)
    assert dualize(pushforward(i, f)) == pushforward(i, dualize(f))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_smith_congruence_property(seed):
    rng = random.Random(seed)
    g = random_regular_gcomplex(rng)
    f = random_invariant_cfun(rng, g)
    assert euler_integral(smith_restrict(g, f)) == euler_integral(f)


def _dual_matrix(c):
    n = len(c)
    m = np.zeros((n, n), dtype=np.int64)
    for i, s in enumerate(c.simplices):
        for j, t in enumerate(c.simplices):
            if set(s) <= set(t):
                m[i, j] = (-1) ** (len(t) - 1)
    return m


def _push_matrix(u):
    m = np.zeros((len(u.target), len(u.source)), dtype=np.int64)
    for j, t in enumerate(u.source.simplices):
        img = u(t)
        m[u.target.index[img], j] = (-1) ** (len(t) - len(img))
    return m


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_star_pushforward_by_matrix_composition(seed):
    rng = random.Random(seed)
    g = random_regular_gcomplex(rng, max_simplices=60)
    u = random_equivariant_map(rng, g).map
    f = random_cfun(rng, u.source)
    expected = _dual_matrix(u.target) @ _push_matrix(u) @ _dual_matrix(u.source) @ np.array(f.as_vector())
    assert pushforward_star(u, f).as_vector() == expected.tolist()
    h = random_cfun(rng, u.target)
    pull = _push_matrix(u).T * 0
    for j, t in enumerate(u.source.simplices):
        pull[j, u.target.index[u(t)]] = 1
    expected = _dual_matrix(u.source) @ pull @ _dual_matrix(u.target) @ np.array(h.as_vector())
    assert pullback_shriek(u, h).as_vector() == expected.tolist()
