import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import box_oracle
from smithcalc.conic import (
    ConicCFun,
    Fan,
    average_lift,
    coordinate_fan,
    fan_from_rays_2d,
    fixed_fan,
    ft,
    ft_value,
    halfspace_chi,
    random_conic_cfun,
    random_fan,
    random_invariant_conic_cfun,
    random_invariant_fan,
    refine_by_hyperplane,
    smith_conic,
    smith_ft_square,
)
from smithcalc.errors import MalformedInputError, NotInvariantError, RefinementNeededError, UnsupportedError

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_halfspace_examples():
    assert halfspace_chi((), (5,), "<1") == 1
    assert halfspace_chi(((1,),), (1,), "<1") == -1  # open ray part of [0, 1)
    assert halfspace_chi((), (1,), "<1") + halfspace_chi(((1,),), (1,), "<1") == 0
    assert halfspace_chi(((0, 1), (1, 0)), (0, 0), "<1") == 1
    assert halfspace_chi(((1,),), (1,), "=1") == 1
    assert halfspace_chi(((1,),), (-1,), "=1") == 0
    assert halfspace_chi(((1, 0), (0, 1)), (1, -1), "=0") == -1
    with pytest.raises(MalformedInputError):
        halfspace_chi((), (1,), "<2")


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_transform_of_constants(dim):
    fan = coordinate_fan(dim)
    one = ConicCFun.constant(fan)
    origin = ConicCFun.origin(fan)
    for xi in [(0,) * dim, (1,) * dim, tuple(range(-1, dim - 1))]:
        assert ft_value(one, xi) == (-1) ** dim
        assert ft_value(origin, xi) == 1
    assert ft(one, fan) == ConicCFun.constant(fan, (-1) ** dim)
    assert ft(origin, fan) == ConicCFun.constant(fan, 1)


def test_closed_ray_transform_vanishes():
    fan = coordinate_fan(1)
    ray = ConicCFun.closed_cone(fan, [(1,)])
    for xi in [(-2,), (0,), (1,), (5,)]:
        assert ft_value(ray, xi) == 0 == box_oracle(ray, xi)


def test_quadrant_per_covector():
    fan = coordinate_fan(2)
    quad = ConicCFun.closed_cone(fan, [(1, 0), (0, 1)])
    table = ft(quad, fan)
    for xi in [(1, 1), (-1, 0), (1, -1)]:
        assert table.at(xi) == ft_value(quad, xi) == box_oracle(quad, xi)


def test_conicity_by_scaling():
    rng = random.Random(4)
    for _ in range(30):
        dim = rng.choice([1, 2, 3])
        f = random_conic_cfun(rng, random_fan(rng, dim))
        xi = [rng.randint(-3, 3) for _ in range(dim)]
        t = rng.randint(2, 9)
        assert ft_value(f, [t * x for x in xi]) == ft_value(f, xi)
        assert ft_value(f, [Fraction(x, t) for x in xi]) == ft_value(f, xi)


def test_fan_validation():
    with pytest.raises(MalformedInputError):
        Fan(2, [[(1, 0), (0, 1)], [(0, 1), (-1, 0)]])  # not complete
    with pytest.raises(MalformedInputError):
        Fan(2, [[(1, 0), (2, 0)]])
    with pytest.raises(MalformedInputError):
        # two cones overlapping
        Fan(2, [[(1, 0), (0, 1)], [(1, 1), (-1, 0)], [(-1, 0), (0, -1)], [(0, -1), (1, 0)]])
    with pytest.raises(UnsupportedError):
        Fan(4, [])
    assert coordinate_fan(3).maximal_cones.__len__() == 8


def test_refinement_helper():
    fan = refine_by_hyperplane(coordinate_fan(2), (1, -1))
    assert (1, 1) in fan.rays and (-1, -1) in fan.rays
    f3 = coordinate_fan(3)
    for nrm in [(1, -1, 0), (0, 1, -1), (1, 0, -1)]:
        f3 = refine_by_hyperplane(f3, nrm)
    assert f3.is_invariant([1, 2, 0])
    assert fixed_fan(f3, [1, 2, 0]).rays == ((-1,), (1,))
    with pytest.raises(RefinementNeededError):
        fixed_fan(coordinate_fan(2), [1, 0])


def test_transform_on_a_coarse_dual_fan():
    # {xi < 1} meets each open cone in a nonempty open convex set, so the
    # transform is the integral of f and any dual fan passes the sampling check
    fan = fan_from_rays_2d([(1, 0), (0, 1), (-1, -1)])
    f = random_conic_cfun(random.Random(0), fan)
    out = ft(f, coordinate_fan(2))
    assert set(out.values.values()) <= {f.integral()}


def test_swap_square_needs_mod_2():
    fan = refine_by_hyperplane(coordinate_fan(2), (1, -1))
    one = ConicCFun.constant(fan)
    rows = smith_ft_square(one, [1, 0], [(1,), (-1,), (0,), (3,)])
    for row in rows:
        assert row["ft_then_smith"] == 1 and row["smith_then_ft"] == -1
        assert not row["equal_over_Z"] and row["equal_mod_p"]
    fixed = smith_conic(one.reduce(2), [1, 0])
    assert fixed == ConicCFun.constant(fixed.fan, 1, "F2")


def test_origin_square_and_cyclic_square():
    fan = coordinate_fan(3)
    for nrm in [(1, -1, 0), (0, 1, -1), (1, 0, -1)]:
        fan = refine_by_hyperplane(fan, nrm)
    for f in (ConicCFun.origin(fan), ConicCFun.constant(fan)):
        for row in smith_ft_square(f, [1, 2, 0], [(1,), (-1,), (0,)]):
            assert row["equal_over_Z"]
    assert smith_ft_square(ConicCFun.constant(fan), [1, 2, 0], [(1,)])[0]["ft_then_smith"] == -1


def test_average_lift():
    assert average_lift((3,), [1, 2, 0]) == (1, 1, 1)
    assert average_lift((1, 4), [1, 0, 2]) == (Fraction(1, 2), Fraction(1, 2), 4)


def test_smith_conic_errors():
    fan = refine_by_hyperplane(coordinate_fan(2), (1, -1))
    f = ConicCFun.closed_cone(fan, [(1, 0), (1, 1)], 1, "F2")
    with pytest.raises(NotInvariantError):
        smith_conic(f, [1, 0])
    with pytest.raises(MalformedInputError):
        smith_conic(ConicCFun.constant(fan), [1, 0])


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_box_oracle_agreement(seed):
    rng = random.Random(seed)
    dim = rng.choice([1, 2])
    f = random_conic_cfun(rng, random_fan(rng, dim))
    xi = [rng.randint(-4, 4) for _ in range(dim)]
    assert ft_value(f, xi) == box_oracle(f, xi)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_linearity(seed):
    rng = random.Random(seed)
    fan = random_fan(rng, rng.choice([1, 2, 3]))
    f, g = random_conic_cfun(rng, fan), random_conic_cfun(rng, fan)
    a, b = rng.randint(-3, 3), rng.randint(-3, 3)
    xi = [rng.randint(-3, 3) for _ in range(fan.dim)]
    assert ft_value(a * f + b * g, xi) == a * ft_value(f, xi) + b * ft_value(g, xi)


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from([[1, 0], [1, 2, 0], [1, 0, 2]]))
def test_smith_ft_square_mod_p(seed, perm):
    rng = random.Random(seed)
    fan = random_invariant_fan(rng, perm)
    f = random_invariant_conic_cfun(rng, fan, perm)
    m = len(fixed_fan(fan, perm).rays[0])
    covs = [tuple(rng.randint(-3, 3) for _ in range(m)) for _ in range(4)]
    assert all(row["equal_mod_p"] for row in smith_ft_square(f, perm, covs))
