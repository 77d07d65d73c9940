import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from smithcalc.charp import (
    OddSumEmbedding,
    QuadForm,
    direct_sum,
    dickson_invariant,
    enumerate_isometries,
    f4_primitivity_check,
    is_isometry,
    odd_orthogonal_sum_embedding,
    polar_form,
    preserves_bilinear,
    radical,
    random_isometry,
    so_to_sp,
    standard_form,
    symplectic_group_order,
)
from smithcalc.errors import MalformedInputError, UnsupportedError
from smithcalc.fields import finite_field

F2 = finite_field(2)


def all_matrices(n, q=2):
    for entries in itertools.product(range(q), repeat=n * n):
        yield np.array(entries, dtype=np.int64).reshape(n, n)


def test_standard_forms():
    assert standard_form(2).matrix.tolist() == [[0, 1], [0, 0]]
    assert standard_form(3).matrix.tolist() == [[0, 1, 0], [0, 0, 0], [0, 0, 1]]
    f5 = standard_form(5)
    # x1x2 + x3x4 + x5^2
    for v in f5.vectors():
        assert f5.value(v) == (v[0] * v[1] + v[2] * v[3] + v[4]) % 2
    with pytest.raises(MalformedInputError):
        standard_form(0)
    with pytest.raises(MalformedInputError):
        QuadForm([[0, 0], [1, 0]])
    with pytest.raises(UnsupportedError):
        QuadForm([[1]], q=3)


def test_polar_forms():
    b2, alt = polar_form(standard_form(2))
    assert alt and b2.tolist() == [[0, 1], [1, 0]]
    f2 = standard_form(2)
    assert all(f2.polar(v, v) == 0 for v in f2.vectors())
    rad = radical(standard_form(3))
    assert rad.tolist() == [[0, 0, 1]]
    b4, _ = polar_form(standard_form(4))
    assert F2.rank(b4) == 4


@pytest.mark.parametrize("d,q", [(2, 2), (4, 2), (6, 2), (8, 2), (2, 4), (4, 4), (6, 4)])
def test_polar_form_is_alternating_and_bilinear(d, q):
    f = standard_form(d, q)
    F = f.field
    vecs = f.all_vectors
    for v in vecs:
        assert f.polar(v, v) == 0
    rng = random.Random(d * q)
    for _ in range(200):
        v, w, u = (vecs[rng.randrange(len(vecs))] for _ in range(3))
        vw = F.madd(v, w)
        assert f.polar(v, w) == f.value(vw) ^ f.value(v) ^ f.value(w)
        assert f.polar(F.madd(v, u), w) == f.polar(v, w) ^ f.polar(u, w)
        c = rng.randrange(q)
        assert f.polar(F.scale(c, v), w) == F.MUL[c, f.polar(v, w)]


def test_isometry_group_orders():
    assert len(enumerate_isometries(standard_form(2))) == 2
    assert len(enumerate_isometries(standard_form(3))) == 6
    assert len(enumerate_isometries(standard_form(4))) == 72
    # O(2m+1, q) is isomorphic to Sp(2m, q) in characteristic 2
    assert len(enumerate_isometries(standard_form(5))) == symplectic_group_order(2, 2)
    assert len(enumerate_isometries(standard_form(3, 4))) == symplectic_group_order(1, 4)


def test_isometries_by_brute_force():
    for d in (2, 3):
        f = standard_form(d)
        brute = [m for m in all_matrices(d) if F2.is_invertible(m)
                 and all(f.value(F2.matmul(m, np.array(v))) == f.value(v) for v in f.vectors())]
        listed = enumerate_isometries(f)
        assert sorted(m.tobytes() for m in brute) == sorted(m.tobytes() for m in listed)


def test_so2_inside_sl2():
    f = standard_form(2)
    b, _ = polar_form(f)
    sp = [m for m in all_matrices(2) if F2.is_invertible(m) and preserves_bilinear(m, b, F2)]
    sl = [m for m in all_matrices(2) if F2.is_invertible(m)]
    assert len(sp) == len(sl) == 6
    o2 = enumerate_isometries(f)
    assert sorted(m.tolist() for m in o2) == [[[0, 1], [1, 0]], [[1, 0], [0, 1]]]
    r = so_to_sp(1)
    assert r["passed"] and r["count"] == 2 and r["so_count"] == 1


def test_so_to_sp_exhaustive_small():
    r = so_to_sp(2)
    assert r["passed"] and r["checked"] == "enumerated" and r["count"] == 72 and r["so_count"] == 36
    assert so_to_sp(1, 4)["passed"]
    assert so_to_sp(3, 2, exhaustive=False)["passed"]


def test_dickson_invariant():
    f2 = standard_form(2)
    assert dickson_invariant(np.eye(2, dtype=np.int64), f2) == 0
    assert dickson_invariant([[0, 1], [1, 0]], f2) == 1
    f4 = standard_form(4)
    group = enumerate_isometries(f4)
    d = {m.tobytes(): dickson_invariant(m, f4) for m in group}
    for g, h in itertools.product(group, group):
        assert d[F2.matmul(g, h).tobytes()] == d[g.tobytes()] ^ d[h.tobytes()]
    with pytest.raises(UnsupportedError):
        dickson_invariant(np.eye(3, dtype=np.int64), standard_form(3))
    with pytest.raises(MalformedInputError):
        dickson_invariant([[1, 1], [0, 1]], f2)


def test_odd_sum_line():
    emb = OddSumEmbedding(1, 1)
    assert emb.line == (0, 0, 1, 0, 0, 1)
    assert emb.lines_in_radical() == [emb.line]
    assert emb.sum.value(emb.line) == 0
    eye3 = np.eye(3, dtype=np.int64)
    assert np.array_equal(emb(eye3, eye3), np.eye(5, dtype=np.int64))
    for g in enumerate_isometries(emb.f1):
        assert tuple(F2.matmul(emb.block(g, eye3), np.array(emb.line))) == emb.line


def test_odd_sum_exhaustive_1_1():
    r = odd_orthogonal_sum_embedding(1, 1, 2)
    assert r["mode"] == "exhaustive"
    assert r["source_orders"] == [6, 6] and r["pairs"] == 36
    assert r["injective"] and r["unique_line"] and not r["failures"]
    assert r["passed"]


@pytest.mark.parametrize("a,b,q", [(1, 2, 2), (2, 2, 2), (1, 2, 4), (2, 2, 4)])
def test_odd_sum_sampled(a, b, q):
    r = odd_orthogonal_sum_embedding(a, b, q, samples=1000, seed=a * 10 + b + q)
    assert r["pairs"] == 1000
    assert r["passed"], r["failures"][:3]


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_random_isometries_are_isometries(seed):
    rng = random.Random(seed)
    for d, q in [(3, 2), (5, 2), (3, 4)]:
        f = standard_form(d, q)
        assert is_isometry(random_isometry(rng, f), f, exhaustive=True)


def test_direct_sum_radical_is_two_dimensional():
    s = direct_sum(standard_form(3), standard_form(5))
    assert len(radical(s)) == 2


def test_f4_primitivity():
    r = f4_primitivity_check()
    assert r["cartan"] == [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    assert r["column_gcds"] == [1, 1, 1, 1]
    assert r["roots"] == 48 and r["passed"]
