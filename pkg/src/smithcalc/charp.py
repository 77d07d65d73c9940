"""Quadratic forms in characteristic 2 and the matrix embeddings they give.

Vectors are columns; a matrix g acts by v -> g v.  Field elements of F_4 use
the bit encoding of :class:`smithcalc.fields.FiniteField`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from math import gcd

import numpy as np

from .errors import InternalConsistencyError, MalformedInputError, UnsupportedError
from .fields import FiniteField, finite_field

EXHAUSTIVE_LIMIT = 2 ** 16


class QuadForm:
    """q(v) = v^T Q v with Q upper triangular, over F_q (q = 2 or 4)."""

    def __init__(self, matrix, q: int = 2):
        if q not in (2, 4):
            raise UnsupportedError("quadratic forms are supported over F_2 and F_4 only")
        self.field: FiniteField = finite_field(q)
        m = self.field.asarray(matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise MalformedInputError("form matrix must be square")
        if np.any(np.tril(m, -1)):
            raise MalformedInputError("form matrix must be upper triangular")
        self.matrix = m
        self.dim = m.shape[0]
        F = self.field
        self._mul = F.MUL.tolist()
        self._diag = [int(m[i, i]) for i in range(self.dim)]
        self._polar = polar_form(self)[0].tolist()

    @property
    def q(self) -> int:
        return self.field.q

    def __repr__(self):
        return f"QuadForm(dim={self.dim}, F{self.q})"

    def __eq__(self, other):
        return isinstance(other, QuadForm) and self.q == other.q and np.array_equal(self.matrix, other.matrix)

    def value(self, v) -> int:
        mul = self._mul
        out = 0
        for i in range(self.dim):
            if not v[i]:
                continue
            row = self.matrix[i]
            for j in range(i, self.dim):
                if v[j] and row[j]:
                    out ^= mul[mul[int(row[j])][int(v[i])]][int(v[j])]
        return out

    def polar(self, v, w) -> int:
        mul, b = self._mul, self._polar
        out = 0
        for i in range(self.dim):
            if v[i]:
                for j in range(self.dim):
                    if w[j] and b[i][j]:
                        out ^= mul[mul[b[i][j]][int(v[i])]][int(w[j])]
        return out

    def values(self, vs: np.ndarray) -> np.ndarray:
        """q evaluated on the rows of an integer array."""
        mul = self.field.MUL
        vs = np.asarray(vs, dtype=np.int64)
        out = np.zeros(len(vs), dtype=np.int64)
        for i, j in zip(*np.nonzero(self.matrix)):
            if j >= i:
                out ^= mul[mul[int(self.matrix[i, j]), vs[:, i]], vs[:, j]]
        return out

    def vectors(self):
        return itertools.product(range(self.q), repeat=self.dim)

    @cached_property
    def all_vectors(self) -> np.ndarray:
        return np.array(list(self.vectors()), dtype=np.int64).reshape(-1, self.dim)

    @cached_property
    def all_values(self) -> np.ndarray:
        return self.values(self.all_vectors)

    @cached_property
    def reflections(self) -> list[np.ndarray]:
        return [reflection(tuple(int(x) for x in v), self)
                for v, val in zip(self.all_vectors, self.all_values) if val]


def standard_form(d: int, q: int = 2) -> QuadForm:
    """x1 x2 + x3 x4 + ... plus x_d^2 when d is odd."""
    if d < 1:
        raise MalformedInputError("dimension must be positive")
    m = np.zeros((d, d), dtype=np.int64)
    for k in range(0, d - 1, 2):
        m[k, k + 1] = 1
    if d % 2:
        m[d - 1, d - 1] = 1
    return QuadForm(m, q)


def direct_sum(f: QuadForm, g: QuadForm) -> QuadForm:
    if f.q != g.q:
        raise MalformedInputError("forms over different fields")
    m = np.zeros((f.dim + g.dim,) * 2, dtype=np.int64)
    m[: f.dim, : f.dim] = f.matrix
    m[f.dim:, f.dim:] = g.matrix
    return QuadForm(m, f.q)


def polar_form(f: QuadForm) -> tuple[np.ndarray, bool]:
    """B = Q + Q^T and whether B is alternating (zero diagonal)."""
    b = f.field.madd(f.matrix, f.matrix.T)
    alternating = not np.any(np.diag(b))
    if not alternating:
        raise InternalConsistencyError("polar form of a characteristic-2 form has a nonzero diagonal")
    return b, alternating


def radical(f: QuadForm) -> np.ndarray:
    """Rows spanning the radical of the polar form."""
    return f.field.nullspace(polar_form(f)[0])


def _basis(d: int) -> list[tuple]:
    return [tuple(int(i == j) for j in range(d)) for i in range(d)]


def is_isometry(g, f: QuadForm, exhaustive: bool | None = None) -> bool:
    """q(g v) = q(v) for all v.

    Checked on the basis and the polar form on basis pairs, which determines q
    in characteristic 2; with ``exhaustive`` (default when q^d <= 2^16) every
    vector is also checked.
    """
    F = f.field
    g = F.asarray(g)
    if g.shape != (f.dim, f.dim) or not F.is_invertible(g):
        return False
    cols = [tuple(int(x) for x in g[:, i]) for i in range(f.dim)]
    e = _basis(f.dim)
    for i in range(f.dim):
        if f.value(cols[i]) != f.value(e[i]):
            return False
        for j in range(i + 1, f.dim):
            if f.polar(cols[i], cols[j]) != f.polar(e[i], e[j]):
                return False
    if exhaustive is None:
        exhaustive = f.q ** f.dim <= EXHAUSTIVE_LIMIT
    if exhaustive:
        images = F.matmul(g, f.all_vectors.T).T
        return bool(np.array_equal(f.values(images), f.all_values))
    return True


def preserves_bilinear(g, b, F: FiniteField) -> bool:
    """g^T B g = B."""
    g = F.asarray(g)
    return np.array_equal(F.matmul(F.matmul(g.T, b), g), np.asarray(b))


def enumerate_isometries(f: QuadForm, limit: int = 10 ** 5) -> list[np.ndarray]:
    """All isometries of f, by choosing images of basis vectors one at a time."""
    F = f.field
    e = _basis(f.dim)
    vecs = list(f.vectors())
    by_value: dict = {}
    for v in vecs:
        by_value.setdefault(f.value(v), []).append(v)
    out = []

    def extend(chosen):
        k = len(chosen)
        if k == f.dim:
            g = np.array(chosen, dtype=np.int64).T
            if F.is_invertible(g):
                out.append(g)
                if len(out) > limit:
                    raise UnsupportedError("isometry group too large to enumerate")
            return
        for v in by_value.get(f.value(e[k]), []):
            if all(f.polar(chosen[j], v) == f.polar(e[j], e[k]) for j in range(k)):
                if F.rank(np.array(chosen + [v])) == k + 1:
                    extend(chosen + [v])

    extend([])
    return out


@dataclass
class Isometry:
    matrix: np.ndarray
    form: QuadForm

    def __post_init__(self):
        self.matrix = self.form.field.asarray(self.matrix)
        if not is_isometry(self.matrix, self.form):
            raise MalformedInputError("matrix does not preserve the form")

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return Isometry(self.form.field.matmul(self.matrix, other.matrix), self.form)


def dickson_invariant(g, f: QuadForm) -> int:
    """rank(g - 1) mod 2, for isometries of a form with nondegenerate polar form."""
    if isinstance(g, Isometry):
        g = g.matrix
    F = f.field
    if f.dim % 2 or F.rank(polar_form(f)[0]) != f.dim:
        raise UnsupportedError("Dickson invariant needs an even-dimensional nondegenerate form")
    if not is_isometry(g, f):
        raise MalformedInputError("matrix is not an isometry of the form")
    return F.rank(F.msub(F.asarray(g), F.eye(f.dim))) % 2


def reflection(v, f: QuadForm) -> np.ndarray:
    """x -> x + B(x, v) q(v)^-1 v for a nonsingular v."""
    F = f.field
    qv = f.value(v)
    if not qv:
        raise MalformedInputError("reflection needs q(v) != 0")
    c = int(F.INV[qv])
    cols = []
    for x in _basis(f.dim):
        k = F.MUL[f.polar(x, v), c]
        cols.append([int(F.ADD[xi, F.MUL[k, vi]]) for xi, vi in zip(x, v)])
    return np.array(cols, dtype=np.int64).T


def random_isometry(rng: random.Random, f: QuadForm, length: int = 12) -> np.ndarray:
    """A random word in reflections (including the identity now and then)."""
    F = f.field
    refl = f.reflections
    g = F.eye(f.dim)
    for _ in range(rng.randint(0, length)):
        g = F.matmul(g, rng.choice(refl))
    return g


def _key(m) -> bytes:
    return np.asarray(m, dtype=np.int64).tobytes()


# ---------------------------------------------------------------------------
# SO(2a) into Sp(2a)


def so_to_sp(a: int, q: int = 2, exhaustive: bool | None = None) -> dict:
    """Isometries of the even standard form preserve its (alternating) polar form.

    Enumerates O(2a) when small; otherwise checks the reflections, which
    generate O(2a, q) outside the single exception 2a = 4, q = 2 (always
    enumerated).
    """
    f = standard_form(2 * a, q)
    F = f.field
    b, alt = polar_form(f)
    nondeg = F.rank(b) == 2 * a
    if exhaustive is None:
        exhaustive = 2 * a <= 4 and q == 2
    if exhaustive:
        mats = enumerate_isometries(f)
        kind = "enumerated"
    else:
        mats = f.reflections
        kind = "reflections"
    bad = [m for m in mats if not preserves_bilinear(m, b, F)]
    dickson = [dickson_invariant(m, f) for m in mats] if exhaustive else []
    return {
        "a": a,
        "q": q,
        "checked": kind,
        "count": len(mats),
        "so_count": dickson.count(0) if exhaustive else None,
        "alternating": alt,
        "nondegenerate": nondeg,
        "counterexamples": [m.tolist() for m in bad],
        "passed": alt and nondeg and not bad,
    }


def symplectic_group_order(n: int, q: int) -> int:
    """|Sp(2n, q)|."""
    out = q ** (n * n)
    for i in range(1, n + 1):
        out *= q ** (2 * i) - 1
    return out


# ---------------------------------------------------------------------------
# O(2a+1) x O(2b+1) into O(2a+2b+1)


class OddSumEmbedding:
    """The quotient of the sum of two odd standard forms by the line x_{2a+1} = y_{2b+1}."""

    def __init__(self, a: int, b: int, q: int = 2):
        if a < 1 or b < 1:
            raise MalformedInputError("a and b must be positive")
        if 2 * a + 2 * b + 2 > 12:
            raise UnsupportedError("total dimension above 12")
        self.a, self.b, self.q = a, b, q
        self.f1 = standard_form(2 * a + 1, q)
        self.f2 = standard_form(2 * b + 1, q)
        self.sum = direct_sum(self.f1, self.f2)
        self.target = standard_form(2 * a + 2 * b + 1, q)
        self.field = self.sum.field
        n1, n = 2 * a + 1, 2 * a + 2 * b + 2
        u = [0] * n
        u[n1 - 1] = 1
        u[n - 1] = 1
        self.line = tuple(u)
        # phi: (x, y) -> (x_1..x_2a, y_1..y_2b, x_{2a+1} + y_{2b+1})
        phi = np.zeros((n - 1, n), dtype=np.int64)
        for i in range(2 * a):
            phi[i, i] = 1
        for j in range(2 * b):
            phi[2 * a + j, n1 + j] = 1
        phi[n - 2, n1 - 1] = 1
        phi[n - 2, n - 1] = 1
        self.phi = phi
        # a section of phi
        sec = np.zeros((n, n - 1), dtype=np.int64)
        for i in range(2 * a):
            sec[i, i] = 1
        for j in range(2 * b):
            sec[n1 + j, 2 * a + j] = 1
        sec[n1 - 1, n - 2] = 1
        self.section = sec
        self.verify_construction()

    def verify_construction(self):
        F, s, u = self.field, self.sum, self.line
        if s.value(u) != 0:
            raise InternalConsistencyError("q does not vanish on the line")
        for v in _basis(s.dim):
            if s.polar(u, v):
                raise InternalConsistencyError("the line is not perpendicular to everything")
        if np.any(F.matmul(self.phi, np.array(u))):
            raise InternalConsistencyError("the line is not the kernel of the quotient map")
        if F.rank(self.phi) != s.dim - 1:
            raise InternalConsistencyError("quotient map is not onto")
        if not np.array_equal(F.matmul(self.phi, self.section), F.eye(s.dim - 1)):
            raise InternalConsistencyError("section is not a section")
        # the quotient form is the standard one: q_sum(v) = q_target(phi v)
        if self.q ** s.dim <= EXHAUSTIVE_LIMIT:
            vecs = s.all_vectors
        else:
            e = _basis(s.dim)
            vecs = np.array(e + [tuple(x ^ y for x, y in zip(e[i], e[j]))
                                 for i in range(s.dim) for j in range(i + 1, s.dim)], dtype=np.int64)
        images = F.matmul(self.phi, vecs.T).T
        bad = np.nonzero(self.target.values(images) != s.values(vecs))[0]
        if bad.size:
            raise InternalConsistencyError(f"quotient form differs from the standard form at {vecs[bad[0]].tolist()}")

    def lines_in_radical(self) -> list[tuple]:
        """Lines in rad(B_sum) on which q_sum vanishes (should be exactly one)."""
        F, s = self.field, self.sum
        rad = radical(s)
        out = set()
        for coeffs in itertools.product(range(self.q), repeat=len(rad)):
            if not any(coeffs):
                continue
            v = np.zeros(s.dim, dtype=np.int64)
            for c, r in zip(coeffs, rad):
                v = F.madd(v, F.scale(c, r))
            if s.value(v) == 0:
                # normalize: first nonzero coordinate 1
                k = next(i for i, x in enumerate(v) if x)
                v = F.scale(int(F.INV[v[k]]), v)
                out.add(tuple(int(x) for x in v))
        return sorted(out)

    def block(self, g1, g2) -> np.ndarray:
        n1 = self.f1.dim
        m = np.zeros((self.sum.dim,) * 2, dtype=np.int64)
        m[:n1, :n1] = g1
        m[n1:, n1:] = g2
        return m

    def __call__(self, g1, g2) -> np.ndarray:
        F = self.field
        g = self.block(F.asarray(g1), F.asarray(g2))
        if tuple(int(x) for x in F.matmul(g, np.array(self.line))) != self.line:
            raise InternalConsistencyError("source element does not fix the line")
        return F.matmul(F.matmul(self.phi, g), self.section)


def odd_orthogonal_sum_embedding(a: int, b: int, q: int = 2, samples: int = 1000,
                                 seed: int = 0, exhaustive: bool | None = None) -> dict:
    """Check the map O(2a+1) x O(2b+1) -> O(2a+2b+1) built from the quotient by the line.

    Exhaustive (all pairs, all products) when both factors can be enumerated
    and there are at most 100 pairs; otherwise ``samples`` random pairs of
    random words in reflections.
    """
    emb = OddSumEmbedding(a, b, q)
    F = emb.field
    report = {"a": a, "b": b, "q": q, "failures": []}
    lines = emb.lines_in_radical()
    report["unique_line"] = lines == [emb.line]
    if exhaustive is None:
        exhaustive = q == 2 and a == b == 1
    fail = report["failures"]

    def check(pairs, product_pairs):
        images = {}
        for g1, g2 in pairs:
            img = emb(g1, g2)
            images[(_key(g1), _key(g2))] = img
            if not is_isometry(img, emb.target):
                fail.append({"kind": "form", "g1": g1.tolist(), "g2": g2.tolist()})
            is_id = np.array_equal(img, F.eye(emb.target.dim))
            if is_id and not (np.array_equal(g1, F.eye(len(g1))) and np.array_equal(g2, F.eye(len(g2)))):
                fail.append({"kind": "kernel", "g1": g1.tolist(), "g2": g2.tolist()})
        for (g1, g2), (h1, h2) in product_pairs:
            lhs = emb(F.matmul(g1, h1), F.matmul(g2, h2))
            rhs = F.matmul(emb(g1, g2), emb(h1, h2))
            if not np.array_equal(lhs, rhs):
                fail.append({"kind": "homomorphism", "g": [g1.tolist(), g2.tolist()],
                             "h": [h1.tolist(), h2.tolist()]})
        return images

    if exhaustive:
        o1 = enumerate_isometries(emb.f1)
        o2 = enumerate_isometries(emb.f2)
        pairs = list(itertools.product(o1, o2))
        images = check(pairs, itertools.product(pairs, pairs))
        report.update(mode="exhaustive", source_orders=[len(o1), len(o2)], pairs=len(pairs),
                      injective=len({_key(m) for m in images.values()}) == len(pairs))
    else:
        rng = random.Random(seed)
        pairs = [(random_isometry(rng, emb.f1), random_isometry(rng, emb.f2)) for _ in range(samples)]
        for g1, g2 in pairs:
            if not (is_isometry(g1, emb.f1) and is_isometry(g2, emb.f2)):
                raise InternalConsistencyError("sampled matrix is not an isometry")
        prods = [(pairs[i], pairs[(i * 7 + 3) % len(pairs)]) for i in range(len(pairs))]
        check(pairs, prods)
        report.update(mode="sampled", pairs=len(pairs), injective=not any(x["kind"] == "kernel" for x in fail))
    report["passed"] = report["unique_line"] and not fail and report["injective"]
    return report


# ---------------------------------------------------------------------------
# F4


def f4_primitivity_check() -> dict:
    """Every root of F4 (and every coroot) is primitive in the weight (coweight) lattice."""
    from .roots import dual_datum, root_datum

    rd = root_datum("F", 4)
    columns = [list(c) for c in zip(*rd.cartan)]
    col_gcd = [gcd(*c) for c in columns]
    roots = rd.roots
    bad = [r for r in roots if gcd(*r) != 1]
    bad_co = [c for c in dual_datum(rd).roots if gcd(*c) != 1]
    return {
        "cartan": [list(r) for r in rd.cartan],
        "column_gcds": col_gcd,
        "roots": len(roots),
        "non_primitive_roots": bad,
        "non_primitive_coroots": bad_co,
        "passed": len(roots) == 48 and all(g == 1 for g in col_gcd) and not bad and not bad_co,
    }
