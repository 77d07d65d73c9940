"""Conic constructible functions on complete simplicial fans (dimension <= 3).

A conic function is constant on the relative interior of every cone of a
complete fan.  The Euler-integral transform

    FT(f)(xi) = integral of f over {v : xi(v) < 1}

is evaluated cone by cone.  For a simplicial cone with rays r_1..r_k the
map t -> sum t_i r_i identifies relint C with the open orthant, and xi pulls
back to the linear form a_i = xi(r_i).  Every piece below is a nonempty
relatively open convex set or empty, and a nonempty relatively open convex
set of dimension d has chi_c = (-1)**d.

All arithmetic is exact (integers and ``fractions.Fraction``).
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations
from math import gcd
from typing import Iterable, Mapping, Sequence

from .errors import MalformedInputError, NotInvariantError, RefinementNeededError, UnsupportedError
from .fields import Ring, ZZ, is_prime, require_same_ring

Ray = tuple
ConeKey = tuple  # sorted tuple of rays; () is the origin

MODES = ("<1", "<0", "=0", "=1")


# ---------------------------------------------------------------------------
# exact linear algebra in dimension <= 3


def primitive(v: Sequence) -> Ray:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    if all(x == 0 for x in fr):
        raise MalformedInputError("zero vector is not a ray")
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(x // g for x in ints)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def det(rows: Sequence[Sequence]):
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    raise UnsupportedError("determinants above dimension 3 are not needed")


def rank(vectors: Sequence[Sequence]) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    r, cols = 0, len(rows[0])
    for c in range(cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def normal_of(vectors: Sequence[Sequence], n: int) -> tuple:
    """A nonzero normal to the span of n-1 independent vectors in dimension n."""
    if n == 1:
        return (1,)
    if n == 2:
        (a, b), = vectors
        return (-b, a)
    if n == 3:
        (a, b, c), (d, e, f) = vectors
        return (b * f - c * e, c * d - a * f, a * e - b * d)
    raise UnsupportedError("dimension above 3")


def cone_coordinates(rays: Sequence[Ray], x: Sequence) -> list[Fraction] | None:
    """Coefficients t with x = sum t_i r_i, or None if x is not in the span."""
    k = len(rays)
    if k == 0:
        return [] if all(c == 0 for c in x) else None
    n = len(x)
    # least-squares-free exact solve: pick k independent coordinates
    for idx in combinations(range(n), k):
        m = [[Fraction(rays[j][i]) for j in range(k)] for i in idx]
        d = det(m)
        if d != 0:
            t = []
            for j in range(k):
                mj = [row[:] for row in m]
                for r, i in enumerate(idx):
                    mj[r][j] = Fraction(x[i])
                t.append(det(mj) / d)
            recon = [sum(t[j] * rays[j][i] for j in range(k)) for i in range(n)]
            return t if all(recon[i] == x[i] for i in range(n)) else None
    return None


# ---------------------------------------------------------------------------
# fans


def _cone_key(rays: Iterable[Ray]) -> ConeKey:
    return tuple(sorted(set(rays)))


class Fan:
    """A complete simplicial fan in Q^n, n in {1, 2, 3}.

    ``cones`` lists cones by their ray generators (any nonzero integer or
    rational vectors; they are normalized to primitive integer vectors).
    Faces are added automatically, and the origin cone is always present.
    """

    def __init__(self, dim: int, cones: Iterable[Iterable[Sequence]], *, check: bool = True):
        if dim not in (1, 2, 3):
            raise UnsupportedError(f"fans are supported in dimensions 1..3, got {dim}")
        self.dim = dim
        closed: set = {()}
        for cone in cones:
            rays = [primitive(r) for r in cone]
            for r in rays:
                if len(r) != dim:
                    raise MalformedInputError(f"ray {r!r} does not have {dim} coordinates")
            key = _cone_key(rays)
            if len(key) != len(rays):
                raise MalformedInputError(f"repeated ray in cone {rays!r}")
            if rank(key) != len(key):
                raise MalformedInputError(f"cone {key!r} is not simplicial (rays are dependent)")
            for k in range(1, len(key) + 1):
                closed.update(combinations(key, k))
        self.cones: tuple[ConeKey, ...] = tuple(sorted(closed, key=lambda c: (len(c), c)))
        self._set = frozenset(self.cones)
        if check:
            self.validate()

    def __contains__(self, key) -> bool:
        return _cone_key(key) in self._set if key else True

    def __eq__(self, other):
        return isinstance(other, Fan) and self.dim == other.dim and self._set == other._set

    def __hash__(self):
        return hash((self.dim, self._set))

    def __repr__(self):
        return f"Fan(dim {self.dim}, {len(self.rays)} rays, {len(self.maximal_cones)} maximal cones)"

    @cached_property
    def rays(self) -> tuple[Ray, ...]:
        return tuple(c[0] for c in self.cones if len(c) == 1)

    @cached_property
    def maximal_cones(self) -> tuple[ConeKey, ...]:
        return tuple(c for c in self.cones if len(c) == self.dim)

    def validate(self):
        """Pseudomanifold walls with cones on opposite sides, and one generic point covered once."""
        n = self.dim
        tops = [c for c in self.cones if len(c) == n]
        # every cone must be a face of a maximal cone
        covered = set()
        for t in tops:
            for k in range(len(t) + 1):
                covered.update(combinations(t, k))
        stray = [c for c in self.cones if c not in covered]
        if stray:
            raise MalformedInputError(f"cone {stray[0]!r} is not a face of a full-dimensional cone")
        walls: dict = {}
        for t in tops:
            for drop in t:
                wall = tuple(r for r in t if r != drop)
                walls.setdefault(wall, []).append(drop)
        for wall, others in walls.items():
            if len(others) != 2:
                raise MalformedInputError(f"wall {wall!r} lies in {len(others)} maximal cones; fan is not complete")
            nrm = normal_of(wall, n)
            s0, s1 = dot(nrm, others[0]), dot(nrm, others[1])
            if s0 * s1 >= 0:
                raise MalformedInputError(f"cones meeting along {wall!r} overlap")
        for point in self._generic_points():
            hits = [t for t in tops if self._in_open_cone(t, point)]
            if len(hits) != 1:
                raise MalformedInputError(f"point {point} lies in {len(hits)} maximal cones; fan is not complete")

    def _generic_points(self):
        n = self.dim
        out = []
        for base in (7919, -104729, 1299709):
            for sgn in ((1, 1, 1), (-1, 1, -1), (1, -1, -1), (-1, -1, 1)):
                pt = tuple(sgn[i] * (base ** (i + 1) % 1000003 + i + 1) for i in range(n))
                if all(not self._on_boundary(t, pt) for t in self.maximal_cones):
                    out.append(pt)
        return out

    def _on_boundary(self, top: ConeKey, pt) -> bool:
        t = cone_coordinates(top, pt)
        return t is not None and any(x == 0 for x in t)

    @staticmethod
    def _in_open_cone(top: ConeKey, pt) -> bool:
        t = cone_coordinates(top, pt)
        return t is not None and all(x > 0 for x in t)

    def locate(self, point: Sequence) -> ConeKey:
        """The cone whose relative interior contains ``point``."""
        if all(Fraction(x) == 0 for x in point):
            return ()
        for c in self.cones[1:]:
            t = cone_coordinates(c, point)
            if t is not None and all(x > 0 for x in t):
                return c
        raise MalformedInputError(f"point {tuple(point)} is not covered by the fan")

    def interior_point(self, cone: ConeKey, weights: Sequence[int] | None = None) -> tuple:
        if not cone:
            return (0,) * self.dim
        w = weights or [1] * len(cone)
        return tuple(sum(wi * r[i] for wi, r in zip(w, cone)) for i in range(self.dim))

    def apply(self, perm: Sequence[int]) -> "Fan":
        """Image of the fan under the coordinate permutation (g v)_{perm[i]} = v_i."""
        return Fan(self.dim, [[permute(r, perm) for r in c] for c in self.maximal_cones])

    def is_invariant(self, perm: Sequence[int]) -> bool:
        return all(_cone_key(permute(r, perm) for r in c) in self._set for c in self.cones if c)


def permute(v: Sequence, perm: Sequence[int]) -> tuple:
    out = [None] * len(v)
    for i, x in enumerate(v):
        out[perm[i]] = x
    return tuple(out)


def coordinate_fan(dim: int) -> Fan:
    """The fan of closed orthants."""
    e = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    cones = []
    for signs in _sign_vectors(dim):
        cones.append([tuple(s * x for x in e[i]) for i, s in enumerate(signs)])
    return Fan(dim, cones)


def _sign_vectors(n):
    if n == 0:
        yield ()
        return
    for rest in _sign_vectors(n - 1):
        yield rest + (1,)
        yield rest + (-1,)


def fan_from_rays_2d(rays: Iterable[Sequence]) -> Fan:
    """Complete fan in Q^2 whose maximal cones join angularly consecutive rays."""
    import math

    rs = sorted({primitive(r) for r in rays}, key=lambda r: math.atan2(r[1], r[0]))
    if len(rs) < 3:
        raise MalformedInputError("a complete simplicial fan in the plane needs at least 3 rays")
    cones = [[rs[i], rs[(i + 1) % len(rs)]] for i in range(len(rs))]
    for a, b in cones:
        if det([a, b]) <= 0:
            raise MalformedInputError(f"consecutive rays {a}, {b} span an angle >= pi")
    return Fan(2, cones)


def fan_from_rays_3d(rays: Iterable[Sequence]) -> Fan:
    """Face fan of the convex hull of the given ray generators (origin must be interior).

    Hull facets are found exactly by brute force over triples; a facet
    containing four or more generators is rejected rather than triangulated.
    """
    pts = sorted({tuple(r) for r in rays})
    facets = []
    for a, b, c in combinations(pts, 3):
        nrm = normal_of([tuple(b[i] - a[i] for i in range(3)), tuple(c[i] - a[i] for i in range(3))], 3)
        if nrm == (0, 0, 0):
            continue
        side = [dot(nrm, tuple(p[i] - a[i] for i in range(3))) for p in pts]
        if all(s <= 0 for s in side) or all(s >= 0 for s in side):
            if sum(1 for s in side if s == 0) > 3:
                raise MalformedInputError("hull facet with four or more coplanar generators")
            off = dot(nrm, a)
            if off == 0:
                raise MalformedInputError("origin is not in the interior of the hull")
            facets.append([a, b, c])
    return Fan(3, facets)


def refine_by_hyperplane(fan: Fan, normal: Sequence[int]) -> Fan:
    """Refine so that every cone lies on one side of {normal . v = 0}."""
    n = fan.dim
    if n == 1:
        return fan
    newc = []
    for top in fan.maximal_cones:
        vals = [dot(normal, r) for r in top]
        pos = [r for r, v in zip(top, vals) if v > 0]
        neg = [r for r, v in zip(top, vals) if v < 0]
        zero = [r for r, v in zip(top, vals) if v == 0]
        if not pos or not neg:
            newc.append(list(top))
            continue

        def cut(a, b):
            va, vb = dot(normal, a), dot(normal, b)
            return primitive([abs(va) * b[i] + abs(vb) * a[i] for i in range(n)])

        if n == 2:
            (a,), (b,) = pos, neg
            x = cut(a, b)
            newc += [[a, x], [x, b]]
            continue
        if zero:
            (z,) = zero
            (a,), (b,) = pos, neg
            x = cut(a, b)
            newc += [[z, a, x], [z, x, b]]
            continue
        lone, pair = (pos, neg) if len(pos) == 1 else (neg, pos)
        (a,) = lone
        b, c = pair
        x, y = cut(a, b), cut(a, c)
        newc.append([a, x, y])
        # split the quadrilateral x, b, c, y along the diagonal with larger cosine (permutation invariant)
        def cos2(u, v):
            d = dot(u, v)
            return Fraction(d * abs(d), dot(u, u) * dot(v, v))

        if cos2(x, c) >= cos2(y, b):
            newc += [[x, b, c], [x, c, y]]
        else:
            newc += [[y, x, b], [y, b, c]]
    return Fan(n, newc)


# ---------------------------------------------------------------------------
# conic functions


class ConicCFun:
    """Values on the relative interiors of the cones of a fan."""

    __slots__ = ("fan", "ring", "values")

    def __init__(self, fan: Fan, ring: Ring | str = ZZ, values: Mapping | None = None):
        ring = Ring.parse(ring)
        vals = {}
        for cone, c in (values or {}).items():
            key = _cone_key(primitive(r) for r in cone) if cone else ()
            if key not in fan:
                raise MalformedInputError(f"{key!r} is not a cone of the fan")
            c = ring.reduce(int(c))
            if c:
                vals[key] = c
        self.fan = fan
        self.ring = ring
        self.values: dict[ConeKey, int] = vals

    @classmethod
    def constant(cls, fan: Fan, value: int = 1, ring: Ring | str = ZZ) -> "ConicCFun":
        return cls(fan, ring, {c: value for c in fan.cones})

    @classmethod
    def origin(cls, fan: Fan, value: int = 1, ring: Ring | str = ZZ) -> "ConicCFun":
        return cls(fan, ring, {(): value})

    @classmethod
    def closed_cone(cls, fan: Fan, cone: Iterable[Sequence], value: int = 1, ring: Ring | str = ZZ) -> "ConicCFun":
        key = _cone_key(primitive(r) for r in cone)
        faces = [f for k in range(len(key) + 1) for f in combinations(key, k)]
        return cls(fan, ring, {f: value for f in faces})

    def __getitem__(self, cone) -> int:
        key = _cone_key(primitive(r) for r in cone) if cone else ()
        return self.values.get(key, 0)

    def at(self, point: Sequence) -> int:
        return self.values.get(self.fan.locate(point), 0)

    def __eq__(self, other):
        return (
            isinstance(other, ConicCFun)
            and self.fan == other.fan
            and self.ring == other.ring
            and self.values == other.values
        )

    def __repr__(self):
        return f"ConicCFun[{self.ring.name}]({len(self.values)} nonzero cones on {self.fan!r})"

    def __add__(self, other: "ConicCFun") -> "ConicCFun":
        if self.fan != other.fan:
            raise MalformedInputError("functions live on different fans")
        require_same_ring(self.ring, other.ring)
        out = dict(self.values)
        for k, c in other.values.items():
            out[k] = out.get(k, 0) + c
        return ConicCFun(self.fan, self.ring, out)

    def __rmul__(self, k: int) -> "ConicCFun":
        return ConicCFun(self.fan, self.ring, {c: k * v for c, v in self.values.items()})

    def reduce(self, p: int) -> "ConicCFun":
        if self.ring.p not in (0, p):
            raise MalformedInputError(f"cannot reduce {self.ring.name} mod {p}")
        return ConicCFun(self.fan, Ring(p), self.values)

    def integral(self) -> int:
        return self.ring.reduce(sum(v * (-1) ** len(c) for c, v in self.values.items()))

    def is_invariant(self, perm: Sequence[int]) -> bool:
        for c in self.fan.cones:
            img = _cone_key(permute(r, perm) for r in c) if c else ()
            if img not in self.fan:
                raise MalformedInputError("fan is not invariant under the permutation")
            if self.values.get(img, 0) != self.values.get(c, 0):
                return False
        return True


# ---------------------------------------------------------------------------
# the transform


def _open_convex_chi(dim: int) -> int:
    return (-1) ** dim


def halfspace_chi(cone: ConeKey, xi: Sequence, mode: str = "<1") -> int:
    """chi_c(relint(cone) ∩ region) for region one of xi < 1, xi < 0, xi = 0, xi = 1.

    ``xi < 1`` is assembled from pieces: the part where xi <= 0, plus the
    slice xi = 1 times the open interval (0, 1) of scalings.
    """
    if mode not in MODES:
        raise MalformedInputError(f"mode must be one of {MODES}")
    k = len(cone)
    if cone and len(cone[0]) > 3:
        raise UnsupportedError("cones are supported in dimension <= 3")
    if k == 0:
        return {"<1": 1, "<0": 0, "=0": 1, "=1": 0}[mode]
    a = [dot(xi, r) for r in cone]
    has_pos = any(x > 0 for x in a)
    has_neg = any(x < 0 for x in a)
    if mode == "<0":
        return _open_convex_chi(k) if has_neg else 0
    if mode == "=0":
        if not has_pos and not has_neg:
            return _open_convex_chi(k)
        return _open_convex_chi(k - 1) if has_pos and has_neg else 0
    if mode == "=1":
        return _open_convex_chi(k - 1) if has_pos else 0
    nonpositive = halfspace_chi(cone, xi, "<0") + halfspace_chi(cone, xi, "=0")
    interval = -1  # chi_c of the open interval (0, 1)
    return nonpositive + halfspace_chi(cone, xi, "=1") * interval


def ft_value(f: ConicCFun, xi: Sequence) -> int:
    """FT(f)(xi) = sum over cones of f(C) chi_c(relint C ∩ {xi < 1})."""
    if len(xi) != f.fan.dim:
        raise MalformedInputError(f"covector must have {f.fan.dim} coordinates")
    xi = [Fraction(x) for x in xi]
    return f.ring.reduce(sum(v * halfspace_chi(c, xi, "<1") for c, v in f.values.items()))


def ft(f: ConicCFun, dual_fan: Fan) -> ConicCFun:
    """Transform as a conic function on ``dual_fan``, validated by sampling.

    Each cone is sampled at its barycentric interior point and at perturbed
    interior points; disagreement means the dual fan is too coarse.
    """
    if dual_fan.dim != f.fan.dim:
        raise MalformedInputError("dual fan has the wrong dimension")
    vals = {}
    for cone in dual_fan.cones:
        k = len(cone)
        samples = [dual_fan.interior_point(cone)]
        for w in set(permutations([1] + [2] * (k - 1))) | set(permutations([3] + [1] * (k - 1))):
            samples.append(dual_fan.interior_point(cone, list(w)))
        got = {ft_value(f, s) for s in samples}
        if len(got) != 1:
            raise RefinementNeededError(f"transform is not constant on cone {cone!r}; refine the dual fan")
        vals[cone] = got.pop()
    return ConicCFun(dual_fan, f.ring, vals)


# ---------------------------------------------------------------------------
# Smith operator for coordinate permutations


def _perm_order(perm: Sequence[int]) -> int:
    n = len(perm)
    cur = list(range(n))
    k = 0
    while True:
        cur = [perm[i] for i in cur]
        k += 1
        if cur == list(range(n)):
            return k


def coordinate_orbits(perm: Sequence[int]) -> list[list[int]]:
    seen, out = set(), []
    for i in range(len(perm)):
        if i not in seen:
            orb = [i]
            j = perm[i]
            while j != i:
                orb.append(j)
                j = perm[j]
            seen.update(orb)
            out.append(sorted(orb))
    return sorted(out)


def restrict_to_fixed(v: Sequence, perm: Sequence[int]) -> tuple:
    """Coordinates of a fixed vector in the orbit basis e_O = sum_{i in O} e_i."""
    orbs = coordinate_orbits(perm)
    if any(v[i] != v[o[0]] for o in orbs for i in o):
        raise MalformedInputError(f"{tuple(v)} is not fixed by the permutation")
    return tuple(v[o[0]] for o in orbs)


def average_lift(eta: Sequence, perm: Sequence[int]) -> tuple[Fraction, ...]:
    """Lift a covector on V^ϖ to an invariant covector on V.

    xi(v) = (1/p) eta(sum_g g v).  The orbit O contributes (p/|O|) sum_{i in O}
    v_i to sum_g g v, so xi_i = eta_O / |O|.  Computed over Q.
    """
    orbs = coordinate_orbits(perm)
    if len(eta) != len(orbs):
        raise MalformedInputError(f"covector on the fixed subspace needs {len(orbs)} coordinates")
    xi = [Fraction(0)] * len(perm)
    for e, o in zip(eta, orbs):
        for i in o:
            xi[i] = Fraction(e) / len(o)
    return tuple(xi)


def fixed_fan(fan: Fan, perm: Sequence[int]) -> Fan:
    """The fan induced on V^ϖ by the cones contained in it (must be complete there)."""
    orbs = coordinate_orbits(perm)
    m = len(orbs)
    inside = []
    for c in fan.cones:
        if c and all(r[i] == r[o[0]] for r in c for o in orbs for i in o):
            inside.append([restrict_to_fixed(r, perm) for r in c])
    if m == 0:
        raise UnsupportedError("trivial fixed subspace")
    try:
        return Fan(m, inside)
    except MalformedInputError as err:
        raise RefinementNeededError(f"fan is not adapted to the fixed subspace: {err}") from err


def smith_conic(f: ConicCFun, perm: Sequence[int]) -> ConicCFun:
    """Restriction of an invariant F_p conic function to the fixed subspace."""
    if sorted(perm) != list(range(f.fan.dim)):
        raise MalformedInputError("not a permutation of the coordinates")
    p = _perm_order(perm)
    if not is_prime(p):
        raise MalformedInputError(f"permutation has order {p}, not a prime")
    if f.ring.p != p:
        raise MalformedInputError(f"Smith operator needs F_{p} values, got {f.ring.name}; reduce explicitly")
    if not f.fan.is_invariant(perm):
        raise MalformedInputError("fan is not invariant under the permutation")
    if not f.is_invariant(perm):
        raise NotInvariantError("conic function is not invariant")
    sub = fixed_fan(f.fan, perm)
    vals = {}
    for c in sub.cones:
        vals[c] = f[_lift_cone(c, perm)] if c else f.values.get((), 0)
    return ConicCFun(sub, f.ring, vals)


def smith_ft_square(f: ConicCFun, perm: Sequence[int], covectors: Iterable[Sequence]) -> list[dict]:
    """Both paths around the Smith/transform square at the given covectors on V^ϖ.

    ``f`` is integer valued; each row reports the two paths over Z and whether
    they agree after reduction mod p.
    """
    p = _perm_order(perm)
    fz = ConicCFun(f.fan, ZZ, f.values)
    fixed = smith_conic(fz.reduce(p), perm)
    fixed_z = ConicCFun(fixed.fan, ZZ, {c: fz[_lift_cone(c, perm)] if c else fz.values.get((), 0)
                                        for c in fixed.fan.cones})
    rows = []
    for eta in covectors:
        top = ft_value(fz, average_lift(eta, perm))
        bottom = ft_value(fixed_z, eta)
        rows.append({
            "covector": tuple(eta),
            "ft_then_smith": top,
            "smith_then_ft": bottom,
            "equal_over_Z": top == bottom,
            "equal_mod_p": (top - bottom) % p == 0,
        })
    return rows


def _lift_cone(cone: ConeKey, perm: Sequence[int]) -> ConeKey:
    orbs = coordinate_orbits(perm)
    n = len(perm)
    where = {i: k for k, o in enumerate(orbs) for i in o}
    return tuple(tuple(r[where[i]] for i in range(n)) for r in cone)


# ---------------------------------------------------------------------------
# random instances


def _random_vector(rng, n: int, bound: int = 3) -> tuple:
    while True:
        v = tuple(rng.randint(-bound, bound) for _ in range(n))
        if any(v):
            return primitive(v)


def random_fan(rng, dim: int) -> Fan:
    if dim == 1:
        return coordinate_fan(1)
    while True:
        k = rng.randint(dim + 1, dim + 5)
        rays = {_random_vector(rng, dim) for _ in range(k)}
        try:
            if dim == 2:
                return fan_from_rays_2d(rays)
            return fan_from_rays_3d(rays)
        except MalformedInputError:
            continue


def random_invariant_fan(rng, perm: Sequence[int]) -> Fan:
    """A complete fan invariant under ``perm`` whose fixed subspace is a union of cones."""
    n = len(perm)
    p = _perm_order(perm)
    orbs = coordinate_orbits(perm)
    while True:
        pts = set()
        if len(orbs) == 1:
            s = rng.randint(1, 3)
            pts |= {(s,) * n, (-s,) * n}
        for _ in range(rng.randint(1, 3)):
            v = _random_vector(rng, n)
            for _ in range(p):
                pts.add(v)
                v = permute(v, perm)
        try:
            if n == 2:
                fan = fan_from_rays_2d(pts)
            else:
                fan = fan_from_rays_3d(pts)
                if len(orbs) > 1:
                    # the fixed plane of a transposition: refine along it
                    i, j = next(o for o in orbs if len(o) == 2)
                    nrm = [0] * n
                    nrm[i], nrm[j] = 1, -1
                    fan = refine_by_hyperplane(fan, nrm)
            if fan.is_invariant(perm):
                fixed_fan(fan, perm)
                return fan
        except (MalformedInputError, RefinementNeededError):
            continue


def random_conic_cfun(rng, fan: Fan, ring: Ring | str = ZZ, density: float = 0.6) -> ConicCFun:
    ring = Ring.parse(ring)
    lo, hi = (0, ring.p - 1) if ring.p else (-3, 3)
    return ConicCFun(fan, ring, {c: rng.randint(lo, hi) for c in fan.cones if rng.random() < density})


def random_invariant_conic_cfun(rng, fan: Fan, perm: Sequence[int], ring: Ring | str = ZZ) -> ConicCFun:
    ring = Ring.parse(ring)
    lo, hi = (0, ring.p - 1) if ring.p else (-3, 3)
    vals, seen = {}, set()
    for c in fan.cones:
        if c in seen:
            continue
        orbit, cur = [], c
        while cur not in orbit:
            orbit.append(cur)
            cur = _cone_key(permute(r, perm) for r in cur) if cur else ()
        seen.update(orbit)
        v = rng.randint(lo, hi) if rng.random() < 0.7 else 0
        for o in orbit:
            vals[o] = v
    return ConicCFun(fan, ring, vals)
