"""Constructible functions on finite complexes and their operations.

A constructible function is stored in the basis of indicator functions of
OPEN simplices: ``f = sum_s f[s] * 1_{relint s}``.  Because the compactly
supported Euler characteristic of an open d-simplex is (-1)**d, every
operation below is an exact integer (or F_p) linear map in this basis.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Mapping

from ..errors import MalformedInputError, NotInvariantError, RingMismatchError
from ..fields import Ring, ZZ, require_same_ring
from .action import EquivariantMap, GComplex, fixed_subcomplex
from .complex import Complex, Simplex, SimplicialMap, dim, nonempty_faces, sign


class CFun:
    """Finitely supported scalar function on the open simplices of a complex."""

    __slots__ = ("carrier", "ring", "coefficients")

    def __init__(self, carrier: Complex, ring: Ring | str = ZZ, coefficients: Mapping | None = None):
        ring = Ring.parse(ring)
        coeffs = {}
        for s, c in (coefficients or {}).items():
            key = tuple(sorted(s))
            if key not in carrier:
                raise MalformedInputError(f"{key!r} is not a simplex of the carrier")
            if not isinstance(c, int):
                if isinstance(c, float) or not hasattr(c, "__index__"):
                    raise MalformedInputError(f"non-integer value {c!r} at {key!r}")
                c = int(c)
            c = ring.reduce(c)
            if c:
                coeffs[key] = ring.reduce(coeffs.get(key, 0) + c)
                if not coeffs[key]:
                    del coeffs[key]
        self.carrier = carrier
        self.ring = ring
        self.coefficients: dict[Simplex, int] = coeffs

    # constructors --------------------------------------------------------------

    @classmethod
    def constant(cls, carrier: Complex, value: int = 1, ring: Ring | str = ZZ) -> "CFun":
        return cls(carrier, ring, {s: value for s in carrier.simplices})

    @classmethod
    def indicator(cls, carrier: Complex, simplices: Iterable, value: int = 1, ring: Ring | str = ZZ) -> "CFun":
        return cls(carrier, ring, {tuple(sorted(s)): value for s in simplices})

    @classmethod
    def zero(cls, carrier: Complex, ring: Ring | str = ZZ) -> "CFun":
        return cls(carrier, ring, {})

    # access ---------------------------------------------------------------------

    def __getitem__(self, s) -> int:
        return self.coefficients.get(tuple(sorted(s)), 0)

    value = __getitem__

    @property
    def support(self) -> list[Simplex]:
        return sorted(self.coefficients, key=self.carrier.index.__getitem__)

    def as_vector(self) -> list[int]:
        return [self.coefficients.get(s, 0) for s in self.carrier.simplices]

    def __repr__(self):
        items = ", ".join(f"{','.join(map(str, s))}: {c}" for s, c in
                          sorted(self.coefficients.items(), key=lambda kv: self.carrier.index[kv[0]]))
        return f"CFun[{self.ring.name}]({{{items}}})"

    # arithmetic --------------------------------------------------------------------

    def _check(self, other: "CFun"):
        if not isinstance(other, CFun):
            return NotImplemented
        if other.carrier != self.carrier:
            raise MalformedInputError("functions live on different complexes")
        require_same_ring(self.ring, other.ring)

    def __add__(self, other: "CFun") -> "CFun":
        self._check(other)
        out = dict(self.coefficients)
        for s, c in other.coefficients.items():
            out[s] = out.get(s, 0) + c
        return CFun(self.carrier, self.ring, out)

    def __neg__(self) -> "CFun":
        return CFun(self.carrier, self.ring, {s: -c for s, c in self.coefficients.items()})

    def __sub__(self, other: "CFun") -> "CFun":
        return self + (-other)

    def __rmul__(self, k: int) -> "CFun":
        return CFun(self.carrier, self.ring, {s: k * c for s, c in self.coefficients.items()})

    __mul__ = __rmul__

    def __eq__(self, other):
        return (
            isinstance(other, CFun)
            and self.carrier == other.carrier
            and self.ring == other.ring
            and self.coefficients == other.coefficients
        )

    def __hash__(self):
        return hash((self.carrier, self.ring, frozenset(self.coefficients.items())))

    def reduce(self, p: int) -> "CFun":
        """Explicit change of coefficients Z -> F_p."""
        if self.ring.p not in (0, p):
            raise RingMismatchError(f"cannot reduce {self.ring.name}-valued function mod {p}")
        return CFun(self.carrier, Ring(p), self.coefficients)

    def lift(self) -> "CFun":
        """The integer function with representatives in [0, p)."""
        return CFun(self.carrier, ZZ, self.coefficients)

    def restrict(self, sub: Complex) -> "CFun":
        """Restriction to a subcomplex (the pullback along the inclusion)."""
        if not sub.is_subcomplex_of(self.carrier):
            raise MalformedInputError("not a subcomplex of the carrier")
        return CFun(sub, self.ring, {s: c for s, c in self.coefficients.items() if s in sub})

    def extend(self, ambient: Complex) -> "CFun":
        """Extension by zero from a subcomplex (or any subset of simplices) to ``ambient``."""
        return CFun(ambient, self.ring, self.coefficients)

    def is_invariant(self, g: GComplex) -> bool:
        if g.base != self.carrier:
            raise MalformedInputError("action and function live on different complexes")
        return all(self[g.act(1, s)] == c for s, c in self.coefficients.items())


def reduce_mod(f: CFun, p: int) -> CFun:
    return f.reduce(p)


# ---------------------------------------------------------------------------
# integration, pullback, pushforward


def euler_integral(f: CFun) -> int:
    """Sum of values weighted by compactly supported Euler characteristic."""
    return f.ring.reduce(sum(c * sign(s) for s, c in f.coefficients.items()))


def pullback(u: SimplicialMap, g: CFun) -> CFun:
    if g.carrier != u.target:
        raise MalformedInputError("function does not live on the target of the map")
    return CFun(u.source, g.ring, {t: g[u(t)] for t in u.source.simplices if g[u(t)]})


def pushforward(u: SimplicialMap, f: CFun) -> CFun:
    """Fiberwise Euler integral.

    The open simplex t maps onto the open simplex u(t) with fibers open cells
    of dimension dim t - dim u(t), whence the sign.
    """
    if f.carrier != u.source:
        raise MalformedInputError("function does not live on the source of the map")
    out: dict = defaultdict(int)
    for t, c in f.coefficients.items():
        img = u(t)
        out[img] += c * (-1) ** (dim(t) - dim(img))
    return CFun(u.target, f.ring, out)


# ---------------------------------------------------------------------------
# duality


def _dual_coefficients(coefficients: Mapping[Simplex, int], allowed=None) -> dict:
    out: dict = defaultdict(int)
    for t, c in coefficients.items():
        c = c * sign(t)
        for s in nonempty_faces(t):
            if allowed is None or s in allowed:
                out[s] += c
    return out


def dualize(f: CFun) -> CFun:
    """Verdier duality on constructible functions: (Df)(s) = sum over cofaces t of (-1)**dim t f(t)."""
    return CFun(f.carrier, f.ring, _dual_coefficients(f.coefficients))


def dualize_open(f: CFun, open_set: Iterable[Simplex]) -> CFun:
    """Duality on an open (coface-closed) union of open simplices, extended by zero."""
    u = set(open_set)
    if not f.carrier.is_coface_closed(u):
        raise MalformedInputError("the given set of simplices is not open")
    if any(s not in u for s in f.coefficients):
        raise MalformedInputError("function is not supported on the open set")
    return CFun(f.carrier, f.ring, _dual_coefficients(f.coefficients, u))


def pushforward_star(u: SimplicialMap, f: CFun) -> CFun:
    """u_* = D ∘ u_! ∘ D."""
    return dualize(pushforward(u, dualize(f)))


def pullback_shriek(u: SimplicialMap, g: CFun) -> CFun:
    """u^! = D ∘ u^* ∘ D."""
    return dualize(pullback(u, dualize(g)))


def standard_costandard(m: Complex, v, ring: Ring | str = ZZ) -> tuple[CFun, CFun]:
    """Standard function 1 on the closed star of v and costandard (-1)**dim U on the open star."""
    star = m.open_star(v)
    d = max(dim(t) for t in star)
    closed = m.closure(star)
    i_u = CFun.constant(m, 1, ring).restrict(closed).extend(m)
    j_u = CFun.indicator(m, star, (-1) ** d, ring)
    return i_u, j_u


# ---------------------------------------------------------------------------
# Smith operator


def smith_restrict(g: GComplex, f: CFun) -> CFun:
    """Restrict an invariant F_p-valued function to the fixed subcomplex."""
    if f.carrier != g.base:
        raise MalformedInputError("function and action live on different complexes")
    if f.ring.p != g.p:
        raise RingMismatchError(
            f"Smith restriction needs F_{g.p} coefficients, got {f.ring.name}; reduce explicitly first"
        )
    if not f.is_invariant(g):
        raise NotInvariantError("function is not constant along orbits")
    return f.restrict(fixed_subcomplex(g))


# ---------------------------------------------------------------------------
# specialization


_SIGNS = {"-": -1, "0": 0, "+": 1, -1: -1, 0: 0, 1: 1}


def _parse_signs(c: Complex, signs: Mapping) -> dict:
    out = {}
    for v in c.vertices:
        if v not in signs:
            raise MalformedInputError(f"no sign for vertex {v!r}")
        if signs[v] not in _SIGNS:
            raise MalformedInputError(f"bad sign {signs[v]!r} at {v!r}")
        out[v] = _SIGNS[signs[v]]
    return out


def zero_subcomplex(c: Complex, signs: Mapping) -> Complex:
    s = _parse_signs(c, signs)
    return Complex([t for t in c.simplices if all(s[v] == 0 for v in t)], check=False)


def specialize(c: Complex, signs: Mapping, f: CFun) -> CFun:
    """Upper specialization i^* j_* j^* f along the piecewise-linear function with the given vertex signs.

    The labeling must be pre-subdivided: no simplex may carry both a + and a -
    vertex.  The result lives on the subcomplex of all-zero simplices.
    """
    if f.carrier != c:
        raise MalformedInputError("function does not live on the complex")
    s = _parse_signs(c, signs)
    for t in c.simplices:
        vals = {s[v] for v in t}
        if 1 in vals and -1 in vals:
            raise MalformedInputError(f"simplex {t!r} mixes + and - vertices; subdivide first")
    positive = [t for t in c.simplices if any(s[v] == 1 for v in t)]
    pos_set = set(positive)
    restricted = CFun(c, f.ring, {t: x for t, x in f.coefficients.items() if t in pos_set})
    j_star = dualize(dualize_open(restricted, positive))
    return j_star.restrict(zero_subcomplex(c, signs))


# ---------------------------------------------------------------------------
# equivariant helpers


def orbit_sum(g: GComplex, f: CFun) -> CFun:
    """Symmetrization: the sum of all translates of f."""
    out: dict = defaultdict(int)
    for k in range(g.order):
        for s, c in f.coefficients.items():
            out[g.act(k, s)] += c
    return CFun(f.carrier, f.ring, out)


def fixed_map(u: EquivariantMap) -> SimplicialMap:
    return u.on_fixed_points()
