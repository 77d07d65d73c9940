"""Weyl-invariant finitely supported functions on X^*: characters and the lattice Satake model.

An element is stored by its values on dominant weights; the full weight
function is the orbit expansion.  Multiplication is convolution of the full
functions.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Mapping

from ..errors import InternalConsistencyError, MalformedInputError, NotInvariantError
from ..fields import Ring, ZZ, require_same_ring
from .datum import RootDatum, dot


class InvariantElement:
    """W-invariant element of k[X^*] for a root datum."""

    __slots__ = ("datum", "ring", "dominant", "_full")

    def __init__(self, datum: RootDatum, ring: Ring | str = ZZ, weights: Mapping | None = None,
                 check: bool = True):
        ring = Ring.parse(ring)
        full = {}
        for w, c in (weights or {}).items():
            w = _parse_weight(w, datum.rank)
            if isinstance(c, float) or not hasattr(c, "__index__"):
                raise MalformedInputError(f"non-integer multiplicity {c!r} at {w}")
            c = ring.reduce(int(c))
            if c:
                full[w] = c
        if check:
            for w, c in full.items():
                for i in range(datum.rank):
                    if full.get(datum.reflect(i, w), 0) != c:
                        raise NotInvariantError(f"weights not invariant under s_{i + 1} at {w}")
        self.datum = datum
        self.ring = ring
        self.dominant = {w: c for w, c in full.items() if datum.is_dominant(w)}
        self._full = full

    @classmethod
    def from_dominant(cls, datum: RootDatum, ring: Ring | str, dominant: Mapping) -> "InvariantElement":
        ring = Ring.parse(ring)
        e = cls(datum, ring, {})
        dom = {}
        for w, c in dominant.items():
            w = _parse_weight(w, datum.rank)
            if not datum.is_dominant(w):
                raise MalformedInputError(f"{w} is not dominant")
            c = ring.reduce(int(c))
            if c:
                dom[w] = c
        e.dominant = dom
        e._full = None
        return e

    @classmethod
    def unit(cls, datum: RootDatum, ring: Ring | str = ZZ) -> "InvariantElement":
        return cls.from_dominant(datum, ring, {(0,) * datum.rank: 1})

    @classmethod
    def orbit_sum(cls, datum: RootDatum, weight, ring: Ring | str = ZZ) -> "InvariantElement":
        """The basis element m_lambda: indicator of a Weyl orbit."""
        return cls.from_dominant(datum, ring, {datum.dominant_conjugate(tuple(weight)): 1})

    @property
    def weights(self) -> dict:
        if self._full is None:
            full = {}
            for w, c in self.dominant.items():
                for x in self.datum.orbit(w):
                    full[x] = c
            self._full = full
        return self._full

    def __getitem__(self, w) -> int:
        return self.weights.get(tuple(w), 0)

    def dimension(self) -> int:
        """Sum of all multiplicities, via orbit sizes."""
        return self.ring.reduce(sum(c * self.datum.orbit_size(w) for w, c in self.dominant.items()))

    def __repr__(self):
        items = ", ".join(f"{w}: {c}" for w, c in sorted(self.dominant.items()))
        return f"InvariantElement[{self.datum.type}, {self.ring.name}]({{{items}}})"

    def __eq__(self, other):
        return (isinstance(other, InvariantElement) and self.datum == other.datum
                and self.ring == other.ring and self.dominant == other.dominant)

    def __hash__(self):
        return hash((self.datum, self.ring, frozenset(self.dominant.items())))

    def _same(self, other):
        if not isinstance(other, InvariantElement):
            raise TypeError("expected an InvariantElement")
        if other.datum != self.datum:
            raise MalformedInputError("elements belong to different root data")
        require_same_ring(self.ring, other.ring)

    def __add__(self, other: "InvariantElement") -> "InvariantElement":
        self._same(other)
        out = dict(self.dominant)
        for w, c in other.dominant.items():
            out[w] = out.get(w, 0) + c
        return InvariantElement.from_dominant(self.datum, self.ring, out)

    def __neg__(self):
        return InvariantElement.from_dominant(self.datum, self.ring, {w: -c for w, c in self.dominant.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> "InvariantElement":
        return InvariantElement.from_dominant(self.datum, self.ring, {w: k * c for w, c in self.dominant.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return convolve(self, other)

    __rmul__ = __mul__

    def reduce(self, p: int) -> "InvariantElement":
        if self.ring.p not in (0, p):
            raise MalformedInputError(f"cannot reduce {self.ring.name} mod {p}")
        return InvariantElement.from_dominant(self.datum, Ring(p), self.dominant)


def _parse_weight(w, r: int) -> tuple:
    if isinstance(w, str):
        try:
            w = tuple(int(x) for x in w.split(","))
        except ValueError:
            raise MalformedInputError(f"bad weight key {w!r}") from None
    w = tuple(w)
    if len(w) != r or not all(isinstance(x, int) for x in w):
        raise MalformedInputError(f"weight {w!r} is not a point of Z^{r}")
    return w


def convolve(a: InvariantElement, b: InvariantElement) -> InvariantElement:
    """Product in k[X^*]: convolution of the weight functions.

    Only dominant output weights are accumulated; the product is invariant so
    that determines it.
    """
    a._same(b)
    rd = a.datum
    out: dict = defaultdict(int)
    fb = b.weights
    for x, c in a.weights.items():
        for y, d in fb.items():
            z = tuple(u + v for u, v in zip(x, y))
            if rd.is_dominant(z):
                out[z] += c * d
    return InvariantElement.from_dominant(rd, a.ring, out)


def convolve_full(a: InvariantElement, b: InvariantElement) -> dict:
    """Plain convolution of the full weight functions (no use of invariance)."""
    a._same(b)
    out: dict = defaultdict(int)
    for x, c in a.weights.items():
        for y, d in b.weights.items():
            out[tuple(u + v for u, v in zip(x, y))] += c * d
    return {w: a.ring.reduce(c) for w, c in out.items() if a.ring.reduce(c)}


# ---------------------------------------------------------------------------
# Weyl characters


def dominant_weights_below(rd: RootDatum, lam) -> list[tuple]:
    """Dominant mu with lam - mu a nonnegative sum of roots.

    Generated from lam by subtracting positive roots while staying dominant;
    covering relations in the dominance order of dominant weights are positive
    roots, so this reaches all of them.
    """
    lam = tuple(lam)
    pos = rd.positive_roots
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for a in pos:
                nu = tuple(x - y for x, y in zip(mu, a))
                if nu not in seen and rd.is_dominant(nu):
                    seen.add(nu)
                    nxt.append(nu)
        frontier = nxt
    return sorted(seen, key=lambda w: (-rd.level(w), w))


def _freudenthal(rd: RootDatum, lam) -> dict:
    lam = tuple(lam)
    doms = dominant_weights_below(rd, lam)
    domset = set(doms)
    pos = rd.positive_roots
    rho2 = rd.rho2
    f = rd.form_scaled
    norm_lam = f(lam, lam) + f(lam, rho2)
    mult = {lam: 1}
    cache: dict = {}

    def m(nu):
        d = cache.get(nu)
        if d is None:
            d = rd.dominant_conjugate(nu)
            cache[nu] = d
        return mult.get(d, 0) if d in domset else None

    for mu in doms[1:]:
        denom = norm_lam - f(mu, mu) - f(mu, rho2)
        total = 0
        for a in pos:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, a))
                v = m(nu)
                if v is None:
                    break
                if v:
                    total += v * f(nu, a)
                k += 1
        val, rem = divmod(2 * total, denom)
        if rem:
            raise InternalConsistencyError(f"non-integral multiplicity at {mu}")
        if val:
            mult[mu] = val
    return mult


def weyl_character(rd: RootDatum, lam, ring: Ring | str = ZZ) -> InvariantElement:
    """Character of the irreducible representation of highest weight lam (Freudenthal)."""
    lam = _parse_weight(lam, rd.rank)
    if not rd.is_dominant(lam):
        raise MalformedInputError(f"{lam} is not dominant")
    return InvariantElement.from_dominant(rd, ring, _freudenthal(rd, lam))


def weyl_dimension(rd: RootDatum, lam) -> int:
    """prod over positive roots of (lam + rho, a^vee) / (rho, a^vee), computed with 2 rho."""
    num = den = 1
    for a in rd.positive_roots:
        c = rd.coroot(a)
        num *= 2 * dot(lam, c) + dot(rd.rho2, c)
        den *= dot(rd.rho2, c)
    if num % den:
        raise InternalConsistencyError("Weyl dimension is not an integer")
    return num // den


def decompose(e: InvariantElement) -> list[tuple[tuple, int]]:
    """Coefficients in the basis of Weyl characters, by peeling off highest terms.

    The reconstruction sum m_lam chi_lam = e is verified before returning.
    """
    rd = e.datum
    rest = dict(e.dominant)
    out = {}
    chars: dict = {}
    while rest:
        top = max(rest, key=lambda w: (rd.level(w), w))
        m = rest[top]
        out[top] = m
        chi = chars.setdefault(top, _freudenthal(rd, top))
        for w, c in chi.items():
            v = e.ring.reduce(rest.get(w, 0) - m * c)
            if v:
                rest[w] = v
            else:
                rest.pop(w, None)
        if top in rest:
            raise InternalConsistencyError("highest term did not cancel")
    total: dict = defaultdict(int)
    for lam, m in out.items():
        for w, c in chars[lam].items():
            total[w] += m * c
    recon = InvariantElement.from_dominant(rd, e.ring, total)
    if recon != e:
        raise InternalConsistencyError("decomposition does not reconstruct the element")
    return sorted(out.items(), key=lambda kv: (rd.level(kv[0]), kv[0]))


def recompose(rd: RootDatum, terms, ring: Ring | str = ZZ) -> InvariantElement:
    out = InvariantElement.from_dominant(rd, ring, {})
    for lam, m in terms:
        out = out + weyl_character(rd, lam, ring).scale(m)
    return out


# ---------------------------------------------------------------------------
# restriction


def weyl_subgroup_check(g: RootDatum, h: RootDatum) -> list[str]:
    """Problems with W_h <= W_g, checked on the simple reflections of h."""
    if g.rank != h.rank:
        return ["the data do not share lattices (ranks differ)"]
    problems = []
    groots = set(g.roots)
    for a, ac in zip(h.simple_roots, h.simple_coroots):
        if a not in groots:
            problems.append(f"{a} is not a root of the ambient datum")
        elif g.coroot(a) != ac:
            problems.append(f"coroot of {a} differs: {ac} vs {g.coroot(a)}")
    return problems


def restrict_invariants(g: RootDatum, h: RootDatum, e: InvariantElement) -> InvariantElement:
    """The inclusion k[X^*]^{W_g} into k[X^*]^{W_h}: same weight function, new datum."""
    if e.datum != g:
        raise MalformedInputError("element does not belong to the ambient datum")
    problems = weyl_subgroup_check(g, h)
    if problems:
        raise MalformedInputError("Weyl group of h is not a subgroup of that of g: " + "; ".join(problems))
    return InvariantElement(h, e.ring, e.weights, check=False)


def branching(g: RootDatum, h: RootDatum, lam) -> list[tuple[tuple, int]]:
    """Multiplicities of h-irreducibles in the restriction of the g-irreducible lam."""
    return decompose(restrict_invariants(g, h, weyl_character(g, lam)))
