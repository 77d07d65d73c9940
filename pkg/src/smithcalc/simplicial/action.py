"""Cyclic p-group actions on simplicial complexes."""

from __future__ import annotations

from functools import cached_property
from typing import Mapping

from ..errors import MalformedInputError, NonRegularActionError, NotSimplicialError
from ..fields import prime_power_base
from .complex import Complex, Simplex, SimplicialMap, subdivide


def _apply(perm: Mapping, s: Simplex) -> Simplex:
    return tuple(sorted(perm[v] for v in s))


class GComplex:
    """A complex with a cyclic group of order ``p**n`` acting by a vertex permutation.

    ``generator`` maps each vertex to its image; ``generator**order`` must be
    the identity (the generator may have smaller order, e.g. the trivial action).
    """

    def __init__(self, base: Complex, generator: Mapping, order: int):
        self.base = base
        p = prime_power_base(order)
        if p is None:
            raise MalformedInputError(f"group order {order} is not a prime power >= 2")
        self.order = order
        self.p = p
        gen = {v: generator.get(v, v) for v in base.vertices}
        extra = set(generator) - set(base.vertices)
        if extra:
            raise MalformedInputError(f"generator moves unknown vertices {sorted(map(str, extra))}")
        if sorted(gen.values()) != list(base.vertices):
            raise MalformedInputError("generator is not a permutation of the vertices")
        for s in base.simplices:
            if _apply(gen, s) not in base:
                raise NotSimplicialError(f"generator sends simplex {s!r} to a non-simplex")
        self.generator = gen
        powers = [{v: v for v in base.vertices}]
        for _ in range(order - 1):
            prev = powers[-1]
            powers.append({v: gen[prev[v]] for v in base.vertices})
        if any(gen[powers[-1][v]] != v for v in base.vertices):
            raise MalformedInputError(f"generator^{order} is not the identity")
        self.powers: tuple[dict, ...] = tuple(powers)

    def __repr__(self):
        return f"GComplex({self.base!r}, order {self.order}, {'regular' if self.is_regular else 'non-regular'})"

    def __eq__(self, other):
        return (
            isinstance(other, GComplex)
            and self.base == other.base
            and self.order == other.order
            and self.generator == other.generator
        )

    def __hash__(self):
        return hash((self.base, self.order))

    # group data ----------------------------------------------------------------

    def act(self, k: int, s: Simplex) -> Simplex:
        """Image of ``s`` under generator**k."""
        return _apply(self.powers[k % self.order], s)

    @cached_property
    def simplex_permutations(self) -> tuple[tuple[int, ...], ...]:
        """For each group element, the induced permutation of simplex indices."""
        idx = self.base.index
        return tuple(
            tuple(idx[_apply(perm, s)] for s in self.base.simplices) for perm in self.powers
        )

    @cached_property
    def is_regular(self) -> bool:
        """Every element stabilizing a simplex fixes it vertexwise."""
        for perm in self.powers[1:]:
            for s in self.base.simplices:
                if _apply(perm, s) == s and any(perm[v] != v for v in s):
                    return False
        return True

    def orbit(self, s: Simplex) -> set:
        return {self.act(k, s) for k in range(self.order)}

    def orbits(self) -> list[list[Simplex]]:
        seen, out = set(), []
        for s in self.base.simplices:
            if s not in seen:
                orb = sorted(self.orbit(s), key=lambda t: self.base.index[t])
                seen.update(orb)
                out.append(orb)
        return out

    def fixed_vertices(self) -> list:
        return [v for v in self.base.vertices if self.generator[v] == v]

    def require_regular(self):
        if not self.is_regular:
            raise NonRegularActionError(
                "the action is not regular; apply barycentric_subdivide first"
            )

    def is_free(self) -> bool:
        """No non-identity element fixes a point (checked on simplices, regular actions)."""
        for perm in self.powers[1:]:
            for s in self.base.simplices:
                if _apply(perm, s) == s:
                    return False
        return True

    def is_invariant_subcomplex(self, sub: Complex) -> bool:
        return all(_apply(self.generator, s) in sub for s in sub.simplices)

    def restrict(self, sub: Complex) -> "GComplex":
        """The action on an invariant subcomplex."""
        if not sub.is_subcomplex_of(self.base) or not self.is_invariant_subcomplex(sub):
            raise MalformedInputError("subcomplex is not invariant")
        return GComplex(sub, {v: self.generator[v] for v in sub.vertices}, self.order)


def group_action(c: Complex, generator: Mapping, order: int) -> GComplex:
    return GComplex(c, generator, order)


def fixed_subcomplex(g: GComplex) -> Complex:
    """Simplices fixed vertexwise by the whole group (requires a regular action)."""
    g.require_regular()
    fixed = set(g.fixed_vertices())
    return Complex([s for s in g.base.simplices if all(v in fixed for v in s)], check=False)


class Subdivision:
    """Result of subdividing: the new complex (or G-complex) plus its carrier map."""

    def __init__(self, complex: Complex, carrier: dict, original: Complex, gcomplex: GComplex | None = None):
        self.complex = complex
        self.carrier = carrier
        self.original = original
        self.gcomplex = gcomplex

    def transport(self, f):
        """Refine a function on the original complex to the subdivision.

        Each new open cell takes the value of the old open simplex containing it.
        """
        from .calculus import CFun

        if f.carrier != self.original:
            raise MalformedInputError("function does not live on the subdivided complex")
        return CFun(self.complex, f.ring, {t: f[self.carrier[t]] for t in self.complex.simplices})


def barycentric_subdivide(g: GComplex | Complex) -> Subdivision:
    """Barycentric subdivision with the induced action, which is always regular."""
    if isinstance(g, Complex):
        new, carrier = subdivide(g)
        return Subdivision(new, carrier, g)
    new, carrier = subdivide(g.base)
    gen = {s: g.act(1, s) for s in g.base.simplices}
    sub = GComplex(new, gen, g.order)
    return Subdivision(new, carrier, g.base, sub)


class EquivariantMap:
    """A simplicial map intertwining two actions of the same cyclic group."""

    def __init__(self, source: GComplex, target: GComplex, map: SimplicialMap):
        if source.order != target.order:
            raise MalformedInputError("actions have different group orders")
        if map.source != source.base or map.target != target.base:
            raise MalformedInputError("map does not match the G-complexes")
        for v in source.base.vertices:
            if map.assignment[source.generator[v]] != target.generator[map.assignment[v]]:
                raise MalformedInputError(f"map is not equivariant at vertex {v!r}")
        self.source = source
        self.target = target
        self.map = map

    def on_fixed_points(self) -> SimplicialMap:
        """The induced map X^ϖ -> Y^ϖ."""
        fx, fy = fixed_subcomplex(self.source), fixed_subcomplex(self.target)
        return self.map.restrict(fx, fy)
