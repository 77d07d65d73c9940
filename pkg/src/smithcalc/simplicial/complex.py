"""Finite abstract simplicial complexes and simplicial maps.

A simplex is stored as the sorted tuple of its vertex labels.  Labels may be
any mutually orderable hashable values (strings from JSON files, ints, or the
simplex tuples produced by barycentric subdivision).  Simplices are ordered by
``(dimension, vertex tuple)``, and that order is the basis order used by every
matrix in the package.
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Sequence

from ..errors import MalformedInputError, NotSimplicialError

Simplex = tuple


def simplex_key(s: Simplex):
    return (len(s), s)


def dim(s: Simplex) -> int:
    return len(s) - 1


def sign(s: Simplex) -> int:
    """(-1)**dim(s): the compactly supported Euler characteristic of relint(s)."""
    return -1 if len(s) % 2 == 0 else 1


def nonempty_faces(s: Simplex):
    for k in range(1, len(s) + 1):
        yield from combinations(s, k)


class Complex:
    """A finite simplicial complex, closed under taking nonempty faces.

    Use :func:`build_complex` to construct one from maximal simplices; the
    constructor itself expects an already face-closed family.
    """

    __slots__ = ("simplices", "vertices", "index", "_simplex_set", "__dict__")

    def __init__(self, simplices: Iterable[Sequence[Hashable]], *, check: bool = True):
        sset = {tuple(sorted(s)) for s in simplices}
        if check:
            for s in sset:
                if not s:
                    raise MalformedInputError("empty simplex")
                if len(set(s)) != len(s):
                    raise MalformedInputError(f"duplicate vertex in simplex {s!r}")
                for f in nonempty_faces(s):
                    if f not in sset:
                        raise MalformedInputError(f"family is not face-closed: {f!r} missing")
        self.simplices: tuple[Simplex, ...] = tuple(sorted(sset, key=simplex_key))
        self.vertices: tuple = tuple(s[0] for s in self.simplices if len(s) == 1)
        self.index: dict[Simplex, int] = {s: i for i, s in enumerate(self.simplices)}
        self._simplex_set = frozenset(sset)

    # container protocol ------------------------------------------------------

    def __len__(self):
        return len(self.simplices)

    def __iter__(self):
        return iter(self.simplices)

    def __contains__(self, s) -> bool:
        return tuple(sorted(s)) in self._simplex_set

    def __eq__(self, other):
        return isinstance(other, Complex) and self._simplex_set == other._simplex_set

    def __hash__(self):
        return hash(self._simplex_set)

    def __repr__(self):
        return f"Complex({len(self.vertices)} vertices, {len(self)} simplices, dim {self.dimension})"

    # structure ---------------------------------------------------------------

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def simplices_of_dim(self, k: int) -> list[Simplex]:
        return [s for s in self.simplices if len(s) == k + 1]

    @cached_property
    def maximal_simplices(self) -> tuple[Simplex, ...]:
        cof = self.cofaces
        return tuple(s for s in self.simplices if len(cof[s]) == 1)

    @cached_property
    def cofaces(self) -> dict[Simplex, tuple[Simplex, ...]]:
        """Map each simplex to all simplices containing it (itself included)."""
        out: dict[Simplex, list] = {s: [] for s in self.simplices}
        for t in self.simplices:
            for f in nonempty_faces(t):
                out[f].append(t)
        return {s: tuple(v) for s, v in out.items()}

    def euler_characteristic(self) -> int:
        return sum(sign(s) for s in self.simplices)

    def is_subcomplex_of(self, other: "Complex") -> bool:
        return self._simplex_set <= other._simplex_set

    def subcomplex(self, simplices: Iterable[Sequence]) -> "Complex":
        """The subcomplex spanned by the given simplices, which must already be simplices here."""
        chosen = [tuple(sorted(s)) for s in simplices]
        for s in chosen:
            if s not in self._simplex_set:
                raise MalformedInputError(f"{s!r} is not a simplex of the complex")
        return Complex(chosen, check=True)

    def closure(self, simplices: Iterable[Sequence]) -> "Complex":
        out = set()
        for s in simplices:
            s = tuple(sorted(s))
            if s not in self._simplex_set:
                raise MalformedInputError(f"{s!r} is not a simplex of the complex")
            out.update(nonempty_faces(s))
        return Complex(out, check=False)

    def open_star(self, v) -> tuple[Simplex, ...]:
        if (v,) not in self._simplex_set:
            raise MalformedInputError(f"{v!r} is not a vertex")
        return self.cofaces[(v,)]

    def closed_star(self, v) -> "Complex":
        return self.closure(self.open_star(v))

    def link(self, v) -> "Complex":
        lk = set()
        for t in self.open_star(v):
            rest = tuple(x for x in t if x != v)
            if rest:
                lk.add(rest)
        return Complex(lk, check=False)

    def is_coface_closed(self, simplices: Iterable[Simplex]) -> bool:
        u = set(simplices)
        return all(t in u for s in u for t in self.cofaces[s])


def build_complex(maximal_simplices: Iterable[Sequence[Hashable]]) -> Complex:
    """Face closure of a list of vertex sets.

    >>> len(build_complex([["a", "b", "c"]]))
    7
    """
    out = set()
    for raw in maximal_simplices:
        raw = list(raw)
        if not raw:
            raise MalformedInputError("simplices must be nonempty")
        if len(set(raw)) != len(raw):
            raise MalformedInputError(f"duplicate vertex within simplex {raw!r}")
        out.update(nonempty_faces(tuple(sorted(raw))))
    return Complex(out, check=False)


def point() -> Complex:
    return build_complex([["*"]])


class SimplicialMap:
    """A vertex assignment that sends simplices to simplices.

    Degenerate images are allowed: the image of a simplex is the set of the
    images of its vertices.
    """

    def __init__(self, source: Complex, target: Complex, assignment: Mapping):
        self.source = source
        self.target = target
        missing = [v for v in source.vertices if v not in assignment]
        if missing:
            raise MalformedInputError(f"assignment undefined on vertices {missing!r}")
        self.assignment = {v: assignment[v] for v in source.vertices}
        images = {}
        for s in source.simplices:
            img = tuple(sorted({self.assignment[v] for v in s}))
            if img not in target:
                raise NotSimplicialError(f"image {img!r} of simplex {s!r} is not a simplex of the target")
            images[s] = img
        self._images = images

    def __call__(self, s: Simplex) -> Simplex:
        return self._images[tuple(sorted(s))]

    def __repr__(self):
        return f"SimplicialMap({self.source!r} -> {self.target!r})"

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialMap)
            and self.source == other.source
            and self.target == other.target
            and self.assignment == other.assignment
        )

    def compose(self, after: "SimplicialMap") -> "SimplicialMap":
        """``after ∘ self``."""
        if after.source != self.target:
            raise MalformedInputError("maps are not composable")
        return SimplicialMap(self.source, after.target, {v: after.assignment[w] for v, w in self.assignment.items()})

    def preimage(self, sub: Complex) -> Complex:
        """The subcomplex of source simplices whose image lies in ``sub``."""
        return Complex([s for s in self.source.simplices if self._images[s] in sub], check=False)

    def restrict(self, source_sub: Complex, target_sub: Complex) -> "SimplicialMap":
        return SimplicialMap(source_sub, target_sub, {v: self.assignment[v] for v in source_sub.vertices})


def simplicial_map(src: Complex, tgt: Complex, assignment: Mapping) -> SimplicialMap:
    return SimplicialMap(src, tgt, assignment)


def identity_map(c: Complex) -> SimplicialMap:
    return SimplicialMap(c, c, {v: v for v in c.vertices})


def constant_map(c: Complex, target: Complex | None = None) -> SimplicialMap:
    target = target if target is not None else point()
    if len(target.vertices) != 1:
        raise MalformedInputError("constant map needs a one-point target")
    (v0,) = target.vertices
    return SimplicialMap(c, target, {v: v0 for v in c.vertices})


def inclusion(sub: Complex, ambient: Complex) -> SimplicialMap:
    if not sub.is_subcomplex_of(ambient):
        raise MalformedInputError("not a subcomplex")
    return SimplicialMap(sub, ambient, {v: v for v in sub.vertices})


def subdivide(c: Complex) -> tuple[Complex, dict[Simplex, Simplex]]:
    """Barycentric subdivision.

    Returns the subdivided complex, whose vertices are the simplices of ``c``,
    and the carrier map sending each new simplex (a chain of old simplices) to
    the old simplex whose relative interior contains it: the top of the chain.
    """
    chains: set = set()
    carrier: dict = {}

    def extend(chain):
        top = chain[-1]
        for t in c.cofaces[top]:
            if len(t) > len(top):
                new = chain + (t,)
                key = tuple(sorted(new))
                if key not in chains:
                    chains.add(key)
                    carrier[key] = t
                    extend(new)

    for s in c.simplices:
        key = (s,)
        chains.add(key)
        carrier[key] = s
        extend((s,))
    return Complex(chains, check=False), carrier
