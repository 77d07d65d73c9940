"""Hecke algebras of invariant kernels on X x X, and their Smith homomorphism.

A kernel is a function on pairs of open simplices, i.e. a constructible
function on X x X that is constant on products of open cells.  Convolution
integrates over the middle factor, which in this cell structure is the
Euler-signed matrix product.
"""

from __future__ import annotations

from collections import defaultdict
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InternalConsistencyError, MalformedInputError, NotInvariantError
from .fields import Ring, ZZ, is_prime, require_same_ring
from .simplicial.action import GComplex, fixed_subcomplex
from .simplicial.complex import Complex, Simplex, build_complex, sign


class HeckeElement:
    """Kernel on ordered pairs of simplices of ``carrier``."""

    __slots__ = ("carrier", "ring", "kernel")

    def __init__(self, carrier: Complex, ring: Ring | str = ZZ, kernel: Mapping | None = None):
        ring = Ring.parse(ring)
        out = {}
        for (s, t), c in (kernel or {}).items():
            s, t = tuple(sorted(s)), tuple(sorted(t))
            if s not in carrier or t not in carrier:
                raise MalformedInputError(f"pair {s!r}|{t!r} is not a pair of simplices")
            c = ring.reduce(int(c))
            if c:
                out[(s, t)] = ring.reduce(out.get((s, t), 0) + c)
                if not out[(s, t)]:
                    del out[(s, t)]
        self.carrier = carrier
        self.ring = ring
        self.kernel: dict[tuple[Simplex, Simplex], int] = out

    @classmethod
    def from_matrix(cls, carrier: Complex, matrix, ring: Ring | str = ZZ) -> "HeckeElement":
        simp = carrier.simplices
        m = np.asarray(matrix, dtype=object)
        return cls(carrier, ring, {(simp[i], simp[j]): m[i, j] for i, j in zip(*np.nonzero(m))})

    @classmethod
    def constant(cls, carrier: Complex, value: int = 1, ring: Ring | str = ZZ) -> "HeckeElement":
        return cls(carrier, ring, {(s, t): value for s in carrier.simplices for t in carrier.simplices})

    def matrix(self) -> np.ndarray:
        n = len(self.carrier)
        m = np.zeros((n, n), dtype=object)
        idx = self.carrier.index
        for (s, t), c in self.kernel.items():
            m[idx[s], idx[t]] = c
        return m

    def __getitem__(self, pair) -> int:
        s, t = pair
        return self.kernel.get((tuple(sorted(s)), tuple(sorted(t))), 0)

    def __eq__(self, other):
        return (
            isinstance(other, HeckeElement)
            and self.carrier == other.carrier
            and self.ring == other.ring
            and self.kernel == other.kernel
        )

    def __hash__(self):
        return hash((self.carrier, self.ring, frozenset(self.kernel.items())))

    def __repr__(self):
        return f"HeckeElement[{self.ring.name}]({len(self.kernel)} nonzero entries on {self.carrier!r})"

    def _same(self, other: "HeckeElement"):
        if self.carrier != other.carrier:
            raise MalformedInputError("kernels live on different complexes")
        require_same_ring(self.ring, other.ring)

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._same(other)
        out = dict(self.kernel)
        for k, c in other.kernel.items():
            out[k] = out.get(k, 0) + c
        return HeckeElement(self.carrier, self.ring, out)

    def __rmul__(self, k: int) -> "HeckeElement":
        return HeckeElement(self.carrier, self.ring, {key: k * c for key, c in self.kernel.items()})

    def __neg__(self):
        return (-1) * self

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other: "HeckeElement") -> "HeckeElement":
        return convolve(self, other)

    def reduce(self, p: int) -> "HeckeElement":
        if self.ring.p not in (0, p):
            raise MalformedInputError(f"cannot reduce {self.ring.name} kernel mod {p}")
        return HeckeElement(self.carrier, Ring(p), self.kernel)

    def restrict(self, sub: Complex) -> "HeckeElement":
        return HeckeElement(
            sub, self.ring, {(s, t): c for (s, t), c in self.kernel.items() if s in sub and t in sub}
        )


def convolve(f1: HeckeElement, f2: HeckeElement) -> HeckeElement:
    """(f1 * f2)(s, t) = sum over r of (-1)**dim r f1(s, r) f2(r, t)."""
    f1._same(f2)
    signs = np.array([sign(r) for r in f1.carrier.simplices], dtype=object)
    prod = (f1.matrix() * signs[None, :]).dot(f2.matrix())
    return HeckeElement.from_matrix(f1.carrier, prod, f1.ring)


def identity_kernel(carrier: Complex, ring: Ring | str = ZZ) -> HeckeElement:
    """The diagonal kernel; a unit for convolution only when the carrier is discrete."""
    if carrier.dimension > 0:
        raise MalformedInputError("the diagonal is not a union of product cells on a non-discrete carrier")
    return HeckeElement(carrier, ring, {(s, s): 1 for s in carrier.simplices})


# ---------------------------------------------------------------------------
# finite group actions


def _perm_key(perm: Mapping, verts: Sequence) -> tuple:
    return tuple(perm[v] for v in verts)


class FiniteGroupAction:
    """A finite group of simplicial automorphisms with a distinguished cyclic subgroup.

    ``generators`` and ``varpi`` are vertex permutations (dicts, unmoved
    vertices may be omitted).  The group is the closure of the generators
    together with ``varpi``; ``varpi`` must have prime order, or be the
    identity, in which case the prime ``p`` must be given explicitly.
    """

    def __init__(self, carrier: Complex, generators: Iterable[Mapping], varpi: Mapping | None = None,
                 p: int | None = None):
        self.carrier = carrier
        verts = carrier.vertices
        self._verts = verts
        gens = []
        for g in list(generators) + ([varpi] if varpi is not None else []):
            full = {v: g.get(v, v) for v in verts}
            if set(g) - set(verts):
                raise MalformedInputError("permutation moves unknown vertices")
            if sorted(full.values()) != list(verts):
                raise MalformedInputError("not a permutation of the vertices")
            for s in carrier.simplices:
                if tuple(sorted(full[v] for v in s)) not in carrier:
                    raise MalformedInputError(f"permutation is not simplicial on {s!r}")
            gens.append(_perm_key(full, verts))
        self.generators = tuple(gens[:-1] if varpi is not None else gens)
        ident = tuple(verts)
        pos = {v: i for i, v in enumerate(verts)}
        self._pos = pos
        elements = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    c = self._compose(g, a)
                    if c not in elements:
                        elements.add(c)
                        nxt.append(c)
            frontier = nxt
        self.elements: tuple[tuple, ...] = tuple(sorted(elements, key=lambda e: [pos[x] for x in e]))
        self.identity = ident
        if varpi is not None:
            w = gens[-1]
            self.varpi = w
            powers = [ident]
            cur = w
            while cur != ident:
                powers.append(cur)
                cur = self._compose(w, cur)
            order = len(powers)
            if order == 1:
                if p is None or not is_prime(p):
                    raise MalformedInputError("trivial distinguished element needs an explicit prime p")
                order = p
            elif not is_prime(order):
                raise MalformedInputError(f"distinguished element has order {order}, not a prime")
            elif p is not None and p != order:
                raise MalformedInputError(f"distinguished element has order {order}, not {p}")
            self.p = order
            self.varpi_powers = tuple(powers)
        else:
            self.varpi = ident
            self.p = 1
            self.varpi_powers = (ident,)

    def _compose(self, a: tuple, b: tuple) -> tuple:
        """a ∘ b as vertex-image tuples."""
        pos = self._pos
        return tuple(a[pos[x]] for x in b)

    def inverse(self, a: tuple) -> tuple:
        out = [None] * len(a)
        for i, x in enumerate(a):
            out[self._pos[x]] = self._verts[i]
        return tuple(out)

    def as_dict(self, a: tuple) -> dict:
        return dict(zip(self._verts, a))

    def act(self, a: tuple, s: Simplex) -> Simplex:
        pos = self._pos
        return tuple(sorted(a[pos[v]] for v in s))

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def centralizer(self) -> tuple[tuple, ...]:
        """Z_G(varpi)."""
        w = self.varpi
        return tuple(a for a in self.elements if self._compose(a, w) == self._compose(w, a))

    @cached_property
    def normalizer(self) -> tuple[tuple, ...]:
        """N_G(<varpi>)."""
        sub = set(self.varpi_powers)
        w = self.varpi
        return tuple(a for a in self.elements if self._compose(self._compose(a, w), self.inverse(a)) in sub)

    def varpi_gcomplex(self) -> GComplex:
        if self.p == 1:
            return GComplex(self.carrier, {}, 2)
        return GComplex(self.carrier, self.as_dict(self.varpi), self.p)

    def induced_on(self, sub: Complex, elements: Iterable[tuple]) -> "FiniteGroupAction":
        """The action of the given elements (which must preserve ``sub``) on ``sub``."""
        gens = []
        for a in elements:
            d = self.as_dict(a)
            gens.append({v: d[v] for v in sub.vertices})
        return FiniteGroupAction(sub, gens)


def check_invariance(f: HeckeElement, act: FiniteGroupAction) -> bool:
    """kernel(g s, g t) == kernel(s, t) for all g (checked on generators)."""
    if f.carrier != act.carrier:
        raise MalformedInputError("kernel and action live on different complexes")
    gens = act.generators + ((act.varpi,) if act.p > 1 else ())
    for a in gens:
        for (s, t), c in f.kernel.items():
            if f[(act.act(a, s), act.act(a, t))] != c:
                return False
    return True


def orbit_sum(f: HeckeElement, act: FiniteGroupAction) -> HeckeElement:
    out: dict = defaultdict(int)
    for a in act.elements:
        for (s, t), c in f.kernel.items():
            out[(act.act(a, s), act.act(a, t))] += c
    return HeckeElement(f.carrier, f.ring, out)


def pair_orbits(act: FiniteGroupAction) -> list[list[tuple[Simplex, Simplex]]]:
    simp = act.carrier.simplices
    seen, out = set(), []
    for s, t in product(simp, simp):
        if (s, t) in seen:
            continue
        orb = sorted({(act.act(a, s), act.act(a, t)) for a in act.elements},
                     key=lambda st: (act.carrier.index[st[0]], act.carrier.index[st[1]]))
        seen.update(orb)
        out.append(orb)
    return out


def smith_hecke(f: HeckeElement, act: FiniteGroupAction) -> HeckeElement:
    """Restriction of a G-invariant F_p kernel to pairs of varpi-fixed simplices.

    The result is checked to be invariant under the induced actions of the
    centralizer and of the normalizer of varpi on the fixed subcomplex.
    """
    if act.p == 1:
        raise MalformedInputError("no distinguished element of prime order")
    if f.ring.p != act.p:
        raise MalformedInputError(f"Smith operator needs F_{act.p} coefficients, got {f.ring.name}")
    if not check_invariance(f, act):
        raise NotInvariantError("kernel is not invariant under the group")
    fixed = fixed_subcomplex(act.varpi_gcomplex())
    out = f.restrict(fixed)
    for name, elts in (("centralizer", act.centralizer), ("normalizer", act.normalizer)):
        induced = act.induced_on(fixed, elts) if len(fixed) else None
        if induced is not None and not check_invariance(out, induced):
            raise InternalConsistencyError(f"Smith image is not invariant under the {name}")
    return out


# ---------------------------------------------------------------------------
# group algebras


class FiniteGroup:
    """A finite group given by its multiplication table on 0..n-1 (0 is the identity)."""

    def __init__(self, table, names: Sequence[str] | None = None):
        t = np.asarray(table, dtype=np.int64)
        n = t.shape[0]
        if t.shape != (n, n) or n == 0:
            raise MalformedInputError("multiplication table must be square and nonempty")
        if t.min() < 0 or t.max() >= n:
            raise MalformedInputError("table entries out of range")
        if not (np.array_equal(t[0], np.arange(n)) and np.array_equal(t[:, 0], np.arange(n))):
            raise MalformedInputError("element 0 is not a two-sided identity")
        for row in t:
            if len(set(row.tolist())) != n:
                raise MalformedInputError("table is not a Latin square (inverses fail)")
        # associativity: (ab)c == a(bc)
        if not np.array_equal(t[t, :], t[:, t]):
            raise MalformedInputError("multiplication is not associative")
        self.table = t
        self.n = n
        self.inv = np.array([int(np.nonzero(t[a] == 0)[0][0]) for a in range(n)])
        self.names = list(names) if names is not None else [str(i) for i in range(n)]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @classmethod
    def from_permutations(cls, generators: Sequence[Sequence[int]]) -> "FiniteGroup":
        """Closure of permutations of 0..m-1 (given as image lists)."""
        gens = [tuple(g) for g in generators]
        m = len(gens[0]) if gens else 1
        ident = tuple(range(m))
        elems = [ident]
        seen = {ident}
        i = 0
        while i < len(elems):
            a = elems[i]
            for g in gens:
                c = tuple(g[a[k]] for k in range(m))
                if c not in seen:
                    seen.add(c)
                    elems.append(c)
            i += 1
        pos = {e: k for k, e in enumerate(elems)}
        table = [[pos[tuple(a[b[k]] for k in range(m))] for b in elems] for a in elems]
        return cls(table)


def _cyclic(n):
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)])


def _product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    n = g.n * h.n
    table = [[g.mul(a // h.n, b // h.n) * h.n + h.mul(a % h.n, b % h.n) for b in range(n)] for a in range(n)]
    return FiniteGroup(table)


def _dihedral(n):
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    return FiniteGroup.from_permutations([rot, ref])


def _quaternion():
    # elements (sign, unit) with units 1, i, j, k
    mult = {
        (1, 1): (1, 1), (1, 2): (1, 2), (1, 3): (1, 3), (1, 4): (1, 4),
        (2, 1): (1, 2), (2, 2): (-1, 1), (2, 3): (1, 4), (2, 4): (-1, 3),
        (3, 1): (1, 3), (3, 2): (-1, 4), (3, 3): (-1, 1), (3, 4): (1, 2),
        (4, 1): (1, 4), (4, 2): (1, 3), (4, 3): (-1, 2), (4, 4): (-1, 1),
    }
    elems = [(s, u) for s in (1, -1) for u in (1, 2, 3, 4)]
    pos = {e: k for k, e in enumerate(elems)}
    table = []
    for s1, u1 in elems:
        row = []
        for s2, u2 in elems:
            s, u = mult[(u1, u2)]
            row.append(pos[(s1 * s2 * s, u)])
        table.append(row)
    return FiniteGroup(table)


def small_groups(order: int) -> dict[str, FiniteGroup]:
    """All groups of the given order, up to isomorphism, for orders 1..8."""
    c = _cyclic
    groups = {
        1: {"C1": c(1)},
        2: {"C2": c(2)},
        3: {"C3": c(3)},
        4: {"C4": c(4), "C2xC2": _product(c(2), c(2))},
        5: {"C5": c(5)},
        6: {"C6": c(6), "S3": _dihedral(3)},
        7: {"C7": c(7)},
        8: {
            "C8": c(8),
            "C4xC2": _product(c(4), c(2)),
            "C2xC2xC2": _product(_product(c(2), c(2)), c(2)),
            "D4": _dihedral(4),
            "Q8": _quaternion(),
        },
    }
    if order not in groups:
        raise MalformedInputError(f"no built-in groups of order {order}")
    return groups[order]


class GroupRingBridge:
    """The two identifications of Fun_G(G x G) with the group algebra k[G].

    G acts on the discrete complex X = G by left multiplication.  The first map
    sends f to sum_g f(1, g) g and is a unital ring isomorphism.  The second
    sends f to sum_g f(g, 1) g; it is bijective and reverses products, so it is
    an isomorphism onto the opposite algebra (equivalently, the first map
    composed with the inversion anti-automorphism).
    """

    def __init__(self, group: FiniteGroup, ring: Ring | str = ZZ):
        self.group = group
        self.ring = Ring.parse(ring)
        self.carrier = build_complex([[f"g{i}"] for i in range(group.n)])
        self._label = [(f"g{i}",) for i in range(group.n)]
        self.action = FiniteGroupAction(
            self.carrier,
            [{f"g{x}": f"g{group.mul(a, x)}" for x in range(group.n)} for a in range(group.n)],
        )

    # k[G] as coefficient vectors indexed by group elements
    def algebra_mul(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        out = [0] * self.group.n
        for x, ax in enumerate(a):
            if ax:
                for y, by in enumerate(b):
                    if by:
                        z = self.group.mul(x, y)
                        out[z] += ax * by
        return [self.ring.reduce(c) for c in out]

    def to_algebra(self, f: HeckeElement) -> list[int]:
        e = self._label[0]
        return [f[(e, self._label[g])] for g in range(self.group.n)]

    def to_algebra_second(self, f: HeckeElement) -> list[int]:
        e = self._label[0]
        return [f[(self._label[g], e)] for g in range(self.group.n)]

    def from_algebra(self, a: Sequence[int]) -> HeckeElement:
        """f(x, y) = a(x^{-1} y), the unique invariant kernel with f(1, g) = a(g)."""
        grp = self.group
        kernel = {}
        for x in range(grp.n):
            for y in range(grp.n):
                c = a[grp.mul(int(grp.inv[x]), y)]
                if c:
                    kernel[(self._label[x], self._label[y])] = c
        return HeckeElement(self.carrier, self.ring, kernel)

    def basis_kernel(self, g: int) -> HeckeElement:
        vec = [0] * self.group.n
        vec[g] = 1
        return self.from_algebra(vec)

    def verify(self) -> dict[str, bool]:
        """Exhaustive check on the basis: bijectivity, unit, multiplicativity, invariance."""
        n = self.group.n
        basis = [self.basis_kernel(g) for g in range(n)]
        unit = identity_kernel(self.carrier, self.ring)
        e0 = [1] + [0] * (n - 1)
        report = {
            "invariant": all(check_invariance(b, self.action) for b in basis),
            "inverse": all(self.to_algebra(b) == [int(i == g) for i in range(n)] for g, b in enumerate(basis))
            and all(self.from_algebra(self.to_algebra(b)) == b for b in basis),
            "unit": self.to_algebra(unit) == e0 and self.from_algebra(e0) == unit,
            "multiplicative": True,
            "second_antimultiplicative": True,
        }
        for g in range(n):
            for h in range(n):
                prod = convolve(basis[g], basis[h])
                if self.to_algebra(prod) != self.algebra_mul(self.to_algebra(basis[g]), self.to_algebra(basis[h])):
                    report["multiplicative"] = False
                second = self.algebra_mul(self.to_algebra_second(basis[h]), self.to_algebra_second(basis[g]))
                if self.to_algebra_second(prod) != second:
                    report["second_antimultiplicative"] = False
        return report

    def structure_constants(self) -> np.ndarray:
        """T[g, h, k] = coefficient of basis k in basis_g * basis_h, computed by convolution."""
        n = self.group.n
        basis = [self.basis_kernel(g) for g in range(n)]
        out = np.zeros((n, n, n), dtype=np.int64)
        for g in range(n):
            for h in range(n):
                out[g, h] = self.to_algebra(convolve(basis[g], basis[h]))
        return out


def group_ring_bridge(group: FiniteGroup, ring: Ring | str = ZZ) -> GroupRingBridge:
    return GroupRingBridge(group, ring)


# ---------------------------------------------------------------------------
# random instances


def random_kernel(rng, carrier: Complex, ring: Ring | str = ZZ, density: float = 0.5) -> HeckeElement:
    ring = Ring.parse(ring)
    lo, hi = (0, ring.p - 1) if ring.p else (-2, 2)
    simp = carrier.simplices
    return HeckeElement(
        carrier, ring, {(s, t): rng.randint(lo, hi) for s in simp for t in simp if rng.random() < density}
    )


def random_invariant_kernel(rng, act: FiniteGroupAction, ring: Ring | str | None = None,
                            density: float = 0.6) -> HeckeElement:
    ring = Ring.parse(ring) if ring is not None else Ring(act.p)
    lo, hi = (0, ring.p - 1) if ring.p else (-2, 2)
    kernel = {}
    for orb in pair_orbits(act):
        if rng.random() < density:
            c = rng.randint(lo, hi)
            for st in orb:
                kernel[st] = c
    return HeckeElement(act.carrier, ring, kernel)


def polygon_action(n: int, varpi: str = "reflection", subdivide: bool = False) -> FiniteGroupAction:
    """Dihedral symmetry of an n-gon; varpi a vertex reflection (p = 2) or a rotation of prime order."""
    verts = [f"c{i}" for i in range(n)]
    c = build_complex([[verts[i], verts[(i + 1) % n]] for i in range(n)])
    rot = {verts[i]: verts[(i + 1) % n] for i in range(n)}
    ref = {verts[i]: verts[(-i) % n] for i in range(n)}
    if varpi == "reflection":
        w = ref
    else:
        q = int(varpi)
        if n % q:
            raise MalformedInputError(f"rotation of order {q} needs {q} | n")
        w = {verts[i]: verts[(i + n // q) % n] for i in range(n)}
    return FiniteGroupAction(c, [rot, ref], w)


def random_hecke_action(rng, max_simplices: int = 30) -> FiniteGroupAction:
    """A group action with a regular distinguished element of prime order.

    Mixes dihedral polygons (where the normalizer is larger than the
    centralizer) with random regular cyclic actions of prime order.
    """
    from .simplicial.generators import random_regular_gcomplex

    if rng.random() < 0.4:
        n = rng.choice([4, 6, 8, 10, 12, 6, 9, 15])
        if n % 2 == 0 and rng.random() < 0.5:
            return polygon_action(n, "reflection")
        q = rng.choice([d for d in (2, 3, 5) if n % d == 0])
        return polygon_action(n, str(q))
    p = rng.choice([2, 3, 5])
    g = random_regular_gcomplex(rng, p=p, order=p, max_simplices=max_simplices)
    return FiniteGroupAction(g.base, [], g.generator, p=p)
