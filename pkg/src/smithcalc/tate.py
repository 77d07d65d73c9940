"""Bounded complexes of F_p[Z/p]-modules and their Tate invariants.

A module is F_p^n with the generator acting by an n x n matrix of order
dividing p.  Complexes are cohomologically graded: d^i maps degree i to
degree i + 1.  "Perfect" means Tate-acyclic on the stable window, which is
the computable stand-in for being zero in the quotient by perfect complexes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import MalformedInputError, NonRegularActionError
from .fields import finite_field, is_prime
from .simplicial.action import GComplex, fixed_subcomplex
from .simplicial.complex import Complex


def _empty(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


class TateComplex:
    """Bounded complex of finite-dimensional F_p[Z/p]-modules."""

    def __init__(self, p: int, degrees: Mapping[int, tuple], differentials: Mapping[int, object] | None = None,
                 check: bool = True):
        if not is_prime(p):
            raise MalformedInputError(f"{p} is not prime")
        self.p = p
        self.F = finite_field(p)
        mods = {}
        for i, (dim, action) in degrees.items():
            i, dim = int(i), int(dim)
            if dim < 0:
                raise MalformedInputError(f"negative dimension in degree {i}")
            if dim == 0:
                continue
            a = self.F.asarray(action if action is not None else np.eye(dim, dtype=np.int64))
            if a.shape != (dim, dim):
                raise MalformedInputError(f"action in degree {i} has shape {a.shape}, expected {(dim, dim)}")
            mods[i] = a
        self.actions: dict[int, np.ndarray] = dict(sorted(mods.items()))
        diffs = {}
        for i, d in (differentials or {}).items():
            i = int(i)
            d = self.F.asarray(d).reshape(self.dim(i + 1), self.dim(i)) if np.size(d) else \
                _empty(self.dim(i + 1), self.dim(i))
            if d.shape != (self.dim(i + 1), self.dim(i)):
                raise MalformedInputError(f"differential d^{i} has the wrong shape")
            if d.size and d.any():
                diffs[i] = d
        self.differentials: dict[int, np.ndarray] = dict(sorted(diffs.items()))
        if check:
            self.validate()

    # structure ------------------------------------------------------------------

    def dim(self, i: int) -> int:
        a = self.actions.get(i)
        return 0 if a is None else a.shape[0]

    def action(self, i: int) -> np.ndarray:
        return self.actions.get(i, _empty(0, 0))

    def d(self, i: int) -> np.ndarray:
        return self.differentials.get(i, _empty(self.dim(i + 1), self.dim(i)))

    @property
    def support(self) -> list[int]:
        return sorted(self.actions)

    @property
    def bounds(self) -> tuple[int, int]:
        s = self.support
        return (s[0], s[-1]) if s else (0, 0)

    @property
    def amplitude(self) -> int:
        lo, hi = self.bounds
        return hi - lo

    def validate(self):
        F = self.F
        for i, a in self.actions.items():
            if not np.array_equal(F.matpow(a, self.p), F.eye(a.shape[0])):
                raise MalformedInputError(f"action in degree {i} does not have order dividing {self.p}")
            if not F.is_invertible(a):
                raise MalformedInputError(f"action in degree {i} is singular")
        for i, d in self.differentials.items():
            if not np.array_equal(F.matmul(d, self.action(i)), F.matmul(self.action(i + 1), d)):
                raise MalformedInputError(f"d^{i} does not commute with the action")
            nxt = self.d(i + 1)
            if nxt.size and d.size and F.matmul(nxt, d).any():
                raise MalformedInputError(f"d^{i + 1} d^{i} != 0")

    def __repr__(self):
        dims = ", ".join(f"{i}: {self.dim(i)}" for i in self.support)
        return f"TateComplex(p={self.p}, {{{dims}}})"

    def __eq__(self, other):
        if not isinstance(other, TateComplex) or other.p != self.p or other.support != self.support:
            return False
        return all(np.array_equal(self.actions[i], other.actions[i]) for i in self.support) and \
            set(self.differentials) == set(other.differentials) and \
            all(np.array_equal(self.differentials[i], other.differentials[i]) for i in self.differentials)

    # group-algebra elements on a degree ------------------------------------------

    def norm(self, i: int) -> np.ndarray:
        """N = 1 + g + ... + g^(p-1)."""
        F, a = self.F, self.action(i)
        out = F.zeros(a.shape)
        power = F.eye(a.shape[0])
        for _ in range(self.p):
            out = F.madd(out, power)
            power = F.matmul(power, a)
        return out

    def augmentation_ideal(self, i: int) -> np.ndarray:
        """T = g - 1."""
        return self.F.msub(self.action(i), self.F.eye(self.dim(i)))


# ---------------------------------------------------------------------------
# constructors


def trivial_module(p: int, degree: int = 0, dim: int = 1) -> TateComplex:
    return TateComplex(p, {degree: (dim, np.eye(dim, dtype=np.int64))})


def regular_action(p: int) -> np.ndarray:
    """Cyclic shift e_k -> e_{k+1} on F_p[Z/p]."""
    a = np.zeros((p, p), dtype=np.int64)
    for k in range(p):
        a[(k + 1) % p, k] = 1
    return a


def free_module(p: int, degree: int = 0, rank: int = 1) -> TateComplex:
    return TateComplex(p, {degree: (p * rank, np.kron(np.eye(rank, dtype=np.int64), regular_action(p)))})


def unit(p: int) -> TateComplex:
    return trivial_module(p, 0)


def direct_sum(a: TateComplex, b: TateComplex) -> TateComplex:
    _same_p(a, b)
    degrees, diffs = {}, {}
    for i in sorted(set(a.support) | set(b.support)):
        m = _block(a.action(i), b.action(i))
        degrees[i] = (m.shape[0], m)
    for i in sorted(set(a.differentials) | set(b.differentials)):
        diffs[i] = _block(a.d(i), b.d(i))
    return TateComplex(a.p, degrees, diffs, check=False)


def _block(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    out = np.zeros((x.shape[0] + y.shape[0], x.shape[1] + y.shape[1]), dtype=np.int64)
    out[: x.shape[0], : x.shape[1]] = x
    out[x.shape[0]:, x.shape[1]:] = y
    return out


def _same_p(a: TateComplex, b: TateComplex):
    if a.p != b.p:
        raise MalformedInputError(f"complexes over different primes {a.p} and {b.p}")


def shift(m: TateComplex, k: int) -> TateComplex:
    """M[k]: degree i holds M^{i+k}; the differential picks up (-1)^k."""
    F = m.F
    degrees = {i - k: (m.dim(i), a) for i, a in m.actions.items()}
    sign = 1 if k % 2 == 0 else m.p - 1
    diffs = {i - k: F.scale(sign, d) for i, d in m.differentials.items()}
    return TateComplex(m.p, degrees, diffs, check=False)


def tensor(a: TateComplex, b: TateComplex) -> TateComplex:
    """Tensor product over F_p with the diagonal action."""
    _same_p(a, b)
    F = a.F
    pieces: dict[int, list[tuple[int, int]]] = {}
    for i in a.support:
        for j in b.support:
            pieces.setdefault(i + j, []).append((i, j))
    offsets: dict[tuple[int, int], int] = {}
    degrees = {}
    for n, lst in sorted(pieces.items()):
        off = 0
        blocks = []
        for i, j in lst:
            offsets[(i, j)] = off
            off += a.dim(i) * b.dim(j)
            blocks.append(F.kron(a.action(i), b.action(j)))
        act = np.zeros((off, off), dtype=np.int64)
        pos = 0
        for blk in blocks:
            act[pos:pos + blk.shape[0], pos:pos + blk.shape[0]] = blk
            pos += blk.shape[0]
        degrees[n] = (off, act)
    diffs = {}
    for n, lst in pieces.items():
        if n + 1 not in degrees:
            continue
        d = np.zeros((degrees[n + 1][0], degrees[n][0]), dtype=np.int64)
        for i, j in lst:
            src = slice(offsets[(i, j)], offsets[(i, j)] + a.dim(i) * b.dim(j))
            if (i + 1, j) in offsets and i in a.differentials:
                tgt = offsets[(i + 1, j)]
                blk = F.kron(a.d(i), F.eye(b.dim(j)))
                d[tgt:tgt + blk.shape[0], src] = F.madd(d[tgt:tgt + blk.shape[0], src], blk)
            if (i, j + 1) in offsets and j in b.differentials:
                tgt = offsets[(i, j + 1)]
                blk = F.kron(F.eye(a.dim(i)), b.d(j))
                if i % 2:
                    blk = F.scale(a.p - 1, blk)
                d[tgt:tgt + blk.shape[0], src] = F.madd(d[tgt:tgt + blk.shape[0], src], blk)
        diffs[n] = d
    return TateComplex(a.p, degrees, diffs, check=False)


def dual(m: TateComplex) -> TateComplex:
    """Degreewise dual: (M^*)^i = (M^{-i})^*, contragredient action, transposed differential."""
    F = m.F
    degrees = {-i: (m.dim(i), F.inv(a).T) for i, a in m.actions.items()}
    diffs = {-i - 1: d.T.copy() for i, d in m.differentials.items()}
    return TateComplex(m.p, degrees, diffs, check=False)


@dataclass
class ChainMap:
    """Equivariant chain map; ``maps[i]`` sends source degree i to target degree i."""

    source: TateComplex
    target: TateComplex
    maps: dict = field(default_factory=dict)

    def __post_init__(self):
        _same_p(self.source, self.target)
        F = self.source.F
        clean = {}
        for i, m in self.maps.items():
            m = F.asarray(m).reshape(self.target.dim(i), self.source.dim(i))
            if m.any():
                clean[int(i)] = m
        self.maps = clean
        for i in set(self.source.support) | set(self.target.support):
            f = self.at(i)
            if not np.array_equal(F.matmul(f, self.source.action(i)), F.matmul(self.target.action(i), f)):
                raise MalformedInputError(f"map in degree {i} is not equivariant")
            lhs = F.matmul(self.target.d(i), f)
            rhs = F.matmul(self.at(i + 1), self.source.d(i))
            if not np.array_equal(lhs, rhs):
                raise MalformedInputError(f"map does not commute with d in degree {i}")

    def at(self, i: int) -> np.ndarray:
        return self.maps.get(i, _empty(self.target.dim(i), self.source.dim(i)))


def cone(f: ChainMap) -> TateComplex:
    """C^i = A^{i+1} + B^i with d(a, b) = (-d a, f a + d b)."""
    a, b = f.source, f.target
    F = a.F
    degs = sorted({i - 1 for i in a.support} | set(b.support))
    degrees = {i: (a.dim(i + 1) + b.dim(i), _block(a.action(i + 1), b.action(i))) for i in degs}
    diffs = {}
    for i in degs:
        if i + 1 not in degrees:
            continue
        n_a1, n_b = a.dim(i + 1), b.dim(i)
        n_a2, n_b1 = a.dim(i + 2), b.dim(i + 1)
        d = np.zeros((n_a2 + n_b1, n_a1 + n_b), dtype=np.int64)
        d[:n_a2, :n_a1] = F.scale(a.p - 1, a.d(i + 1))
        d[n_a2:, :n_a1] = f.at(i + 1)
        d[n_a2:, n_a1:] = b.d(i)
        diffs[i] = d
    return TateComplex(a.p, degrees, diffs, check=False)


# ---------------------------------------------------------------------------
# invariants


def chi_mod_p(m: TateComplex) -> int:
    return sum((m.dim(i) if i % 2 == 0 else -m.dim(i)) for i in m.support) % m.p


def cohomology(m: TateComplex) -> dict[int, int]:
    """Ordinary cohomology dimensions over F_p."""
    F = m.F
    out = {}
    for i in m.support:
        ker = m.dim(i) - F.rank(m.d(i))
        im = F.rank(m.d(i - 1)) if m.dim(i - 1) else 0
        if ker - im:
            out[i] = ker - im
    return out


def is_acyclic(m: TateComplex) -> bool:
    return not cohomology(m)


def stable_window(m: TateComplex) -> range:
    """Degrees lo - 2 .. hi + 2: the amplitude plus two full periods."""
    lo, hi = m.bounds
    return range(lo - 2, hi + 3)


def _tate_total(m: TateComplex, n: int):
    """Total-degree n space of Hom(complete resolution, M) as (blocks, offsets).

    Column j carries M^{n-j}; the horizontal map out of column j is T for j
    even and N for j odd.
    """
    lo, hi = m.bounds
    cols = [j for j in range(n - hi, n - lo + 1) if m.dim(n - j)]
    offs, off = {}, 0
    for j in cols:
        offs[j] = off
        off += m.dim(n - j)
    return offs, off


def _tate_differential(m: TateComplex, n: int) -> np.ndarray:
    F = m.F
    src, ns = _tate_total(m, n)
    tgt, nt = _tate_total(m, n + 1)
    d = np.zeros((nt, ns), dtype=np.int64)
    for j, o in src.items():
        i = n - j
        size = m.dim(i)
        h = m.augmentation_ideal(i) if j % 2 == 0 else m.norm(i)
        if j + 1 in tgt:
            t = tgt[j + 1]
            d[t:t + size, o:o + size] = F.madd(d[t:t + size, o:o + size], h)
        if j in tgt and i in m.differentials:
            blk = m.d(i)
            if j % 2:
                blk = F.scale(m.p - 1, blk)
            t = tgt[j]
            d[t:t + blk.shape[0], o:o + size] = F.madd(d[t:t + blk.shape[0], o:o + size], blk)
    return d


def tate_cohomology(m: TateComplex, window: range | None = None) -> dict[int, int]:
    """Dimensions of Tate hypercohomology in each degree of the window."""
    F = m.F
    window = window if window is not None else stable_window(m)
    out = {}
    for n in window:
        _, dim_n = _tate_total(m, n)
        if dim_n == 0:
            out[n] = 0
            continue
        d_out = _tate_differential(m, n)
        d_in = _tate_differential(m, n - 1)
        ker = dim_n - (F.rank(d_out) if d_out.size else 0)
        im = F.rank(d_in) if d_in.size else 0
        out[n] = ker - im
    return out


def is_perfect(m: TateComplex) -> bool:
    """Tate-acyclic on the stable window."""
    return not any(tate_cohomology(m).values())


# ---------------------------------------------------------------------------
# periodicity


def periodic_resolution_piece(p: int, short: bool = False) -> TateComplex:
    """[K -> K[Z/p] -> K[Z/p]] in degrees -2..0 (norm, then g - 1), or [K -> K[Z/p]] in -1..0.

    Followed by the augmentation these are the exact sequences
    0 -> K -> K[Z/p] -> K[Z/p] -> K -> 0 and, for p = 2, 0 -> K -> K[Z/2] -> K -> 0.
    """
    reg = regular_action(p)
    ones = np.ones((p, 1), dtype=np.int64)
    t = (reg - np.eye(p, dtype=np.int64)) % p
    if short:
        if p != 2:
            raise MalformedInputError("the short sequence exists only for p = 2")
        return TateComplex(p, {-1: (1, [[1]]), 0: (p, reg)}, {-1: ones})
    return TateComplex(p, {-2: (1, [[1]]), -1: (p, reg), 0: (p, reg)}, {-2: ones, -1: t})


@dataclass
class PeriodicityWitness:
    """The roof M <- G -> M[k]: the left map is a quasi-isomorphism, the right one has perfect cone."""

    source: TateComplex
    replacement: TateComplex
    quasi_iso: ChainMap
    map: ChainMap
    degree: int

    @property
    def cone(self) -> TateComplex:
        return cone(self.map)

    def verify(self) -> dict:
        return {
            "quasi_isomorphism": is_acyclic(cone(self.quasi_iso)),
            "cone_perfect": is_perfect(self.cone),
            "degree": self.degree,
        }


def periodicity_witness(m: TateComplex, short: bool = False) -> PeriodicityWitness:
    """Witness for M = M[2] (or M = M[1] when p = 2 and ``short``) in the Tate category.

    G = M (x) P with P the resolution piece; G -> M is 1 (x) augmentation and
    G -> M[k] is the identity on the M (x) K summand in the lowest P-degree.
    """
    p = m.p
    piece = periodic_resolution_piece(p, short)
    k = 1 if short else 2
    g = tensor(m, piece)
    # locate the summands M^i (x) P^j inside G^{i+j}, as ordered by tensor()
    q_maps, w_maps = {}, {}
    for n in g.support:
        off = 0
        q = np.zeros((m.dim(n), g.dim(n)), dtype=np.int64)
        w = np.zeros((m.dim(n + k), g.dim(n)), dtype=np.int64)
        for i in m.support:
            j = n - i
            size = m.dim(i) * piece.dim(j)
            if j in piece.support:
                if j == 0:
                    # augmentation on K[Z/p]: every basis vector goes to 1
                    q[:, off:off + size] = np.kron(np.eye(m.dim(i), dtype=np.int64),
                                                   np.ones((1, piece.dim(0)), dtype=np.int64))
                if j == -k:
                    w[:, off:off + size] = np.eye(m.dim(i), dtype=np.int64)
                off += size
        q_maps[n], w_maps[n] = q, w
    quasi = ChainMap(g, m, q_maps)
    target = shift(m, k)
    wit = ChainMap(g, target, w_maps)
    return PeriodicityWitness(m, g, quasi, wit, k)


# ---------------------------------------------------------------------------
# cochains of G-complexes


def _permutation_sign(images: list, target: tuple) -> int:
    perm = [target.index(x) for x in images]
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def equivariant_cochains(g: GComplex, p: int | None = None) -> TateComplex:
    """Simplicial cochains of the base with the induced action of the generator of order p.

    For a group of order p^n the subgroup of order p (generated by
    generator^(p^(n-1))) is used.
    """
    if not g.is_regular:
        raise NonRegularActionError("cochains are only certified for regular actions")
    p = p or g.p
    if p != g.p:
        raise MalformedInputError(f"action has order a power of {g.p}, not {p}")
    step = g.order // p
    perm = g.powers[step]
    c = g.base
    F = finite_field(p)
    degrees, diffs = {}, {}
    top = c.dimension
    for k in range(top + 1):
        simp = c.simplices_of_dim(k)
        idx = {s: i for i, s in enumerate(simp)}
        chain = np.zeros((len(simp), len(simp)), dtype=np.int64)
        for s in simp:
            img = [perm[v] for v in s]
            t = tuple(sorted(img))
            chain[idx[t], idx[s]] = _permutation_sign(img, t) % p
        # cochain action: (g f)(s) = f(g^-1 s), i.e. the inverse transpose
        degrees[k] = (len(simp), F.inv(chain).T.copy())
        if k < top:
            up = c.simplices_of_dim(k + 1)
            delta = np.zeros((len(up), len(simp)), dtype=np.int64)
            for r, t in enumerate(up):
                for pos in range(len(t)):
                    face = t[:pos] + t[pos + 1:]
                    delta[r, idx[face]] = (-1) ** pos % p
            diffs[k] = delta
    return TateComplex(p, degrees, diffs)


@dataclass
class LinkCheck:
    applicable: bool
    perfect: bool | None
    reason: str = ""

    def __bool__(self):
        return bool(self.perfect)


def link_cone_perfection(g: GComplex, v) -> LinkCheck:
    """Stalk of the cone on i^! -> i^* at an isolated fixed vertex: cochains of the link are perfect.

    Only isolated fixed vertices are certified; otherwise the result is not
    applicable.
    """
    if not g.is_regular:
        raise NonRegularActionError("link check needs a regular action")
    if g.generator.get(v, None) != v:
        raise MalformedInputError(f"{v!r} is not a fixed vertex")
    link: Complex = g.base.link(v)
    if len(link) == 0:
        return LinkCheck(False, None, "empty link")
    fixed = fixed_subcomplex(g)
    if any((w,) in fixed for w in link.vertices):
        return LinkCheck(False, None, "link meets the fixed subcomplex")
    lg = g.restrict(link)
    if not lg.is_free():
        return LinkCheck(False, None, "action on the link is not free")
    return LinkCheck(True, is_perfect(equivariant_cochains(lg)))


# ---------------------------------------------------------------------------
# random instances


def jordan_block(p: int, k: int) -> np.ndarray:
    """Action of the generator on F_p[Z/p]/(g - 1)^k, a single Jordan block of size k <= p."""
    if not 1 <= k <= p:
        raise MalformedInputError(f"Jordan block size must be in 1..{p}")
    a = np.eye(k, dtype=np.int64)
    for i in range(k - 1):
        a[i + 1, i] = 1
    return a


def chain_map_space(a: TateComplex, b: TateComplex) -> list[dict]:
    """A basis of all equivariant chain maps a -> b (solving the linear conditions)."""
    _same_p(a, b)
    F = a.F
    p = a.p
    degs = [i for i in sorted(set(a.support) & set(b.support))]
    offs, n = {}, 0
    for i in degs:
        offs[i] = n
        n += b.dim(i) * a.dim(i)
    if n == 0:
        return []
    rows = []
    for i in degs:
        r, c = b.dim(i), a.dim(i)
        # f A - B f = 0
        blk = (np.kron(np.eye(r, dtype=np.int64), a.action(i).T) - np.kron(b.action(i), np.eye(c, dtype=np.int64))) % p
        m = np.zeros((r * c, n), dtype=np.int64)
        m[:, offs[i]:offs[i] + r * c] = blk
        rows.append(m)
    for i in sorted(set(a.support) | set(b.support)):
        # d_B f_i - f_{i+1} d_A = 0, an equation in Hom(A^i, B^{i+1})
        r, c = b.dim(i + 1), a.dim(i)
        if r == 0 or c == 0:
            continue
        m = np.zeros((r * c, n), dtype=np.int64)
        if i in offs:
            m[:, offs[i]:offs[i] + b.dim(i) * c] = np.kron(b.d(i), np.eye(c, dtype=np.int64))
        if i + 1 in offs:
            m[:, offs[i + 1]:offs[i + 1] + r * a.dim(i + 1)] -= np.kron(np.eye(r, dtype=np.int64), a.d(i).T)
        rows.append(m % p)
    null = F.nullspace(np.vstack(rows))
    out = []
    for vec in null:
        maps = {i: vec[offs[i]:offs[i] + b.dim(i) * a.dim(i)].reshape(b.dim(i), a.dim(i)) for i in degs}
        out.append(maps)
    return out


def random_chain_map(rng, a: TateComplex, b: TateComplex) -> ChainMap:
    basis = chain_map_space(a, b)
    maps: dict = {}
    for vec in basis:
        c = rng.randrange(a.p)
        for i, m in vec.items():
            maps[i] = (maps.get(i, 0) + c * m) % a.p
    return ChainMap(a, b, maps)


def random_module(rng, p: int, max_blocks: int = 3, free_weight: float = 0.3) -> np.ndarray:
    blocks = []
    for _ in range(rng.randint(1, max_blocks)):
        k = p if rng.random() < free_weight else rng.randint(1, p)
        blocks.append(jordan_block(p, k))
    out = blocks[0]
    for blk in blocks[1:]:
        out = _block(out, blk)
    return out


def random_tate_complex(rng, p: int | None = None, max_len: int = 3) -> TateComplex:
    """Modules in consecutive degrees, glued by cones of random chain maps."""
    p = p or rng.choice([2, 3, 5])
    lo = rng.randint(-2, 1)
    m = TateComplex(p, {lo: (0, None)})
    for k in range(rng.randint(1, max_len)):
        a = random_module(rng, p)
        piece = TateComplex(p, {lo + k: (a.shape[0], a)})
        if m.support and rng.random() < 0.7:
            f = random_chain_map(rng, shift(piece, 1), m)
            m = cone(f)
        else:
            m = direct_sum(m, piece)
    return m
