"""Coefficient rings and small finite fields.

`Ring` is the scalar ring of constructible functions and kernels: either the
integers or a prime field F_p.  `FiniteField` is table-driven arithmetic for
the small fields used by the matrix-group and Tate computations (F_p for
small p, and F_4).  Matrices over a `FiniteField` are numpy integer arrays
whose entries are field elements encoded as ``0 .. q-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import MalformedInputError, RingMismatchError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power_base(n: int) -> int | None:
    """Return p if n = p**k with k >= 1, else None."""
    if n < 2:
        return None
    p = 2
    while n % p:
        p += 1
    m = n
    while m % p == 0:
        m //= p
    return p if m == 1 else None


@dataclass(frozen=True)
class Ring:
    """The integers (``p == 0``) or the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not is_prime(self.p):
            raise MalformedInputError(f"F_{self.p}: {self.p} is not prime")

    @property
    def name(self) -> str:
        return "Z" if self.p == 0 else f"F{self.p}"

    @property
    def is_field(self) -> bool:
        return self.p != 0

    def reduce(self, x: int) -> int:
        return x % self.p if self.p else x

    def __repr__(self):
        return f"Ring({self.name})"

    @classmethod
    def parse(cls, text: "str | Ring") -> "Ring":
        if isinstance(text, Ring):
            return text
        t = str(text).strip()
        if t in ("Z", "ZZ"):
            return cls(0)
        if t.startswith("F") and t[1:].isdigit():
            return cls(int(t[1:]))
        raise MalformedInputError(f"unknown ring {text!r}; expected 'Z' or 'F<p>'")


ZZ = Ring(0)


def GF(p: int) -> Ring:
    return Ring(p)


def require_same_ring(a: Ring, b: Ring) -> Ring:
    if a != b:
        raise RingMismatchError(f"ring mismatch: {a.name} vs {b.name}")
    return a


# ---------------------------------------------------------------------------
# finite fields with explicit tables


class FiniteField:
    """Arithmetic in F_q for q prime or q = 4 (and q = 8), via lookup tables.

    F_4 is F_2[w]/(w^2 + w + 1) with elements encoded as bit polynomials:
    0, 1, w = 2, w + 1 = 3.
    """

    _MODULI = {4: 0b111, 8: 0b1011}

    def __init__(self, q: int):
        self.q = q
        if is_prime(q):
            self.p = q
            a = np.arange(q)
            self.ADD = (a[:, None] + a[None, :]) % q
            self.MUL = (a[:, None] * a[None, :]) % q
        elif q in self._MODULI:
            self.p = 2
            mod = self._MODULI[q]
            deg = q.bit_length() - 1
            a = np.arange(q)
            self.ADD = a[:, None] ^ a[None, :]
            mul = np.zeros((q, q), dtype=np.int64)
            for x in range(q):
                for y in range(q):
                    r = 0
                    for bit in range(deg):
                        if (y >> bit) & 1:
                            r ^= x << bit
                    for bit in range(2 * deg - 2, deg - 1, -1):
                        if (r >> bit) & 1:
                            r ^= mod << (bit - deg)
                    mul[x, y] = r
            self.MUL = mul
        else:
            raise MalformedInputError(f"unsupported field size {q}")
        self.ADD = np.asarray(self.ADD, dtype=np.int64)
        self.MUL = np.asarray(self.MUL, dtype=np.int64)
        self.NEG = np.array([int(np.nonzero(self.ADD[x] == 0)[0][0]) for x in range(q)])
        inv = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            inv[x] = int(np.nonzero(self.MUL[x] == 1)[0][0])
        self.INV = inv
        self.SUB = self.ADD[:, self.NEG]

    def __repr__(self):
        return f"FiniteField({self.q})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and other.q == self.q

    def __hash__(self):
        return hash(("FiniteField", self.q))

    @property
    def elements(self) -> range:
        return range(self.q)

    # scalar/elementwise helpers ------------------------------------------------

    def add(self, a, b):
        return self.ADD[a, b]

    def sub(self, a, b):
        return self.SUB[a, b]

    def mul(self, a, b):
        return self.MUL[a, b]

    def neg(self, a):
        return self.NEG[a]

    def from_int(self, x: int) -> int:
        """Image of an integer under Z -> F_q (only meaningful mod p)."""
        return x % self.p

    # matrices -----------------------------------------------------------------

    def asarray(self, m) -> np.ndarray:
        a = np.asarray(m, dtype=np.int64)
        if a.size and (a.min() < 0 or a.max() >= self.q):
            if self.q == self.p:
                a = a % self.p
            else:
                raise MalformedInputError(f"entries outside F_{self.q}")
        return a

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.shape[-1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        if self.q == self.p:
            return (a @ b) % self.p
        if a.ndim == 1:
            return self.matmul(a[None, :], b)[0]
        if b.ndim == 1:
            return self.matmul(a, b[:, None])[:, 0]
        if a.shape[1] == 0:
            return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        prods = self.MUL[a[:, :, None], b[None, :, :]]
        return np.bitwise_xor.reduce(prods, axis=1)

    def madd(self, a, b):
        return self.ADD[np.asarray(a), np.asarray(b)]

    def msub(self, a, b):
        return self.SUB[np.asarray(a), np.asarray(b)]

    def scale(self, c: int, a):
        return self.MUL[c, np.asarray(a)]

    def kron(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.MUL[a[:, None, :, None], b[None, :, None, :]]
        return out.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])

    def rref(self, m) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form and pivot columns."""
        a = np.array(m, dtype=np.int64, copy=True)
        if a.ndim != 2:
            raise ValueError("rref expects a matrix")
        rows, cols = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(a[r:, c])[0]
            if nz.size == 0:
                continue
            k = r + int(nz[0])
            if k != r:
                a[[r, k]] = a[[k, r]]
            a[r] = self.MUL[self.INV[a[r, c]], a[r]]
            col = a[:, c].copy()
            col[r] = 0
            mask = np.nonzero(col)[0]
            if mask.size:
                factors = col[mask]
                a[mask] = self.SUB[a[mask], self.MUL[factors[:, None], a[r][None, :]]]
            pivots.append(c)
            r += 1
        return a, pivots

    def rank(self, m) -> int:
        m = np.asarray(m)
        if m.size == 0:
            return 0
        return len(self.rref(m)[1])

    def nullspace(self, m) -> np.ndarray:
        """Basis of {x : m x = 0} as the rows of the returned array."""
        m = np.asarray(m, dtype=np.int64)
        cols = m.shape[1]
        if m.shape[0] == 0:
            return np.eye(cols, dtype=np.int64)
        r, piv = self.rref(m)
        free = [c for c in range(cols) if c not in piv]
        basis = []
        for f in free:
            v = np.zeros(cols, dtype=np.int64)
            v[f] = 1
            for i, pc in enumerate(piv):
                v[pc] = self.NEG[r[i, f]]
            basis.append(v)
        return np.array(basis, dtype=np.int64).reshape(len(basis), cols)

    def inv(self, m) -> np.ndarray:
        m = np.asarray(m, dtype=np.int64)
        n = m.shape[0]
        aug = np.concatenate([m, np.eye(n, dtype=np.int64)], axis=1)
        r, piv = self.rref(aug)
        if piv[:n] != list(range(n)):
            raise ValueError("matrix is singular")
        return r[:, n:]

    def is_invertible(self, m) -> bool:
        m = np.asarray(m)
        return m.shape[0] == m.shape[1] and self.rank(m) == m.shape[0]

    def matpow(self, m, k: int) -> np.ndarray:
        m = np.asarray(m, dtype=np.int64)
        result = np.eye(m.shape[0], dtype=np.int64)
        base = m
        while k:
            if k & 1:
                result = self.matmul(result, base)
            base = self.matmul(base, base)
            k >>= 1
        return result


@lru_cache(maxsize=None)
def finite_field(q: int) -> FiniteField:
    return FiniteField(q)
