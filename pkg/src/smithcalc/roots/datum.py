"""Based root data of semisimple groups.

Both lattices are Z^r and the pairing <x, y> is the dot product.  A datum is
fixed by its simple roots (rows, in X^* coordinates) and simple coroots (rows,
in X_* coordinates), with ``cartan[i][j] = <alpha_j, alpha_i^vee>``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import factorial, gcd

from ..errors import MalformedInputError
from .cartan import cartan_matrix, classify, components, symmetrizer, type_label

Vec = tuple


def dot(x, y):
    return sum(a * b for a, b in zip(x, y))


def mat_inverse(m) -> list[list[Fraction]]:
    """Exact inverse of a square rational matrix."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise MalformedInputError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def determinant(m) -> int:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return int(det)


def vec_mat(v, m) -> tuple:
    """Row vector times matrix."""
    return tuple(sum(v[k] * m[k][j] for k in range(len(v))) for j in range(len(m[0])))


def _integral(v) -> tuple[int, ...]:
    out = []
    for x in v:
        x = Fraction(x)
        if x.denominator != 1:
            raise MalformedInputError("vector is not integral in the given lattice")
        out.append(int(x))
    return tuple(out)


_WEYL_ORDER = {"G2": 12, "F4": 1152, "E6": 51840, "E7": 2903040, "E8": 696729600}


def weyl_group_order(label: str) -> int:
    order = 1
    for part in label.split("x"):
        if not part:
            continue
        kind, n = part[0], int(part[1:])
        if part in _WEYL_ORDER:
            order *= _WEYL_ORDER[part]
        elif kind == "A":
            order *= factorial(n + 1)
        elif kind in "BC":
            order *= 2 ** n * factorial(n)
        elif kind == "D":
            order *= 2 ** (n - 1) * factorial(n)
        else:
            raise MalformedInputError(f"unknown type {part}")
    return order


class RootDatum:
    """Semisimple root datum of rank r with X^* = X_* = Z^r."""

    def __init__(self, simple_roots, simple_coroots, isogeny: str = "custom"):
        sr = tuple(tuple(int(x) for x in row) for row in simple_roots)
        sc = tuple(tuple(int(x) for x in row) for row in simple_coroots)
        r = len(sr)
        if r == 0 or len(sc) != r or any(len(row) != r for row in sr + sc):
            raise MalformedInputError("need r simple roots and r simple coroots in Z^r")
        self.rank = r
        self.simple_roots = sr
        self.simple_coroots = sc
        self.cartan = tuple(tuple(dot(sc[i], sr[j]) for j in range(r)) for i in range(r))
        for i in range(r):
            if self.cartan[i][i] != 2:
                raise MalformedInputError("a simple coroot does not pair to 2 with its root")
        if determinant(sr) == 0 or determinant(sc) == 0:
            raise MalformedInputError("simple roots or coroots are linearly dependent")
        self.type = type_label(self.cartan)
        self.isogeny = isogeny

    def __eq__(self, other):
        return (isinstance(other, RootDatum) and self.simple_roots == other.simple_roots
                and self.simple_coroots == other.simple_coroots)

    def __hash__(self):
        return hash((self.simple_roots, self.simple_coroots))

    def __repr__(self):
        return f"RootDatum({self.type}, {self.isogeny})"

    # roots ----------------------------------------------------------------------

    def pair(self, x, y) -> int:
        return dot(x, y)

    def reflect(self, i: int, x) -> Vec:
        """Simple reflection s_i on X^*."""
        k = dot(x, self.simple_coroots[i])
        if not k:
            return tuple(x)
        a = self.simple_roots[i]
        return tuple(xi - k * ai for xi, ai in zip(x, a))

    def coreflect(self, i: int, y) -> Vec:
        """Simple reflection s_i on X_*."""
        k = dot(self.simple_roots[i], y)
        if not k:
            return tuple(y)
        a = self.simple_coroots[i]
        return tuple(yi - k * ai for yi, ai in zip(y, a))

    @cached_property
    def _root_table(self) -> dict:
        """root -> (coroot, coefficients in the simple roots), by reflection closure."""
        r = self.rank
        table = {}
        frontier = []
        for i in range(r):
            e = tuple(int(i == j) for j in range(r))
            item = (self.simple_roots[i], self.simple_coroots[i], e)
            table[item[0]] = item[1:]
            frontier.append(item)
        while frontier:
            nxt = []
            for root, coroot, coeff in frontier:
                for i in range(r):
                    k = dot(root, self.simple_coroots[i])
                    if not k:
                        continue
                    new = self.reflect(i, root)
                    if new in table:
                        continue
                    c = list(coeff)
                    c[i] -= k
                    item = (new, self.coreflect(i, coroot), tuple(c))
                    table[new] = item[1:]
                    nxt.append(item)
            if len(table) > 10000:
                raise MalformedInputError("root system is not finite")
            frontier = nxt
        for root, (coroot, coeff) in list(table.items()):
            neg = tuple(-x for x in root)
            if neg not in table:
                table[neg] = (tuple(-x for x in coroot), tuple(-x for x in coeff))
        return table

    @property
    def roots(self) -> list[Vec]:
        return sorted(self._root_table)

    @property
    def positive_roots(self) -> list[Vec]:
        return sorted(r for r, (_, c) in self._root_table.items() if all(x >= 0 for x in c))

    @property
    def coroots(self) -> list[Vec]:
        return sorted(c for c, _ in self._root_table.values())

    def coroot(self, root) -> Vec:
        root = tuple(root)
        if root not in self._root_table:
            raise MalformedInputError(f"{root} is not a root")
        return self._root_table[root][0]

    def coefficients(self, root) -> Vec:
        """Coefficients of a root in the simple roots."""
        return self._root_table[tuple(root)][1]

    def height(self, root) -> int:
        return sum(self.coefficients(root))

    @cached_property
    def is_irreducible(self) -> bool:
        return len(components(self.cartan)) == 1

    @cached_property
    def is_simply_connected(self) -> bool:
        return abs(determinant(self.simple_coroots)) == 1

    @cached_property
    def is_adjoint(self) -> bool:
        return abs(determinant(self.simple_roots)) == 1

    @cached_property
    def center_order(self) -> int:
        """Index of the root lattice in X^*, the order of the center."""
        return abs(determinant(self.simple_roots))

    @cached_property
    def weyl_order(self) -> int:
        return weyl_group_order(self.type)

    # weights --------------------------------------------------------------------

    def weight_coordinates(self, x) -> Vec:
        """The pairings <x, alpha_i^vee>."""
        return tuple(dot(x, c) for c in self.simple_coroots)

    def is_dominant(self, x) -> bool:
        return all(dot(x, c) >= 0 for c in self.simple_coroots)

    def dominant_conjugate(self, x) -> Vec:
        x = tuple(x)
        while True:
            for i, c in enumerate(self.simple_coroots):
                if dot(x, c) < 0:
                    x = self.reflect(i, x)
                    break
            else:
                return x

    def orbit(self, x) -> list[Vec]:
        """Weyl orbit by simple reflections."""
        x = tuple(x)
        seen = {x}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for i in range(self.rank):
                    z = self.reflect(i, y)
                    if z not in seen:
                        seen.add(z)
                        nxt.append(z)
            frontier = nxt
        return sorted(seen)

    def orbit_size(self, x) -> int:
        """|W| / |W_x| with W_x the parabolic subgroup fixing the dominant conjugate."""
        d = self.dominant_conjugate(x)
        stab = [i for i in range(self.rank) if dot(d, self.simple_coroots[i]) == 0]
        sub = [[self.cartan[i][j] for j in stab] for i in stab]
        return self.weyl_order // weyl_group_order("x".join(classify(sub)))

    @cached_property
    def gram(self) -> list[list[Fraction]]:
        """W-invariant form on X^* (x) Q with (alpha_i, alpha_i) = 2 d_i."""
        d = symmetrizer(self.cartan)
        r = self.rank
        g_alpha = [[d[i] * self.cartan[i][j] for j in range(r)] for i in range(r)]
        inv = mat_inverse(self.simple_roots)  # x = c . SR  =>  c = x . SR^-1
        tmp = [[sum(inv[i][k] * g_alpha[k][l] for k in range(r)) for l in range(r)] for i in range(r)]
        return [[sum(tmp[i][l] * inv[j][l] for l in range(r)) for j in range(r)] for i in range(r)]

    @cached_property
    def _int_gram(self) -> tuple[tuple[tuple[int, ...], ...], int]:
        den = 1
        for row in self.gram:
            for x in row:
                den = den * x.denominator // gcd(den, x.denominator)
        return tuple(tuple(int(x * den) for x in row) for row in self.gram), den

    def form_scaled(self, x, y) -> int:
        """``den * (x, y)`` as an integer, with ``den = self._int_gram[1]``."""
        g = self._int_gram[0]
        return sum(xi * sum(gij * yj for gij, yj in zip(row, y)) for xi, row in zip(x, g) if xi)

    def form(self, x, y) -> Fraction:
        return Fraction(self.form_scaled(x, y), self._int_gram[1])

    @cached_property
    def rho2(self) -> Vec:
        """Sum of the positive roots (2 rho), which always lies in X^*."""
        out = [0] * self.rank
        for a in self.positive_roots:
            for k in range(self.rank):
                out[k] += a[k]
        return tuple(out)

    @cached_property
    def rho2_check(self) -> Vec:
        """Sum of the positive coroots, in X_*."""
        out = [0] * self.rank
        for a in self.positive_roots:
            for k, x in enumerate(self.coroot(a)):
                out[k] += x
        return tuple(out)

    def level(self, x) -> int:
        """<x, 2 rho^vee>: strictly increases when a positive root is added."""
        return dot(x, self.rho2_check)

    def in_root_lattice(self, x) -> bool:
        inv = mat_inverse(self.simple_roots)
        return all(Fraction(c).denominator == 1 for c in vec_mat(x, inv))

    def weight_of(self, omega_coords) -> Vec:
        """The element of X^* with the given pairings against the simple coroots."""
        inv = mat_inverse([list(col) for col in zip(*self.simple_coroots)])
        return _integral(vec_mat(omega_coords, inv))

    def fundamental_coweight(self, i: int) -> tuple[Fraction, ...]:
        """beta_i in X_* (x) Q with <alpha_j, beta_i> = delta_ij."""
        inv = mat_inverse([list(col) for col in zip(*self.simple_roots)])
        e = [int(i == j) for j in range(self.rank)]
        return tuple(Fraction(x) for x in vec_mat(e, inv))


def dual_datum(rd: RootDatum) -> RootDatum:
    """Langlands dual: swap X^* with X_* and roots with coroots."""
    swap = {"sc": "ad", "ad": "sc"}.get(rd.isogeny, rd.isogeny)
    return RootDatum(rd.simple_coroots, rd.simple_roots, swap)


def root_datum(kind: str, rank: int | None = None, isogeny: str = "sc", basis=None) -> RootDatum:
    """Datum of a simple type.

    ``isogeny`` is "sc" (X^* = weight lattice), "ad" (X^* = root lattice) or
    "intermediate", in which case ``basis`` lists generators of X^* in the
    basis of fundamental weights (it must contain the root lattice).
    """
    if rank is None:
        kind, rank = kind[0], int(kind[1:])
    a = cartan_matrix(kind, rank)
    r = rank
    if isogeny == "sc":
        bm = [[int(i == j) for j in range(r)] for i in range(r)]
    elif isogeny == "ad":
        bm = [list(col) for col in zip(*a)]
    elif isogeny == "intermediate":
        if basis is None:
            raise MalformedInputError("intermediate isogeny needs a basis of X^*")
        bm = [list(map(int, row)) for row in basis]
        if len(bm) != r or any(len(row) != r for row in bm) or determinant(bm) == 0:
            raise MalformedInputError("basis must be r independent vectors")
    else:
        raise MalformedInputError(f"unknown isogeny {isogeny!r}")
    inv = mat_inverse(bm)
    simple_roots = []
    for j in range(r):
        col = [a[i][j] for i in range(r)]
        try:
            simple_roots.append(_integral(vec_mat(col, inv)))
        except MalformedInputError:
            raise MalformedInputError("the given lattice does not contain the root lattice") from None
    simple_coroots = [tuple(bm[k][i] for k in range(r)) for i in range(r)]
    return RootDatum(simple_roots, simple_coroots, isogeny)
