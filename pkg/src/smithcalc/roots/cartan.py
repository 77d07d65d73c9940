"""Cartan matrices of the simple types and a classifier for arbitrary (reducible) ones.

Convention: ``A[i][j] = <alpha_j, alpha_i^vee>``, so the j-th column of A is
the simple root alpha_j written in the basis of fundamental weights.  Nodes
are numbered as in Bourbaki, except G2, whose long root comes first so that
the highest root reads (2, 3).
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import MalformedInputError

TYPES = "ABCDEFG"


def _chain(n: int) -> list[list[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def cartan_matrix(kind: str, rank: int) -> tuple[tuple[int, ...], ...]:
    kind = kind.upper()
    valid = {
        "A": rank >= 1, "B": rank >= 2, "C": rank >= 2, "D": rank >= 3,
        "E": rank in (6, 7, 8), "F": rank == 4, "G": rank == 2,
    }
    if kind not in valid or not valid[kind] or rank > 8:
        raise MalformedInputError(f"no simple type {kind}{rank} (rank must be <= 8)")
    n = rank
    if kind == "A":
        a = _chain(n)
    elif kind == "B":
        a = _chain(n)
        a[n - 1][n - 2] = -2  # alpha_n short
    elif kind == "C":
        a = _chain(n)
        a[n - 2][n - 1] = -2  # alpha_n long
    elif kind == "D":
        a = _chain(n)
        a[n - 1][n - 2] = a[n - 2][n - 1] = 0
        a[n - 1][n - 3] = a[n - 3][n - 1] = -1
    elif kind == "E":
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            a[i][i] = 2
        edges = [(0, 2), (1, 3), (2, 3)] + [(k, k + 1) for k in range(3, n - 1)]
        for i, j in edges:
            a[i][j] = a[j][i] = -1
    elif kind == "F":
        a = [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    else:
        a = [[2, -1], [-3, 2]]
    return tuple(tuple(row) for row in a)


def symmetrizer(a) -> list[Fraction]:
    """d_i = (alpha_i, alpha_i)/2 with d_i A[i][j] symmetric, normalized so the smallest is 1 per component."""
    n = len(a)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        comp = [start]
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and a[i][j] != 0 and d[j] is None:
                    # d_i A[i][j] = d_j A[j][i]
                    d[j] = d[i] * a[i][j] / a[j][i]
                    comp.append(j)
                    stack.append(j)
        m = min(d[i] for i in comp)
        for i in comp:
            d[i] = d[i] / m
    for i in range(n):
        for j in range(n):
            if d[i] * a[i][j] != d[j] * a[j][i]:
                raise MalformedInputError("Cartan matrix is not symmetrizable")
    return d  # type: ignore[return-value]


def components(a) -> list[list[int]]:
    n = len(a)
    seen, out = set(), []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and a[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        out.append(sorted(comp))
    return out


def _classify_connected(a, nodes: list[int]) -> str:
    n = len(nodes)
    if n == 1:
        return "A1"
    sub = [[a[i][j] for j in nodes] for i in nodes]
    d = symmetrizer(sub)
    edges = {}
    deg = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if sub[i][j]:
                edges[(i, j)] = sub[i][j] * sub[j][i]
                deg[i] += 1
                deg[j] += 1
    if len(edges) != n - 1:
        raise MalformedInputError("Dynkin diagram has a cycle: not of finite type")
    mults = sorted(edges.values())
    if mults[-1] == 3:
        if n != 2:
            raise MalformedInputError("triple bond outside G2")
        return "G2"
    if mults[-1] == 2:
        if mults.count(2) > 1 or max(deg) > 2:
            raise MalformedInputError("not of finite type")
        (i, j), = [e for e, m in edges.items() if m == 2]
        if n == 2:
            return "B2"
        if deg[i] == 2 and deg[j] == 2:
            if n != 4:
                raise MalformedInputError("double bond in the middle of a chain of length != 4")
            return "F4"
        long = sum(1 for x in d if x == max(d))
        return f"B{n}" if long == n - 1 else f"C{n}"
    if mults[-1] > 3:
        raise MalformedInputError("not of finite type")
    if max(deg) <= 2:
        return f"A{n}"
    branch = [i for i in range(n) if deg[i] == 3]
    if len(branch) != 1 or max(deg) > 3:
        raise MalformedInputError("not of finite type")
    b = branch[0]
    arms = []
    for nb in [j for j in range(n) if j != b and (min(b, j), max(b, j)) in edges]:
        length, prev, cur = 1, b, nb
        while True:
            nxt = [j for j in range(n) if j not in (prev, cur) and (min(cur, j), max(cur, j)) in edges]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return f"D{n}"
    if arms == [1, 2, 2]:
        return "E6"
    if arms == [1, 2, 3]:
        return "E7"
    if arms == [1, 2, 4]:
        return "E8"
    raise MalformedInputError("not of finite type")


def classify(a) -> list[str]:
    """Sorted list of simple types of the components of a Cartan matrix."""
    if len(a) == 0:
        return []
    return sorted(_classify_connected(a, comp) for comp in components(a))


_ISO = {"B1": "A1", "C1": "A1", "C2": "B2", "D3": "A3"}


def normalize_type(label: str) -> str:
    """Canonical name up to isomorphism of root systems (C1 = A1, C2 = B2, D2 = A1xA1, D3 = A3)."""
    parts = []
    for part in label.replace("×", "x").split("x"):
        part = part.strip()
        if not part:
            continue
        if part == "D2":
            parts += ["A1", "A1"]
        else:
            parts.append(_ISO.get(part, part))
    return "x".join(sorted(parts))


def type_label(a) -> str:
    return "x".join(classify(a))
