"""Highest roots, order-p Kac nodes and centralizers of the corresponding torsion elements.

Nodes are numbered 1..r; node 0 is the affine node -theta.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import InternalConsistencyError, MalformedInputError
from ..fields import is_prime
from .datum import RootDatum, dot, dual_datum


def highest_root(rd: RootDatum) -> tuple:
    if not rd.is_irreducible:
        raise MalformedInputError(f"highest root needs an irreducible datum, got {rd.type}")
    return max(rd.positive_roots, key=rd.height)


def highest_root_coeffs(rd: RootDatum) -> tuple[int, ...]:
    return rd.coefficients(highest_root(rd))


# Rows and the node drawn above the row, as the exceptional diagrams are usually
# displayed: (row node indices, (index above, index below it)), 1-based.
_LAYOUT = {
    "G2": ((1, 2), None),
    "F4": ((1, 2, 3, 4), None),
    "E6": ((1, 3, 4, 5, 6), (2, 4)),
    "E7": ((1, 3, 4, 5, 6, 7), (2, 4)),
    "E8": ((1, 3, 4, 5, 6, 7, 8), (2, 4)),
}


def display_layout(rd: RootDatum) -> dict:
    """Highest-root coefficients arranged like the drawn Dynkin diagram."""
    c = highest_root_coeffs(rd)
    if rd.type not in _LAYOUT:
        return {"row": list(c), "above": None}
    row, top = _LAYOUT[rd.type]
    out = {"row": [c[i - 1] for i in row], "above": None}
    if top:
        out["above"] = {"value": c[top[0] - 1], "over": c[top[1] - 1],
                        "position": row.index(top[1])}
    return out


def render_layout(rd: RootDatum) -> str:
    lay = display_layout(rd)
    sep = {"G2": " ≡> ", "F4": None}.get(rd.type, " - ")
    cells = [str(x) for x in lay["row"]]
    if rd.type == "F4":
        line = f"{cells[0]} - {cells[1]} => {cells[2]} - {cells[3]}"
    else:
        line = sep.join(cells)
    if lay["above"] is None:
        return line
    col = len(sep.join(cells[: lay["above"]["position"]])) + (len(sep) if lay["above"]["position"] else 0)
    top = " " * col + str(lay["above"]["value"])
    bar = " " * col + "|"
    return "\n".join([top, bar, line])


@dataclass(frozen=True)
class KacNode:
    index: int  # 1-based node of the Dynkin diagram
    coefficient: int
    coweight: tuple  # beta_i in X_* (x) Q

    @property
    def order(self) -> int:
        return self.coefficient

    def element(self, p: int | None = None) -> str:
        """The torsion element beta_i(zeta_c) as a symbolic string."""
        return f"beta_{self.index}(zeta_{p or self.coefficient})"


def kac_nodes(rd: RootDatum) -> list[KacNode]:
    c = highest_root_coeffs(rd)
    return [KacNode(i + 1, c[i], rd.fundamental_coweight(i)) for i in range(rd.rank)]


def kac_order_p_nodes(rd: RootDatum, p: int) -> list[KacNode]:
    """Nodes whose highest-root coefficient equals the prime p."""
    if not is_prime(p):
        raise MalformedInputError(f"{p} is not prime")
    if not rd.is_simply_connected:
        raise MalformedInputError("Kac nodes are read off a simply connected datum")
    return [n for n in kac_nodes(rd) if n.coefficient == p]


def _check_node(rd: RootDatum, node: KacNode):
    if not 1 <= node.index <= rd.rank:
        raise MalformedInputError(f"node {node.index} out of range")
    if highest_root_coeffs(rd)[node.index - 1] != node.coefficient:
        raise MalformedInputError("node does not belong to this datum")


def centralizer_by_deletion(rd: RootDatum, node: KacNode) -> RootDatum:
    """Delete the node from the extended diagram; the rest is a base of the centralizer."""
    _check_node(rd, node)
    theta = highest_root(rd)
    roots = [tuple(-x for x in theta)]
    coroots = [tuple(-x for x in rd.coroot(theta))]
    for j in range(rd.rank):
        if j != node.index - 1:
            roots.append(rd.simple_roots[j])
            coroots.append(rd.simple_coroots[j])
    return RootDatum(roots, coroots, "centralizer")


def centralizer_by_congruence(rd: RootDatum, node: KacNode) -> set:
    """Roots alpha with <alpha, beta_i> divisible by the order."""
    beta = node.coweight
    out = set()
    for a in rd.roots:
        v = sum(Fraction(x) * b for x, b in zip(a, beta))
        if v.denominator != 1:
            raise InternalConsistencyError("a root pairs non-integrally with a fundamental coweight")
        if int(v) % node.order == 0:
            out.add(a)
    return out


def centralizer_datum(rd: RootDatum, node: KacNode) -> RootDatum:
    """Centralizer of beta_i(zeta) as a datum on the same lattices, cross-checked two ways."""
    h = centralizer_by_deletion(rd, node)
    by_deletion = set(h.roots)
    by_congruence = centralizer_by_congruence(rd, node)
    if by_deletion != by_congruence:
        raise InternalConsistencyError(
            f"centralizer mismatch at node {node.index} of {rd.type}: "
            f"{len(by_deletion)} roots by deletion, {len(by_congruence)} by congruence"
        )
    return h


def verify_coroot_compatibility(rd: RootDatum, node: KacNode) -> dict:
    """Check that the coroots of the centralizer sit inside those of rd compatibly.

    The centralizer's coroots are computed intrinsically (Weyl orbits of its own
    simple coroots) and compared with rd's coroot of the same root; the dual
    data are compared the same way, and every simple reflection of the
    centralizer is matched with a reflection of rd on both lattices.
    """
    h = centralizer_datum(rd, node)
    hd, gd = dual_datum(h), dual_datum(rd)
    violations = []
    g_roots = set(rd.roots)
    for a in h.roots:
        if a not in g_roots:
            violations.append(f"root {a} of the centralizer is not a root")
            continue
        if h.coroot(a) != rd.coroot(a):
            violations.append(f"coroot of {a}: {h.coroot(a)} vs {rd.coroot(a)}")
    gd_roots = set(gd.roots)
    for b in hd.roots:
        if b not in gd_roots:
            violations.append(f"dual root {b} is not a root of the dual")
            continue
        if hd.coroot(b) != gd.coroot(b):
            violations.append(f"dual coroot of {b}: {hd.coroot(b)} vs {gd.coroot(b)}")
    if set(hd.roots) != set(h.coroots):
        violations.append("roots of the dual centralizer differ from the centralizer's coroots")
    r = rd.rank
    basis = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    for i, a in enumerate(h.simple_roots):
        a_check = h.simple_coroots[i]
        # s_a on X^*, written as images of the basis vectors
        s = [h.reflect(i, e) for e in basis]
        s_g = [tuple(x - dot(e, rd.coroot(a)) * y for x, y in zip(e, a)) for e in basis] if a in g_roots else None
        if s != s_g:
            violations.append(f"reflection in {a} is not a reflection of the ambient Weyl group")
        # contragredient on X_*: transpose of s, should be the reflection in a^vee
        st = [tuple(s[k][j] for k in range(r)) for j in range(r)]
        sd = [hd.reflect(i, e) for e in basis]
        s_gd = ([tuple(x - dot(e, gd.coroot(a_check)) * y for x, y in zip(e, a_check)) for e in basis]
                if a_check in gd_roots else None)
        if not (st == sd == s_gd):
            violations.append(f"dual reflection in {a_check} does not match")
    return {
        "type": rd.type,
        "node": node.index,
        "order": node.order,
        "centralizer": h.type,
        "roots_checked": len(h.roots),
        "violations": violations,
        "passed": not violations,
    }


def center_index_check(rd: RootDatum, node: KacNode) -> dict:
    """Lattice form of 'the center of the centralizer is an extension of Z/c by the center'.

    |Z(H)| = [X^* : Z Phi_H] should equal c_i |Z(G)|.
    """
    h = centralizer_datum(rd, node)
    zg, zh = rd.center_order, h.center_order
    return {"center": zg, "centralizer_center": zh, "order": node.order, "passed": zh == node.order * zg}
