"""Lattice model of the spherical Hecke algebra and its Smith homomorphism.

SHA_{G,k} is modelled as k[X_*(T)]^W, i.e. invariant elements for the dual
datum.  For a Kac node of prime order p the Smith map is restriction to the
centralizer's Weyl group followed by reduction mod p.  In this model the
compatibility square commutes by construction; what carries content is the
centralizer datum (computed two ways) and the coroot compatibility check.
"""

from __future__ import annotations

from ..errors import MalformedInputError, RingMismatchError
from ..fields import Ring, ZZ
from .characters import InvariantElement, restrict_invariants
from .datum import RootDatum, dual_datum
from .kac import KacNode, centralizer_datum


class ShaModel:
    def __init__(self, rd: RootDatum, ring: Ring | str = ZZ):
        self.group = rd
        self.ring = Ring.parse(ring)
        self.datum = dual_datum(rd)  # character lattice = X_*(T)

    def __repr__(self):
        return f"ShaModel({self.group.type}, {self.ring.name})"

    def element(self, weights) -> InvariantElement:
        return InvariantElement(self.datum, self.ring, weights)

    def unit(self) -> InvariantElement:
        return InvariantElement.unit(self.datum, self.ring)

    def orbit_basis(self, coweight) -> InvariantElement:
        """Indicator of the W-orbit of a cocharacter (the G(O)-double coset basis)."""
        return InvariantElement.orbit_sum(self.datum, coweight, self.ring)

    def multiply(self, a: InvariantElement, b: InvariantElement) -> InvariantElement:
        return a * b

    def centralizer_model(self, node: KacNode) -> "ShaModel":
        h = centralizer_datum(self.group, node)
        return ShaModel(h, Ring(node.order))

    def smith(self, e: InvariantElement, node: KacNode, p: int | None = None) -> InvariantElement:
        return smith_sha(self, e, node, p)


def sha_model(rd: RootDatum, ring: Ring | str = ZZ) -> ShaModel:
    return ShaModel(rd, ring)


def smith_sha(model: ShaModel, e: InvariantElement, node: KacNode, p: int | None = None) -> InvariantElement:
    """Restrict to the centralizer of the order-p element and reduce mod p."""
    p = p if p is not None else node.order
    if node.order != p:
        raise MalformedInputError(f"node {node.index} has order {node.order}, not {p}")
    if e.datum != model.datum:
        raise MalformedInputError("element does not belong to this model")
    if e.ring.p not in (0, p):
        raise RingMismatchError(f"cannot take a {e.ring.name} element to F_{p}")
    h = dual_datum(centralizer_datum(model.group, node))
    return restrict_invariants(model.datum, h, e).reduce(p)
