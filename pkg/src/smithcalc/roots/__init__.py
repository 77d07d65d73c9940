"""Root data, Kac nodes, centralizers, Weyl characters and the lattice Satake model."""

from .cartan import cartan_matrix, classify, normalize_type, symmetrizer, type_label
from .characters import (
    InvariantElement,
    branching,
    convolve,
    convolve_full,
    decompose,
    dominant_weights_below,
    recompose,
    restrict_invariants,
    weyl_character,
    weyl_dimension,
    weyl_subgroup_check,
)
from .datum import RootDatum, dual_datum, root_datum, weyl_group_order
from .kac import (
    KacNode,
    center_index_check,
    centralizer_by_congruence,
    centralizer_by_deletion,
    centralizer_datum,
    display_layout,
    highest_root,
    highest_root_coeffs,
    kac_nodes,
    kac_order_p_nodes,
    render_layout,
    verify_coroot_compatibility,
)
from .satake import ShaModel, sha_model, smith_sha

SIMPLE_TYPES = [f"A{n}" for n in range(1, 9)] + [f"B{n}" for n in range(2, 9)] + \
    [f"C{n}" for n in range(2, 9)] + [f"D{n}" for n in range(4, 9)] + ["E6", "E7", "E8", "F4", "G2"]

__all__ = [
    "InvariantElement", "KacNode", "RootDatum", "SIMPLE_TYPES", "ShaModel", "branching", "cartan_matrix",
    "center_index_check", "centralizer_by_congruence", "centralizer_by_deletion", "centralizer_datum",
    "classify", "convolve", "convolve_full", "decompose", "display_layout", "dominant_weights_below",
    "dual_datum", "highest_root", "highest_root_coeffs", "kac_nodes", "kac_order_p_nodes", "normalize_type",
    "recompose", "render_layout", "restrict_invariants", "root_datum", "sha_model", "smith_sha",
    "symmetrizer", "type_label", "verify_coroot_compatibility", "weyl_character", "weyl_dimension",
    "weyl_group_order", "weyl_subgroup_check",
]
