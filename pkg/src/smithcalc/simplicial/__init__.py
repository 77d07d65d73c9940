"""Finite simplicial complexes with p-group actions and the constructible-function calculus."""

from .action import (
    EquivariantMap,
    GComplex,
    Subdivision,
    barycentric_subdivide,
    fixed_subcomplex,
    group_action,
)
from .calculus import (
    CFun,
    dualize,
    dualize_open,
    euler_integral,
    fixed_map,
    orbit_sum,
    pullback,
    pullback_shriek,
    pushforward,
    pushforward_star,
    reduce_mod,
    smith_restrict,
    specialize,
    standard_costandard,
    zero_subcomplex,
)
from .complex import (
    Complex,
    SimplicialMap,
    build_complex,
    constant_map,
    identity_map,
    inclusion,
    point,
    simplicial_map,
    subdivide,
)

__all__ = [
    "CFun", "Complex", "EquivariantMap", "GComplex", "SimplicialMap", "Subdivision",
    "barycentric_subdivide", "build_complex", "constant_map", "dualize", "dualize_open",
    "euler_integral", "fixed_map", "fixed_subcomplex", "group_action", "identity_map",
    "inclusion", "orbit_sum", "point", "pullback", "pullback_shriek", "pushforward",
    "pushforward_star", "reduce_mod", "simplicial_map", "smith_restrict", "specialize",
    "standard_costandard", "subdivide", "zero_subcomplex",
]
