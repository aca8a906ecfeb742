"""Multiscale renormalization Hopf algebra of assigned φ⁴ graphs."""
from .graphs import (
    AssignedGraph,
    FeynmanGraph,
    GluingData,
    ScaleAssignment,
    Subgraph,
    automorphism_order,
    canonicalize,
    external_labelings,
    glue,
    is_one_pi,
    loop_number,
    shrink,
)
from .hopf import antipode, antipode_by_forests, coproduct, counit

__all__ = [
    "AssignedGraph",
    "FeynmanGraph",
    "GluingData",
    "ScaleAssignment",
    "Subgraph",
    "antipode",
    "antipode_by_forests",
    "automorphism_order",
    "canonicalize",
    "coproduct",
    "counit",
    "external_labelings",
    "glue",
    "is_one_pi",
    "loop_number",
    "shrink",
]
__version__ = "0.1.0"
