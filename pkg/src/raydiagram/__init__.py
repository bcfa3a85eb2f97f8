"""Exact combinatorial classification of extremal-ray intersection diagrams."""

from .classifier import (
    Classification,
    Decomposition,
    DiagramClass,
    Witness,
    classify,
    is_connected_parabolic,
    is_elliptic,
    is_lanner,
    is_parabolic,
    is_quasi_lanner,
    is_semi_elliptic,
    minimal_non_semi_elliptic_check,
    oracle_classify,
    semi_elliptic_decomposition,
)
from .raygraph import (
    Arrow,
    RayKind,
    RaySet,
    TYPE_II,
    arrows,
    components,
    diameter,
    distance,
    distance_A,
    divisorially_joint,
    parse_rayset,
    prune_special,
    serialize_rayset,
    type_i,
)

__all__ = [name for name in dir() if not name.startswith("_")]
