"""Minimal 1-saturating sets in the binary projective spaces PG(v,2)."""

from .geometry import PointSet, is_cap, span_closure, third_point
from .saturation import SetType, classify_type, is_minimal_one_saturating, is_one_saturating
from .projgroup import ProjMap, apply_map, are_equivalent, canonical_form, orbit_size, stabilizer_order
from .enumeration import ClassRecord, enumerate_classes, summarize

__all__ = [
    "ClassRecord",
    "PointSet",
    "ProjMap",
    "SetType",
    "apply_map",
    "are_equivalent",
    "canonical_form",
    "classify_type",
    "enumerate_classes",
    "is_cap",
    "is_minimal_one_saturating",
    "is_one_saturating",
    "orbit_size",
    "span_closure",
    "stabilizer_order",
    "summarize",
    "third_point",
]
