"""Exact analysis of piecewise contracting interval maps with affine branches."""

from .atoms import AtomTree, Interval, attractor_enclosure, expand_atoms
from .decomposition import Budget, DecompositionReport, classify_limit, cross_validate, decompose
from .maps import MapSpec, boundary_data, check_D_in_Xtilde, load_map, make_map
from .orbit import ExactOrbit, detect_eventual_periodicity, iterate, itinerary
from .recurrence import ClassGraph, DetectionConfig, build_class_graph, detect_lr
from .symbolic import complexity

__version__ = "0.1.0"

__all__ = [
    "AtomTree",
    "Budget",
    "ClassGraph",
    "DecompositionReport",
    "DetectionConfig",
    "ExactOrbit",
    "Interval",
    "MapSpec",
    "attractor_enclosure",
    "boundary_data",
    "build_class_graph",
    "check_D_in_Xtilde",
    "classify_limit",
    "complexity",
    "cross_validate",
    "decompose",
    "detect_eventual_periodicity",
    "detect_lr",
    "expand_atoms",
    "iterate",
    "itinerary",
    "load_map",
    "make_map",
]
