"""Pairwise disjoint edges in simple drawings of complete graphs.

Exact rational geometry throughout: drawings, a plane-subgraph grower,
cylindrical redrawing, x-monotone chain extraction, an exact oracle for small
instances, and seeded generators.
"""
from .gen import GenKind, GenSpec, generate
from .matching import MatchingResult, solve
from .model import Drawing, PolylineEdge, validate_simple
from .oracle import max_disjoint_bruteforce, max_disjoint_cylindrical

__version__ = "0.1.0"

__all__ = ["Drawing", "PolylineEdge", "validate_simple", "solve", "MatchingResult",
           "max_disjoint_bruteforce", "max_disjoint_cylindrical", "GenKind", "GenSpec", "generate"]
