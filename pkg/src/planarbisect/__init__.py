"""Bicriteria approximation for minimum b-bipartition of planar graphs."""

from .estimator import PlanarBisection, check_fraction, check_graph
from .framework import solve
from .generators import GeneratorSpec, generate
from .oracles import exact_bipartition, exact_bipartition_graph
from .planar import EmbeddedGraph, PlanarError, dualize, from_instance, read_instance, to_instance, write_instance
from .verify import verify

__version__ = "0.1.0"

__all__ = [
    "EmbeddedGraph",
    "GeneratorSpec",
    "PlanarBisection",
    "PlanarError",
    "check_fraction",
    "check_graph",
    "dualize",
    "exact_bipartition",
    "exact_bipartition_graph",
    "from_instance",
    "generate",
    "read_instance",
    "solve",
    "to_instance",
    "verify",
    "write_instance",
]
