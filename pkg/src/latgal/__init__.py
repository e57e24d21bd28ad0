"""Essential, retractable and UC Galois connections between finite lattices.

Lattices are small, immutable and indexed by integers; every property is
decided by exhaustive computation.
"""

from .errors import LatgalError
from .lattice import Lattice, MonotoneMap, build_from_covers, chain, dual, interval
from .essentiality import (
    closed_elements, closures_of, hollow_dimension, is_essential_in, uniform_dimension,
)
from .galois import GaloisConnection, build_connection, classify, closed_correspondence
from .formats import emit_dot, load_lattice, load_map

__all__ = [
    "LatgalError", "Lattice", "MonotoneMap", "build_from_covers", "chain", "dual", "interval",
    "closed_elements", "closures_of", "hollow_dimension", "is_essential_in", "uniform_dimension",
    "GaloisConnection", "build_connection", "classify", "closed_correspondence",
    "emit_dot", "load_lattice", "load_map",
]
__version__ = "0.1.0"
