"""Small lattices and connections shipped with latgal.

Lattices: ``grid9`` (subgroups of Z_{p^2} x Z_{q^2}), ``z2z4`` (subgroups
of Z_2 x Z_4), and the small abstract lattices ``a9``, ``b8``, ``c7``,
``d7`` and ``m3``.

The ``z2z4`` and ``c7`` connection tables are kept as reference data;
their ``alpha`` is not monotone, so loading them raises ``NotMonotone``.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from pathlib import Path

from ..formats import load_lattice, load_map
from ..galois import GaloisConnection

LATTICES = ("grid9", "z2z4", "a9", "b8", "c7", "d7", "m3")

# name -> (A, B, alpha map file, beta map file)
CONNECTIONS = {
    "grid": ("grid9", "grid9", "grid_alpha.map", "grid_beta.map"),
    "z2z4": ("z2z4", "z2z4", "z2z4_alpha.map", "z2z4_beta.map"),
    "z2z4_identity": ("z2z4", "z2z4", "z2z4_id_alpha.map", "z2z4_id_beta.map"),
    "a9b8": ("a9", "b8", "a9b8_alpha.map", "a9b8_beta.map"),
    "a9b8_retractable": ("a9", "b8", "a9b8r_alpha.map", "a9b8r_beta.map"),
    "c7": ("c7", "c7", "c7_alpha.map", "c7_beta.map"),
    "d7m3": ("d7", "m3", "d7m3_alpha.map", "d7m3_beta.map"),
}


def fixture_dir() -> Path:
    return Path(str(resources.files(__name__)))


def fixture_path(filename: str) -> Path:
    return fixture_dir() / filename


@lru_cache(maxsize=None)
def lattice(name: str):
    return load_lattice(fixture_path(f"{name}.lat"))


@lru_cache(maxsize=None)
def connection(name: str) -> GaloisConnection:
    a, b, fa, fb = CONNECTIONS[name]
    A, B = lattice(a), lattice(b)
    return GaloisConnection(load_map(fixture_path(fa), A, B), load_map(fixture_path(fb), B, A))
