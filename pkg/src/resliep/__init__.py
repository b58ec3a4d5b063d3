"""Restricted Heisenberg Lie algebras over finite fields: cohomology,
classification and central extensions, computed exactly."""

from .gfp import GF, field_make, frobenius
from .liealg import LieAlgebra, bracket, heisenberg, structure_report
from .pstruct import HeisenbergParams, PMap, RestrictedLieAlgebra, heisenberg_restricted, pmap_eval

__all__ = [
    "GF",
    "field_make",
    "frobenius",
    "LieAlgebra",
    "bracket",
    "heisenberg",
    "structure_report",
    "HeisenbergParams",
    "PMap",
    "RestrictedLieAlgebra",
    "heisenberg_restricted",
    "pmap_eval",
]
__version__ = "0.1.0"
