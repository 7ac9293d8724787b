# src/algebra/__init__.py
"""Motif algebras, element syntax and module presentations."""

from .ideals import LaurentIdeal
from .ore import MotifAlgebra, OreElement, AlgebraMap, algebra_from_motif, identity_map, unit_inverse
from .parser import parse_element, format_element
from .presentation import (ModulePresentation, free_module, cyclic_module, zero_module, delta_module,
                           character_module, function_algebra, induce, coherence_smoke,
                           coherence_witness, block_embedding, boxtimes)

__all__ = [
    "LaurentIdeal",
    "MotifAlgebra", "OreElement", "AlgebraMap", "algebra_from_motif", "identity_map", "unit_inverse",
    "parse_element", "format_element",
    "ModulePresentation", "free_module", "cyclic_module", "zero_module", "delta_module",
    "character_module", "function_algebra", "induce", "coherence_smoke", "coherence_witness",
    "block_embedding", "boxtimes",
]
