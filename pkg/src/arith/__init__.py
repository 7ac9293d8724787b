# src/arith/__init__.py
"""Exact arithmetic: integer/rational matrices, Smith forms, multiplicative lattices."""

from .matrices import IntMatrix, RatMatrix, to_fraction
from .lattice import (SmithDecomposition, snf, int_kernel, saturate, lattice_basis,
                      quotient_projection, torsion_generators, int_solve, is_saturated)
from .factored import FactoredRational, torus_apply, mult_relations, monomial_value

__all__ = [
    "IntMatrix", "RatMatrix", "to_fraction",
    "SmithDecomposition", "snf", "int_kernel", "saturate", "lattice_basis",
    "quotient_projection", "torsion_generators", "int_solve", "is_saturated",
    "FactoredRational", "torus_apply", "mult_relations", "monomial_value",
]
