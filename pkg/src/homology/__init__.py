# src/homology/__init__.py
"""Realized modules, complexes and windowed homology."""

from .modules import (RealizedModule, ZeroModule, SpaceTerm, CyclicModule, QuotientModule, DirectSum,
                      TensorModule, Restricted, InducedLie, InducedLattice, realize, generator_vectors)
from .complexes import (FreeComplex, ElementMatrixMap, MatrixMap, FunctionMap, concentrated,
                        koszul_total, xi_koszul, tensor_complexes, koszul_complex,
                        lattice_resolution, canonical_lattice_complex, presentation_complex)
from .homology import (GradedSlice, WindowedHomology, IsoWitness, homology, homology_dims,
                       homology_basis, find_isomorphism)

__all__ = [
    "RealizedModule", "ZeroModule", "SpaceTerm", "CyclicModule", "QuotientModule", "DirectSum",
    "TensorModule", "Restricted", "InducedLie", "InducedLattice", "realize", "generator_vectors",
    "FreeComplex", "ElementMatrixMap", "MatrixMap", "FunctionMap", "concentrated",
    "koszul_total", "xi_koszul", "tensor_complexes", "koszul_complex",
    "lattice_resolution", "canonical_lattice_complex", "presentation_complex",
    "GradedSlice", "WindowedHomology", "IsoWitness", "homology", "homology_dims",
    "homology_basis", "find_isomorphism",
]
