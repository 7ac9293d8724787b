# src/motif/__init__.py
"""The exact category of split linear 1-motifs over Q."""

from .motif import (LinearMotif, MotifMorphism, validate, require_valid, identity, zero_morphism,
                    compose, inversion, product, projection, product_morphism, diagonal, addition,
                    difference, structure_morphism)
from .exact import (kernel, cokernel, factor_through_kernel, factor_through_cokernel,
                    is_strict_mono, is_strict_epi, is_exact)
from .duality import cartier_dual, dual_morphism

__all__ = [
    "LinearMotif", "MotifMorphism", "validate", "require_valid", "identity", "zero_morphism",
    "compose", "inversion", "product", "projection", "product_morphism", "diagonal", "addition",
    "difference", "structure_morphism",
    "kernel", "cokernel", "factor_through_kernel", "factor_through_cokernel",
    "is_strict_mono", "is_strict_epi", "is_exact",
    "cartier_dual", "dual_morphism",
]
