"""Direct and inverse images, products and their property harness."""

from .twist import (TwistShift, BlockLines, line, push_ledger, pull_ledger, fourier_ledger,
                    duality_ledger, contravariant)
from .result import TransformResult, as_transform
from .factorization import CanonicalFactorization
from .direct import pushforward, induced_complex
from .inverse import pullback, GroupRoute, structure_sheaf
from .products import boxtimes_complex, otimes_shriek, convolution
from .harness import run_harness, Family, Check, fiber_product

__all__ = [
    "TwistShift", "BlockLines", "line", "push_ledger", "pull_ledger", "fourier_ledger",
    "duality_ledger", "contravariant",
    "TransformResult", "as_transform", "CanonicalFactorization",
    "pushforward", "induced_complex", "pullback", "GroupRoute", "structure_sheaf",
    "boxtimes_complex", "otimes_shriek", "convolution",
    "run_harness", "Family", "Check", "fiber_product",
]
