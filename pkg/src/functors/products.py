# src/functors/products.py
"""External product, the !-tensor product and convolution."""

import logging
from typing import Optional

from ..homology.complexes import tensor_complexes
from ..motif.motif import LinearMotif, addition, diagonal, product
from ..utils.errors import AlgebraMismatchError
from .direct import pushforward
from .inverse import pullback
from .result import Input, TransformResult, as_transform

logger = logging.getLogger(__name__)


def _as_result(obj: Input) -> TransformResult:
    if isinstance(obj, TransformResult):
        return obj
    motif = obj.motif if hasattr(obj, "motif") else obj.algebra.motif
    return as_transform(obj, motif)


def boxtimes_complex(a: Input, b: Input) -> TransformResult:
    """a (x) b over the product motif; ledgers and block lines add."""
    ra, rb = _as_result(a), _as_result(b)
    c = tensor_complexes(ra.complex, rb.complex)
    stages = ra.stages + rb.stages + ["external product"]
    return TransformResult(c, product(ra.motif, rb.motif), ra.ledger + rb.ledger, ra.lines + rb.lines, stages)


def _same_motif(ra: TransformResult, rb: TransformResult, what: str) -> LinearMotif:
    if ra.motif != rb.motif:
        raise AlgebraMismatchError(f"{what}: {ra.motif!r} and {rb.motif!r} differ")
    return ra.motif


def otimes_shriek(a: Input, b: Input) -> TransformResult:
    """Delta^!(a (x) b)."""
    ra, rb = _as_result(a), _as_result(b)
    m = _same_motif(ra, rb, "otimes_shriek")
    out = pullback(diagonal(m), boxtimes_complex(ra, rb), lines1=ra.lines)
    logger.debug(f"otimes_shriek ledger {out.ledger}")
    return out


def convolution(a: Input, b: Input, lines: Optional[object] = None) -> TransformResult:
    """mu_*(a (x) b) along the group law."""
    ra, rb = _as_result(a), _as_result(b)
    m = _same_motif(ra, rb, "convolution")
    return pushforward(addition(m), boxtimes_complex(ra, rb), lines2=lines or ra.lines)
