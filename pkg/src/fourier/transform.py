# src/fourier/transform.py
"""Fourier transform of a module over M as pr'_*(kernel (x)^! pr^!(.)) over M'."""

import logging
from typing import Optional

from ..functors.direct import pushforward
from ..functors.inverse import pullback
from ..functors.result import Input, TransformResult, as_transform
from ..functors.twist import BlockLines, pull_ledger
from ..motif.motif import LinearMotif, diagonal, projection
from .kernel import dual_pair, kernel_automorphism

logger = logging.getLogger(__name__)


def fourier_complex(m: LinearMotif, mod: Input, lines: Optional[BlockLines] = None) -> TransformResult:
    """
    Pull back to M' x M, twist by the kernel, push forward to M'. The kernel
    is invertible over O, so its !-product with a pulled-back module is the
    restriction along the kernel twist, shifted by the diagonal ledger.
    """
    src = as_transform(mod, m, lines)
    lines = src.lines
    dual, p = dual_pair(m)
    lines_p = lines.dual() + lines

    pulled = pullback(projection(dual, m, 2), src, lines1=lines_p)
    twisted = pulled.complex.restrict(kernel_automorphism(m))
    ledger = pulled.ledger + pull_ledger(diagonal(p), lines_p, lines_p + lines_p)
    stages = pulled.stages + ["twist by the Poincare kernel"]
    kernel_side = TransformResult(twisted, p, ledger, lines_p, stages)

    out = pushforward(projection(dual, m, 1), kernel_side, lines2=lines.dual())
    logger.info(f"Fourier transform over {m!r}: ledger {out.ledger}")
    return out
