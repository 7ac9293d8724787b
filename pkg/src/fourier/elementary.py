# src/fourier/elementary.py
"""
Closed forms of the Fourier transform on the elementary motifs: a relabeling
isomorphism from the algebra of M onto the algebra of M', applied to the
presentation, with the result placed in complex degree 0 under the Fourier
ledger.
"""

import logging
from typing import Optional, Union

from .. import config
from ..algebra.ore import AlgebraMap, MotifAlgebra, algebra_from_motif
from ..algebra.presentation import ModulePresentation
from ..functors.result import TransformResult
from ..functors.twist import BlockLines, fourier_ledger
from ..homology.complexes import concentrated
from ..homology.modules import realize
from ..motif.duality import cartier_dual
from ..motif.motif import LinearMotif
from ..utils.errors import ShapeMismatchError
from ..utils.shapes import ElementaryShape

logger = logging.getLogger(__name__)

ShapeLike = Union[ElementaryShape, str, LinearMotif]


def resolve_shape(shape: ShapeLike, n: Optional[int] = None) -> tuple:
    """(shape, motif) from a shape name, a shape or a literal elementary motif."""
    if isinstance(shape, LinearMotif):
        found = ElementaryShape.detect(shape)
        if found is None:
            raise ShapeMismatchError(f"{shape!r} is not an elementary motif")
        return found, shape
    if isinstance(shape, str) and not isinstance(shape, ElementaryShape):
        shape = ElementaryShape.from_name(shape)
    return shape, shape.motif(n or 1)


def relabel_map(shape: ElementaryShape, n: int = 1) -> AlgebraMap:
    """
    A_M -> A_M' for M = shape.motif(n):

        [0->V]    x -> xi'                [V^0->0]  xi -> -x'
        [V^0->V]  x -> xi', xi -> -x'     [0->T]    t -> s'
        [X->0]    s -> t'^-1              [T^0->T]  t -> s', xi -> -x'
        [X->V]    s -> t'^-1, x -> xi'
    """
    m = shape.motif(n)
    src = algebra_from_motif(m)
    tgt = algebra_from_motif(cartier_dual(m))
    sign = config.FOURIER_SIGN
    images = {}
    for i in range(src.nx):
        images[("x", i)] = tgt.xi(i)
    for a in range(src.nxi):
        images[("xi", a)] = tgt.x(a) * sign
    for j in range(src.nt):
        images[("t", j, 1)] = tgt.s(j)
    for e in range(src.ns):
        images[("s", e, 1)] = tgt.t(e, -1)
    return AlgebraMap(src, tgt, images)


def inversion_map(alg: MotifAlgebra) -> AlgebraMap:
    """Pullback along the group inversion: x, xi -> -x, -xi and t, s -> t^-1, s^-1."""
    images = {("x", i): -alg.x(i) for i in range(alg.nx)}
    images.update({("xi", a): -alg.xi(a) for a in range(alg.nxi)})
    images.update({("t", j, 1): alg.t(j, -1) for j in range(alg.nt)})
    images.update({("s", e, 1): alg.s(e, -1) for e in range(alg.ns)})
    return AlgebraMap(alg, alg, images)


def invert(mod: ModulePresentation) -> ModulePresentation:
    return mod.map_relations(inversion_map(mod.algebra))


def elementary_presentation(shape: ShapeLike, mod: ModulePresentation) -> ModulePresentation:
    shape, m = resolve_shape(shape, max(mod.motif.dims))
    if mod.motif != m:
        raise ShapeMismatchError(f"module over {mod.motif!r} given for shape {shape.value}")
    return mod.map_relations(relabel_map(shape, max(m.dims)))


def fourier_elementary(shape: ShapeLike, mod: ModulePresentation,
                       lines: Optional[BlockLines] = None) -> TransformResult:
    """Closed-form transform; effective degree d_G."""
    shape, m = resolve_shape(shape, max(mod.motif.dims))
    lines = lines or BlockLines.canonical(m)
    pres = elementary_presentation(shape, mod)
    logger.debug(f"elementary transform on {shape.value}: {len(pres.relations)} relations")
    return TransformResult(concentrated(realize(pres)), pres.motif, fourier_ledger(lines, m),
                           lines.dual(), [f"elementary relabeling {shape.value}"])
