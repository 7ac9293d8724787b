# src/fourier/duality.py
"""
The duality functor on cyclic modules with a commuting set of relations.

For <g | r_1, ..., r_k> resolved by the Koszul complex of right
multiplication by the r_i, applying Hom(-, A) and the antipode gives the
cyclic module <g | iota(r_1), ..., iota(r_k)> in complex degree k, where

    iota(x^a t^b xi^c s^d) = s^-d (-xi)^c t^b x^a

is the anti-automorphism turning right modules into left modules.
"""

import logging
from fractions import Fraction
from typing import List, Optional

from .. import config
from ..algebra.ore import MotifAlgebra, OreElement
from ..algebra.presentation import ModulePresentation, cyclic_module, free_module
from ..functors.result import TransformResult
from ..functors.twist import BlockLines, duality_ledger
from ..homology.complexes import concentrated, koszul_total
from ..homology.homology import homology
from ..homology.modules import realize
from ..utils.errors import ResolutionError, UnsupportedModuleError, ValidationError

logger = logging.getLogger(__name__)


def antipode(element: OreElement) -> OreElement:
    alg = element.algebra
    out = alg.zero()
    for (alpha, beta, gamma, delta), c in element.terms.items():
        word = [alg.s(e, -d) for e, d in enumerate(delta) if d]
        word += [(-alg.xi(a)) ** g for a, g in enumerate(gamma) if g]
        word += [alg.t(j, b) for j, b in enumerate(beta) if b]
        word += [alg.x(i) ** a for i, a in enumerate(alpha) if a]
        out = out + alg.normal_form(word) * c
    return out


def _require_commuting(relations: List[OreElement]) -> None:
    for i, a in enumerate(relations):
        for b in relations[i + 1:]:
            if not (a * b - b * a).is_zero():
                raise ResolutionError(f"relations {a} and {b} do not commute; no Koszul resolution")


def resolution_failures(mod: ModulePresentation, window: Optional[int] = None) -> List[int]:
    """
    Degrees below the top where the Koszul complex of the twisted relations
    on the free module has homology; empty when it resolves the module.
    """
    rels = [antipode(r) for r in mod.cyclic_relations()]
    if not rels:
        return []
    free = realize(free_module(mod.algebra))
    try:
        k = koszul_total(concentrated(free), rels)
    except ValidationError as e:
        raise ResolutionError(str(e)) from e
    window = config.RESOLUTION_DEPTH if window is None else window
    return [s.degree for s in homology(k, window) if s.degree < 0 and s.homology_dim]


def dual_presentation(mod: ModulePresentation) -> ModulePresentation:
    if not mod.is_cyclic():
        raise UnsupportedModuleError("duality is implemented for cyclic presentations")
    return cyclic_module(mod.algebra, [antipode(r) for r in mod.cyclic_relations()])


def duality(mod: ModulePresentation, lines: Optional[BlockLines] = None, check: bool = True) -> TransformResult:
    """
    D(mod) in complex degree k = number of relations, with ledger
    omega_M (x) omega_formal^-1 [d_G].
    """
    if not mod.is_cyclic():
        raise UnsupportedModuleError("duality is implemented for cyclic presentations")
    rels = mod.cyclic_relations()
    _require_commuting(rels)
    if check:
        bad = resolution_failures(mod)
        if bad:
            raise ResolutionError(f"Koszul complex of the relations is not a resolution (homology in {bad})")
    m = mod.motif
    lines = lines or BlockLines.canonical(m)
    pres = dual_presentation(mod)
    c = concentrated(realize(pres), degree=len(rels))
    logger.debug(f"duality: {len(rels)} relations, ledger {duality_ledger(lines, m)}")
    return TransformResult(c, m, duality_ledger(lines, m), lines, [f"dual of {len(rels)}-relation module"])


def normalized_relations(mod: ModulePresentation) -> frozenset:
    """Relations of a cyclic module scaled so the largest monomial has coefficient 1."""
    out = set()
    for r in mod.cyclic_relations():
        if r.is_zero():
            continue
        lead = max(r.terms)
        out.add(r * (Fraction(1) / r.terms[lead]))
    return frozenset(out)
