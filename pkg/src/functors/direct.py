# src/functors/direct.py
"""
Direct image along a morphism of motifs, computed through the canonical
factorization: restriction along f_G, Lie induction, Koszul complex of the
killed Lie block, lattice induction, Koszul complex of the killed lattice block.
"""

import logging
from fractions import Fraction
from typing import Callable, Optional

from ..homology.complexes import FreeComplex, FunctionMap, koszul_total
from ..homology.modules import InducedLattice, InducedLie, RealizedModule
from ..motif.motif import MotifMorphism, require_valid
from .factorization import CanonicalFactorization
from .result import Input, TransformResult, as_transform
from .twist import BlockLines, push_ledger

logger = logging.getLogger(__name__)


def induced_complex(c: FreeComplex, wrap: Callable[[RealizedModule], RealizedModule],
                    algebra, reach: int) -> FreeComplex:
    """Apply an induction functor termwise; keys (a, k) carry d to (a, d k)."""
    terms = {i: wrap(t) for i, t in c.terms.items()}

    def lifted(i):
        def fn(key):
            head, k = key
            return {(head, k2): v for k2, v in c.d(i, {k: Fraction(1)}).items()}
        return FunctionMap(fn)

    maps = {i: lifted(i) for i in c.maps}
    return FreeComplex(terms, maps, c.margin, algebra, reach)


def pushforward(f: MotifMorphism, module: Input, lines1: Optional[BlockLines] = None,
                lines2: Optional[BlockLines] = None) -> TransformResult:
    """f_* of a module (presentation, realized module, complex or earlier result) over f.source."""
    require_valid(f)
    src = as_transform(module, f.source, lines1)
    lines1 = src.lines
    lines2 = lines2 or BlockLines.canonical(f.target)
    fac = CanonicalFactorization(f)
    m1 = f.source
    stages = list(src.stages)

    c = src.complex.restrict(fac.group_pullback_map())
    stages.append("restrict along f_G")

    an2p = fac.an2p
    c = induced_complex(c, lambda t: InducedLie(t, an2p, f.fC, m1.dC), an2p, c.reach + 1)
    c = koszul_total(c, [an2p.xi(a) for a in range(m1.dC)])
    c = c.restrict(fac.lie_quotient_section())
    stages.append(f"Lie induction and Koszul over {m1.dC} derivations")

    an2 = fac.an2
    spread = max((sum(abs(v) for v in f.fL.column(e)) for e in range(m1.rL)), default=0)
    c = induced_complex(c, lambda t: InducedLattice(t, an2, f.fL), an2, c.reach + spread)
    c = koszul_total(c, [1 - an2.s(e) for e in range(m1.rL)])
    c = c.restrict(fac.lattice_quotient_section())
    stages.append(f"lattice induction and Koszul over {m1.rL} shifts")

    ledger = src.ledger + push_ledger(lines1, lines2)
    logger.debug(f"pushforward ledger {ledger}")
    return TransformResult(c, f.target, ledger, lines2, stages)
