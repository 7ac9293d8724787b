# src/motif/duality.py
"""Cartier duality of linear motifs: every block is transposed, no signs inserted."""

import logging

from .motif import LinearMotif, MotifMorphism, require_valid

logger = logging.getLogger(__name__)


def cartier_dual(m: LinearMotif) -> LinearMotif:
    """
    Exchanges V with the formal vector group and T with the lattice:
    dV' = dC, dT' = rL, dC' = dV, rL' = dT.
    """
    tor = [[m.uet_tor[i][j] for i in range(m.dT)] for j in range(m.rL)]
    return LinearMotif(m.dC, m.rL, m.dV, m.dT,
                       m.u0_vec.transpose(), m.uet_vec.transpose(), m.u0_tor.transpose(), tor)


def dual_morphism(f: MotifMorphism) -> MotifMorphism:
    """f: M1 -> M2 gives f': M2' -> M1'."""
    require_valid(f)
    return MotifMorphism(cartier_dual(f.target), cartier_dual(f.source),
                         f.fC.transpose(), f.fL.transpose(), f.fV.transpose(), f.fT.transpose())


def dimension_identity_holds(m: LinearMotif) -> bool:
    """-2 dG' + dC + rL - dG == -2 dG + dC' + rL' - dG', the integer identity behind w_M' = w_M."""
    d = cartier_dual(m)
    return -2 * d.dG + m.dC + m.rL - m.dG == -2 * m.dG + d.dC + d.rL - d.dG
