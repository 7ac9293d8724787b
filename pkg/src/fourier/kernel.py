# src/fourier/kernel.py
"""
The Poincare kernel on M' x M.

Coordinates of the product algebra, M' first:

    x'  : 0 .. dC-1        x  : dC .. dC+dV-1
    t'  : 0 .. rL-1        t  : rL .. rL+dT-1
    xi' : 0 .. dV-1        xi : dV .. dV+dC-1
    s'  : 0 .. dT-1        s  : dT .. dT+rL-1

Twisting by the kernel is the automorphism

    xi'_i -> xi'_i + x_i      xi_a -> xi_a + x'_a
    s'_j  -> t_j s'_j          s_e  -> t'_e s_e

so the kernel itself is O_{M' x M} restricted along it.
"""

import logging
from typing import Dict, List, Tuple

from ..algebra.ore import AlgebraMap, MotifAlgebra, OreElement, algebra_from_motif
from ..algebra.presentation import ModulePresentation, cyclic_module
from ..motif.duality import cartier_dual
from ..motif.motif import LinearMotif, product

logger = logging.getLogger(__name__)


def dual_pair(m: LinearMotif) -> Tuple[LinearMotif, LinearMotif]:
    """(M', M' x M)."""
    dual = cartier_dual(m)
    return dual, product(dual, m)


def _twist_images(m: LinearMotif, alg: MotifAlgebra, sign: int) -> Dict:
    """Generator images of the kernel twist (sign=1) or of its inverse (sign=-1)."""
    images = {k: alg.gen(k) for k in alg.generator_keys() if not (len(k) == 3 and k[2] == -1)}
    for i in range(m.dV):
        images[("xi", i)] = alg.xi(i) + alg.x(m.dC + i) * sign
    for a in range(m.dC):
        images[("xi", m.dV + a)] = alg.xi(m.dV + a) + alg.x(a) * sign
    for j in range(m.dT):
        images[("s", j, 1)] = alg.t(m.rL + j, sign) * alg.s(j)
    for e in range(m.rL):
        images[("s", m.dT + e, 1)] = alg.t(e, sign) * alg.s(m.dT + e)
    return images


def kernel_automorphism(m: LinearMotif, inverse: bool = False) -> AlgebraMap:
    """The kernel twist of the algebra of M' x M."""
    _, p = dual_pair(m)
    alg = algebra_from_motif(p)
    return AlgebraMap(alg, alg, _twist_images(m, alg, -1 if inverse else 1))


def kernel_relations(m: LinearMotif) -> List[OreElement]:
    """
    Annihilator of the kernel's generator: xi' - x, xi - x', s' - t, s - t'.
    Each derivation acts as itself plus the pairing, each shift multiplies by
    the dual torus coordinate.
    """
    _, p = dual_pair(m)
    alg = algebra_from_motif(p)
    rels = [alg.xi(i) - alg.x(m.dC + i) for i in range(m.dV)]
    rels += [alg.xi(m.dV + a) - alg.x(a) for a in range(m.dC)]
    rels += [alg.s(j) - alg.t(m.rL + j) for j in range(m.dT)]
    rels += [alg.s(m.dT + e) - alg.t(e) for e in range(m.rL)]
    return rels


def kernel_module(m: LinearMotif) -> ModulePresentation:
    """The rank-one kernel module over the algebra of M' x M."""
    _, p = dual_pair(m)
    return cyclic_module(algebra_from_motif(p), kernel_relations(m))


def bi_extension_failures(m: LinearMotif) -> List[str]:
    """
    Pairs of twisted generators, one from each side, that fail to commute after
    normal form; empty when the two structures are compatible.
    """
    dual, p = dual_pair(m)
    alg = algebra_from_motif(p)
    theta = kernel_automorphism(m)
    primed = [("xi", i) for i in range(m.dV)] + [("s", j, 1) for j in range(m.dT)] + \
             [("x", a) for a in range(m.dC)] + [("t", e, 1) for e in range(m.rL)]
    plain = [("xi", m.dV + a) for a in range(m.dC)] + [("s", m.dT + e, 1) for e in range(m.rL)] + \
            [("x", m.dC + i) for i in range(m.dV)] + [("t", m.rL + j, 1) for j in range(m.dT)]
    failures = []
    for k1 in primed:
        for k2 in plain:
            if not alg.commutator(theta.images[k1], theta.images[k2]).is_zero():
                failures.append(f"{k1}/{k2}")
    if failures:
        logger.warning(f"kernel of {m!r}: {len(failures)} incompatible pairs")
    return failures
