# src/functors/inverse.py
"""
Inverse image along a morphism of motifs. The formal steps of the canonical
factorization are plain restrictions of scalars; the group step f_G is handled
by one of three routes:

  iso              restriction along the inverse algebra isomorphism
  split surjective O_K (x) N over K x M2'', restricted along M1 ~ K x M2''
  general          Koszul complex of the graph of f_G inside O_M1 (x) N
"""

import logging
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from ..algebra.ore import AlgebraMap, MotifAlgebra, algebra_from_motif
from ..arith import IntMatrix, RatMatrix, snf
from ..arith.lattice import is_split_surjective, is_unimodular
from ..arith.linalg import is_surjective, rank, solve
from ..homology.complexes import FreeComplex, concentrated, koszul_total, tensor_complexes
from ..homology.modules import CyclicModule
from ..motif.motif import LinearMotif, MotifMorphism, require_valid
from ..utils.errors import ValidationError
from .factorization import CanonicalFactorization, shift_monomial, torus_image, torus_monomial
from .result import Input, TransformResult, as_transform
from .twist import BlockLines, pull_ledger

logger = logging.getLogger(__name__)


class GroupRoute(str, Enum):
    ISO = "iso"
    SPLIT_SURJECTIVE = "split_surjective"
    GENERAL = "general"

    @classmethod
    def for_morphism(cls, f: MotifMorphism) -> "GroupRoute":
        fV, fT = f.fV, f.fT
        if fV.rows == fV.cols and fT.rows == fT.cols and rank(fV) == fV.rows and is_unimodular(fT):
            return cls.ISO
        if is_surjective(fV) and is_split_surjective(fT):
            return cls.SPLIT_SURJECTIVE
        return cls.GENERAL


def structure_sheaf(alg: MotifAlgebra) -> CyclicModule:
    """O_M: derivations act by 0, lattice shifts by 1."""
    kills = {("xi", a): Fraction(0) for a in range(alg.nxi)}
    kills.update({("s", e): Fraction(1) for e in range(alg.ns)})
    return CyclicModule(alg, kills)


def _linear_form(alg: MotifAlgebra, coeffs, offset: int = 0):
    e = alg.zero()
    for k, c in enumerate(coeffs):
        if c:
            e = e + alg.x(offset + k) * c
    return e


def _integer_inverse(n: IntMatrix) -> IntMatrix:
    inv = solve(n.to_rat(), RatMatrix.identity(n.rows))
    if inv is None:
        raise ValidationError("torus map is not invertible")
    return inv.to_int()


def _complement_rows(fV: RatMatrix) -> RatMatrix:
    """Standard basis rows P such that [P; fV] is invertible."""
    chosen: List[int] = []
    stack = fV
    for k in range(fV.cols):
        row = RatMatrix.from_rows([[1 if j == k else 0 for j in range(fV.cols)]], fV.cols)
        trial = stack.vstack(row)
        if rank(trial) > rank(stack):
            chosen.append(k)
            stack = trial
        if stack.rows == fV.cols:
            break
    return RatMatrix.from_rows([[1 if j == k else 0 for j in range(fV.cols)] for k in chosen], fV.cols)


def _torus_splitting(fT: IntMatrix) -> Tuple[IntMatrix, IntMatrix]:
    """
    W unimodular with fT W = [I 0], and the rows of W^-1 past dT2, which
    project T1 onto the kernel torus.
    """
    d1, d2 = fT.cols, fT.rows
    if d2 == 0:
        return IntMatrix.identity(d1), IntMatrix.identity(d1)
    s = snf(fT)
    w = (s.V.col_block(0, d2) @ s.U).hstack(s.V.col_block(d2, d1))
    return w, s.V_inv.row_block(d2, d1)


# ── group routes ──────────────────────────────────────────────────
def _iso_route(c: FreeComplex, f: MotifMorphism, src: MotifAlgebra, tgt: MotifAlgebra) -> FreeComplex:
    """src = A_M1, tgt = A_M2''; restrict along A_M1 -> A_M2''."""
    v_inv = solve(f.fV, RatMatrix.identity(f.fV.rows))
    t_inv = _integer_inverse(f.fT)
    images = {("x", k): _linear_form(tgt, v_inv.row(k)) for k in range(src.nx)}
    images.update({("t", j, 1): torus_monomial(tgt, t_inv.row(j)) for j in range(src.nt)})
    images.update({("xi", a): tgt.xi(a) for a in range(src.nxi)})
    images.update({("s", e, 1): tgt.s(e) for e in range(src.ns)})
    return c.restrict(AlgebraMap(src, tgt, images))


def kernel_motif(f: MotifMorphism, w_rows: IntMatrix, p: RatMatrix) -> LinearMotif:
    """The kernel of a split surjective f_G, carrying the whole formal part of the source."""
    m1 = f.source
    return LinearMotif(m1.dV - f.target.dV, m1.dT - f.target.dT, m1.dC, m1.rL,
                       p @ m1.u0_vec, w_rows.to_rat() @ m1.u0_tor, p @ m1.uet_vec,
                       torus_image(w_rows, m1.uet_tor, m1.rL))


def _split_route(c: FreeComplex, f: MotifMorphism, src: MotifAlgebra) -> FreeComplex:
    m1 = f.source
    p = _complement_rows(f.fV)
    bs = solve(p.vstack(f.fV), RatMatrix.identity(m1.dV))
    w, w_rows = _torus_splitting(f.fT)
    mk = kernel_motif(f, w_rows, p)
    ak = algebra_from_motif(mk)
    tensor = tensor_complexes(concentrated(structure_sheaf(ak)), c)
    tgt = tensor.algebra
    dvk, dtk, d2 = mk.dV, mk.dT, f.target.dT

    images = {("x", k): _linear_form(tgt, bs.row(k)) for k in range(src.nx)}
    for j in range(src.nt):
        beta = [w[j, d2 + m] for m in range(dtk)] + [w[j, i] for i in range(d2)]
        images[("t", j, 1)] = torus_monomial(tgt, beta)
    for a in range(src.nxi):
        images[("xi", a)] = tgt.xi(a) + tgt.xi(m1.dC + a)
    for e in range(src.ns):
        delta = [1 if k in (e, m1.rL + e) else 0 for k in range(2 * m1.rL)]
        images[("s", e, 1)] = shift_monomial(tgt, delta)
    logger.debug(f"split route: kernel dims V={dvk} T={dtk}")
    return tensor.restrict(AlgebraMap(src, tgt, images))


def diagonal_restriction(src: MotifAlgebra, tgt: MotifAlgebra) -> AlgebraMap:
    """A_M1 -> A_{M1 x M2''} on the first group factor, diagonal on the shared formal part."""
    m1 = src.motif
    images = {("x", i): tgt.x(i) for i in range(src.nx)}
    images.update({("t", j, 1): tgt.t(j) for j in range(src.nt)})
    images.update({("xi", a): tgt.xi(a) + tgt.xi(m1.dC + a) for a in range(src.nxi)})
    for e in range(src.ns):
        delta = [1 if k in (e, m1.rL + e) else 0 for k in range(2 * m1.rL)]
        images[("s", e, 1)] = shift_monomial(tgt, delta)
    return AlgebraMap(src, tgt, images)


def _general_route(c: FreeComplex, f: MotifMorphism, src: MotifAlgebra) -> FreeComplex:
    m1 = f.source
    tensor = tensor_complexes(concentrated(structure_sheaf(src)), c)
    tgt = tensor.algebra
    graph = []
    for i in range(f.target.dV):
        graph.append(_linear_form(tgt, f.fV.row(i)) - tgt.x(m1.dV + i))
    for j in range(f.target.dT):
        beta = [-v for v in f.fT.row(j)] + [1 if k == j else 0 for k in range(f.target.dT)]
        graph.append(1 - torus_monomial(tgt, beta))
    k = koszul_total(tensor, graph)
    return k.restrict(diagonal_restriction(src, tgt))


# ── the functor ───────────────────────────────────────────────────
def pullback(f: MotifMorphism, module: Input, lines1: Optional[BlockLines] = None,
             lines2: Optional[BlockLines] = None, route: Optional[GroupRoute] = None) -> TransformResult:
    """f^! of a module (presentation, realized module, complex or earlier result) over f.target."""
    require_valid(f)
    tgt = as_transform(module, f.target, lines2)
    lines2 = tgt.lines
    lines1 = lines1 or BlockLines.canonical(f.source)
    fac = CanonicalFactorization(f)
    stages = list(tgt.stages)

    c = tgt.complex.restrict(fac.lattice_kill_map())
    c = c.restrict(fac.lattice_inclusion_map())
    stages.append(f"restrict through the lattice steps ({f.source.rL} + {f.target.rL})")
    c = c.restrict(fac.lie_kill_map())
    c = c.restrict(fac.lie_inclusion_map())
    stages.append(f"restrict through the Lie steps ({f.source.dC} + {f.target.dC})")

    route = route or GroupRoute.for_morphism(f)
    if route == GroupRoute.ISO:
        c = _iso_route(c, f, fac.a1, fac.a2pp)
    elif route == GroupRoute.SPLIT_SURJECTIVE:
        c = _split_route(c, f, fac.a1)
    else:
        c = _general_route(c, f, fac.a1)
    stages.append(f"group step via {route.value}")

    ledger = tgt.ledger + pull_ledger(f, lines1, lines2)
    logger.debug(f"pullback ledger {ledger}")
    return TransformResult(c, f.source, ledger, lines1, stages)
