# src/motif/exact.py
"""Kernels, cokernels, strictness and exactness in the exact category of linear motifs."""

import logging
from typing import List, Optional, Tuple

from ..arith import (IntMatrix, RatMatrix, int_kernel, int_solve, mult_relations,
                     quotient_projection, snf, torsion_generators, torus_apply)
from ..arith.factored import monomial_value
from ..arith.lattice import is_split_injective, is_split_surjective
from ..arith.linalg import is_injective, is_surjective, nullspace, rank, right_inverse, solve, solve_left
from ..utils.errors import ValidationError
from .motif import LinearMotif, MotifMorphism, compose, require_valid, torus_column

logger = logging.getLogger(__name__)


def _left_null(m: RatMatrix) -> RatMatrix:
    """Rows span the annihilator of the column space of m."""
    return nullspace(m.transpose()).transpose()


def _integral_left_inverse(k: IntMatrix) -> IntMatrix:
    """P with P k = I for a saturated k of full column rank."""
    if k.cols == 0:
        return IntMatrix.zeros(0, k.rows)
    s = snf(k)
    return s.V @ s.U.row_block(0, k.cols)


def _solve_or_fail(a: RatMatrix, b: RatMatrix, what: str) -> RatMatrix:
    x = solve(a, b)
    if x is None:
        raise ValidationError(f"{what}: no solution")
    return x


def kernel(f: MotifMorphism) -> Tuple[LinearMotif, MotifMorphism]:
    """Kernel motif of f and its inclusion into f.source."""
    require_valid(f)
    s = f.source
    kv = nullspace(f.fV)
    kt = int_kernel(f.fT)
    kc = nullspace(f.fC)

    # Characters vanishing on the subtorus with cocharacters kt.
    kt_perp = int_kernel(kt.transpose()) if kt.rows else IntMatrix.zeros(0, 0)
    kl = int_kernel(f.fL)
    points = []
    for m in range(kl.cols):
        p = s.uet_tor_at(kl.column(m))
        points.append([monomial_value(p, kt_perp.column(c)) for c in range(kt_perp.cols)])
    relations = mult_relations(points) if points else IntMatrix.zeros(0, 0)
    incl_l = kl @ relations if kl.cols else IntMatrix.zeros(s.rL, 0)

    u0_vec = _solve_or_fail(kv, s.u0_vec @ kc, "kernel u0_vec")
    u0_tor = _solve_or_fail(kt.to_rat(), s.u0_tor @ kc, "kernel u0_tor")
    uet_vec = _solve_or_fail(kv, s.uet_vec @ incl_l.to_rat(), "kernel uet_vec")
    back = _integral_left_inverse(kt)
    uet_tor = []
    for j in range(incl_l.cols):
        uet_tor.append(torus_apply(back, s.uet_tor_at(incl_l.column(j))))
    tor_rows = [[uet_tor[j][i] for j in range(incl_l.cols)] for i in range(kt.cols)]

    k_motif = LinearMotif(kv.cols, kt.cols, kc.cols, incl_l.cols, u0_vec, u0_tor, uet_vec, tor_rows)
    inclusion = MotifMorphism(k_motif, s, kv, kt, kc, incl_l)
    require_valid(inclusion)
    logger.debug(f"kernel: {k_motif!r}")
    return k_motif, inclusion


def cokernel(f: MotifMorphism) -> Tuple[LinearMotif, MotifMorphism]:
    """Cokernel motif of f and the projection from f.target."""
    require_valid(f)
    t = f.target
    pv = _left_null(f.fV)
    pc = _left_null(f.fC)
    sc = right_inverse(pc)
    pl, sl = quotient_projection(f.fL)

    # Characters of the target torus killing the image, then those also
    # killing the (sign-valued) images of the etale torsion.
    lam = int_kernel(f.fT.transpose()) if t.dT else IntMatrix.zeros(0, 0)
    torsion = [g for g, _ in torsion_generators(f.fL)]
    torsion_points = [t.uet_tor_at(g) for g in torsion]
    points = [[monomial_value(p, lam.column(m)) for p in torsion_points] for m in range(lam.cols)]
    relations = mult_relations(points) if points else IntMatrix.zeros(0, 0)
    characters = lam @ relations if lam.cols else IntMatrix.zeros(t.dT, 0)
    pt = characters.transpose()

    u0_vec = pv @ t.u0_vec @ sc
    u0_tor = pt.to_rat() @ t.u0_tor @ sc
    uet_vec = pv @ t.uet_vec @ sl.to_rat()
    cols = [torus_apply(pt, t.uet_tor_at(sl.column(j))) for j in range(sl.cols)]
    tor_rows = [[cols[j][i] for j in range(sl.cols)] for i in range(pt.rows)]

    c_motif = LinearMotif(pv.rows, pt.rows, pc.rows, pl.rows, u0_vec, u0_tor, uet_vec, tor_rows)
    proj = MotifMorphism(t, c_motif, pv, pt, pc, pl)
    require_valid(proj)
    logger.debug(f"cokernel: {c_motif!r}")
    return c_motif, proj


def factor_through_kernel(f: MotifMorphism, g: MotifMorphism) -> MotifMorphism:
    """The unique h with kernel_inclusion(f) o h = g, for g with f o g = 0."""
    if not compose(f, g).is_zero():
        raise ValidationError("factor_through_kernel: f o g is not zero")
    k_motif, incl = kernel(f)
    hv = _solve_or_fail(incl.fV, g.fV, "factor fV")
    hc = _solve_or_fail(incl.fC, g.fC, "factor fC")
    ht = int_solve(incl.fT, g.fT)
    hl = int_solve(incl.fL, g.fL)
    if ht is None or hl is None:
        raise ValidationError("factor_through_kernel: no integral factorization")
    h = MotifMorphism(g.source, k_motif, hv, ht, hc, hl)
    require_valid(h)
    return h


def factor_through_cokernel(f: MotifMorphism, g: MotifMorphism) -> MotifMorphism:
    """The unique h with h o cokernel_projection(f) = g, for g with g o f = 0."""
    if not compose(g, f).is_zero():
        raise ValidationError("factor_through_cokernel: g o f is not zero")
    c_motif, proj = cokernel(f)
    hv = solve_left(proj.fV, g.fV)
    hc = solve_left(proj.fC, g.fC)
    ht = int_solve(proj.fT.transpose(), g.fT.transpose())
    hl = int_solve(proj.fL.transpose(), g.fL.transpose())
    if hv is None or hc is None:
        raise ValidationError("factor_through_cokernel: no rational factorization")
    if ht is None or hl is None:
        raise ValidationError("factor_through_cokernel: no integral factorization")
    h = MotifMorphism(c_motif, g.target, hv, ht.transpose(), hc, hl.transpose())
    require_valid(h)
    return h


def is_strict_mono(f: MotifMorphism) -> bool:
    """Injective blocks, trivial kernel on the torus and torsion-free lattice cokernel."""
    require_valid(f)
    return (is_injective(f.fV) and is_injective(f.fC)
            and is_split_injective(f.fT) and is_split_injective(f.fL))


def is_strict_epi(f: MotifMorphism) -> bool:
    """Surjective blocks and a connected kernel on the torus."""
    require_valid(f)
    torus_ok = rank(f.fT) == f.fT.rows and not snf(f.fT).torsion if f.fT.rows else True
    return (is_surjective(f.fV) and is_surjective(f.fC)
            and is_split_surjective(f.fL) and torus_ok)


def is_exact(f: MotifMorphism, g: MotifMorphism) -> bool:
    """
    True iff M' -f-> M -g-> M'' is a short exact sequence: f is a kernel of g
    and g a cokernel of f, each up to the canonical comparison isomorphism.
    """
    require_valid(f)
    require_valid(g)
    if f.target != g.source:
        raise ValidationError("is_exact: morphisms are not composable")
    if not compose(g, f).is_zero():
        raise ValidationError("is_exact: composite is not zero")
    try:
        left = factor_through_kernel(g, f)
        right = factor_through_cokernel(f, g)
    except ValidationError as e:
        logger.debug(f"is_exact: comparison map missing: {e}")
        return False
    return left.is_iso() and right.is_iso()


def failing_blocks(f: MotifMorphism, g: MotifMorphism) -> List[str]:
    """Blocks where the sequence is not exact, for reports."""
    out = []
    for name in ("fV", "fT", "fC", "fL"):
        a, b = getattr(f, name), getattr(g, name)
        if rank(a) + rank(b) != a.rows or not is_injective(a) or not is_surjective(b):
            out.append(name)
    return out
