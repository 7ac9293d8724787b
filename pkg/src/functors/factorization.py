# src/functors/factorization.py
"""
Canonical factorization of a morphism f: M1 -> M2 into five elementary steps

    M1 -(1)-> M2'' -(2)-> N2' -(3)-> M2' -(4)-> N2 -(5)-> M2

(1) changes only the group part, (2) is a split injection of connected formal
parts, (3) kills the first Lie block, (4) is a split injection of lattices and
(5) kills the first lattice block. The algebra maps between consecutive
algebras are built here; the functors decide which way to restrict.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict

from ..algebra.ore import AlgebraMap, MotifAlgebra, algebra_from_motif
from ..arith import FactoredRational, IntMatrix, RatMatrix, torus_apply
from ..motif.motif import LinearMotif, MotifMorphism, compose, require_valid, torus_column

logger = logging.getLogger(__name__)


def _zeros_then(left_cols: int, block: RatMatrix) -> RatMatrix:
    return RatMatrix.zeros(block.rows, left_cols).hstack(block)


def torus_image(f_t: IntMatrix, block, ncols: int) -> tuple:
    """Columns of a torus block pushed through a torus map, as a torus block."""
    cols = [torus_apply(f_t, torus_column(block, e)) for e in range(ncols)]
    return tuple(tuple(cols[e][j] for e in range(ncols)) for j in range(f_t.rows))


def _identity_images(src: MotifAlgebra, tgt: MotifAlgebra, skip=()) -> Dict:
    images = {}
    for i in range(src.nx):
        images[("x", i)] = tgt.x(i)
    for j in range(src.nt):
        images[("t", j, 1)] = tgt.t(j)
    if "xi" not in skip:
        for a in range(src.nxi):
            images[("xi", a)] = tgt.xi(a)
    if "s" not in skip:
        for e in range(src.ns):
            images[("s", e, 1)] = tgt.s(e)
    return images


def shift_monomial(alg: MotifAlgebra, delta) -> "OreElement":
    zx, zt, zxi, _ = alg.unit_monomial()
    return alg.element({(zx, zt, zxi, tuple(delta)): 1})


def torus_monomial(alg: MotifAlgebra, beta) -> "OreElement":
    zx, _, zxi, zs = alg.unit_monomial()
    return alg.element({(zx, tuple(beta), zxi, zs): 1})


@dataclass(frozen=True)
class CanonicalFactorization:
    f: MotifMorphism

    def __post_init__(self):
        require_valid(self.f)

    # ── intermediate motifs ────────────────────────────────────────
    @cached_property
    def m2pp(self) -> LinearMotif:
        """(G2, formal part of M1) with u = f_G o u1."""
        f, m1 = self.f, self.f.source
        return LinearMotif(f.target.dV, f.target.dT, m1.dC, m1.rL,
                           f.fV @ m1.u0_vec, f.fT.to_rat() @ m1.u0_tor, f.fV @ m1.uet_vec,
                           torus_image(f.fT, m1.uet_tor, m1.rL))

    @cached_property
    def n2p(self) -> LinearMotif:
        m1, m2, mpp = self.f.source, self.f.target, self.m2pp
        return LinearMotif(m2.dV, m2.dT, m1.dC + m2.dC, m1.rL,
                           _zeros_then(m1.dC, m2.u0_vec), _zeros_then(m1.dC, m2.u0_tor),
                           mpp.uet_vec, mpp.uet_tor)

    @cached_property
    def m2p(self) -> LinearMotif:
        m1, m2, mpp = self.f.source, self.f.target, self.m2pp
        return LinearMotif(m2.dV, m2.dT, m2.dC, m1.rL, m2.u0_vec, m2.u0_tor, mpp.uet_vec, mpp.uet_tor)

    @cached_property
    def n2(self) -> LinearMotif:
        m1, m2 = self.f.source, self.f.target
        tor = tuple(tuple(FactoredRational() for _ in range(m1.rL)) + tuple(row) for row in m2.uet_tor)
        return LinearMotif(m2.dV, m2.dT, m2.dC, m1.rL + m2.rL, m2.u0_vec, m2.u0_tor,
                           _zeros_then(m1.rL, m2.uet_vec), tor)

    # ── the five morphisms ─────────────────────────────────────────
    def steps(self):
        f, m1, m2 = self.f, self.f.source, self.f.target
        eye_r, eye_i = RatMatrix.identity, IntMatrix.identity
        c1 = MotifMorphism(m1, self.m2pp, f.fV, f.fT, eye_r(m1.dC), eye_i(m1.rL))
        c2 = MotifMorphism(self.m2pp, self.n2p, eye_r(m2.dV), eye_i(m2.dT),
                           eye_r(m1.dC).vstack(f.fC), eye_i(m1.rL))
        c3 = MotifMorphism(self.n2p, self.m2p, eye_r(m2.dV), eye_i(m2.dT),
                           _zeros_then(m1.dC, eye_r(m2.dC)), eye_i(m1.rL))
        c4 = MotifMorphism(self.m2p, self.n2, eye_r(m2.dV), eye_i(m2.dT), eye_r(m2.dC),
                           eye_i(m1.rL).vstack(f.fL))
        c5 = MotifMorphism(self.n2, m2, eye_r(m2.dV), eye_i(m2.dT), eye_r(m2.dC),
                           IntMatrix.zeros(m2.rL, m1.rL).hstack(eye_i(m2.rL)))
        return [c1, c2, c3, c4, c5]

    def recomposed(self) -> MotifMorphism:
        out = None
        for step in self.steps():
            out = step if out is None else compose(step, out)
        return out

    # ── algebras ───────────────────────────────────────────────────
    @property
    def a1(self) -> MotifAlgebra:
        return algebra_from_motif(self.f.source)

    @property
    def a2(self) -> MotifAlgebra:
        return algebra_from_motif(self.f.target)

    @property
    def a2pp(self) -> MotifAlgebra:
        return algebra_from_motif(self.m2pp)

    @property
    def an2p(self) -> MotifAlgebra:
        return algebra_from_motif(self.n2p)

    @property
    def a2p(self) -> MotifAlgebra:
        return algebra_from_motif(self.m2p)

    @property
    def an2(self) -> MotifAlgebra:
        return algebra_from_motif(self.n2)

    # ── algebra maps used by direct images ─────────────────────────
    def group_pullback_map(self) -> AlgebraMap:
        """A_{M2''} -> A_{M1}: functions pulled back along f_G, formal generators fixed."""
        f, src, tgt = self.f, self.a2pp, self.a1
        images = {}
        for i in range(src.nx):
            e = tgt.zero()
            for k in range(tgt.nx):
                if f.fV[i, k]:
                    e = e + tgt.x(k) * f.fV[i, k]
            images[("x", i)] = e
        for j in range(src.nt):
            images[("t", j, 1)] = torus_monomial(tgt, f.fT.row(j))
        for a in range(src.nxi):
            images[("xi", a)] = tgt.xi(a)
        for e in range(src.ns):
            images[("s", e, 1)] = tgt.s(e)
        return AlgebraMap(src, tgt, images)

    def lie_quotient_section(self) -> AlgebraMap:
        """A_{M2'} -> A_{N2'}: xi_c -> xi^(2)_c."""
        src, tgt = self.a2p, self.an2p
        images = _identity_images(src, tgt, skip=("xi",))
        n1 = self.f.source.dC
        for c in range(src.nxi):
            images[("xi", c)] = tgt.xi(n1 + c)
        return AlgebraMap(src, tgt, images)

    def lattice_quotient_section(self) -> AlgebraMap:
        """A_{M2} -> A_{N2}: s_l -> s^(2)_l."""
        src, tgt = self.a2, self.an2
        images = _identity_images(src, tgt, skip=("s",))
        n1 = self.f.source.rL
        for l in range(src.ns):
            images[("s", l, 1)] = tgt.s(n1 + l)
        return AlgebraMap(src, tgt, images)

    # ── algebra maps used by inverse images ────────────────────────
    def lattice_kill_map(self) -> AlgebraMap:
        """A_{N2} -> A_{M2}: s^(1) -> 1, s^(2) -> s."""
        src, tgt = self.an2, self.a2
        images = _identity_images(src, tgt, skip=("s",))
        n1 = self.f.source.rL
        for e in range(n1):
            images[("s", e, 1)] = tgt.one()
        for l in range(tgt.ns):
            images[("s", n1 + l, 1)] = tgt.s(l)
        return AlgebraMap(src, tgt, images)

    def lattice_inclusion_map(self) -> AlgebraMap:
        """A_{M2'} -> A_{N2}: s'_e -> s^(1)_e s^(2)^{fL e}."""
        src, tgt = self.a2p, self.an2
        images = _identity_images(src, tgt, skip=("s",))
        for e in range(src.ns):
            delta = tuple(1 if k == e else 0 for k in range(src.ns)) + tuple(self.f.fL.column(e))
            images[("s", e, 1)] = shift_monomial(tgt, delta)
        return AlgebraMap(src, tgt, images)

    def lie_kill_map(self) -> AlgebraMap:
        """A_{N2'} -> A_{M2'}: xi^(1) -> 0, xi^(2) -> xi."""
        src, tgt = self.an2p, self.a2p
        images = _identity_images(src, tgt, skip=("xi",))
        n1 = self.f.source.dC
        for a in range(n1):
            images[("xi", a)] = tgt.zero()
        for c in range(tgt.nxi):
            images[("xi", n1 + c)] = tgt.xi(c)
        return AlgebraMap(src, tgt, images)

    def lie_inclusion_map(self) -> AlgebraMap:
        """A_{M2''} -> A_{N2'}: xi''_a -> xi^(1)_a + sum_c fC[c, a] xi^(2)_c."""
        src, tgt = self.a2pp, self.an2p
        images = _identity_images(src, tgt, skip=("xi",))
        n1 = src.nxi
        for a in range(n1):
            e = tgt.xi(a)
            for c in range(self.f.target.dC):
                if self.f.fC[c, a]:
                    e = e + tgt.xi(n1 + c) * self.f.fC[c, a]
            images[("xi", a)] = e
        return AlgebraMap(src, tgt, images)
