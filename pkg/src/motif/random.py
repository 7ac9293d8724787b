# src/motif/random.py
"""Seeded random motifs and valid morphisms for the property harnesses."""

import logging
import random
from fractions import Fraction
from typing import List, Optional

from .. import config
from ..arith import FactoredRational, IntMatrix, RatMatrix
from ..arith.factored import monomial_value
from .duality import cartier_dual, dual_morphism
from .motif import LinearMotif, MotifMorphism

logger = logging.getLogger(__name__)


class MotifSampler:
    """All draws go through one random.Random so a seed fixes every report."""

    def __init__(self, seed: int = config.DEFAULT_SEED, height: int = config.RANDOM_HEIGHT,
                 max_dim: int = config.RANDOM_MAX_DIM):
        self.rng = random.Random(seed)
        self.height = height
        self.max_dim = max_dim

    # ── scalars ────────────────────────────────────────────────────
    def integer(self, height: Optional[int] = None) -> int:
        h = self.height if height is None else height
        return self.rng.randint(-h, h)

    def rational(self) -> Fraction:
        den = self.rng.choice((1, 1, 1, 2, 3))
        return Fraction(self.integer(), den)

    def torus_point(self, positive: bool = True) -> FactoredRational:
        exps = {p: self.rng.randint(-2, 2) for p in config.RANDOM_PRIMES if self.rng.random() < 0.4}
        sign = 1 if positive or self.rng.random() < 0.5 else -1
        return FactoredRational(sign, tuple(exps.items()))

    def rat_matrix(self, rows: int, cols: int) -> RatMatrix:
        return RatMatrix(rows, cols, tuple(self.rational() for _ in range(rows * cols)))

    def int_matrix(self, rows: int, cols: int, height: int = 3) -> IntMatrix:
        return IntMatrix(rows, cols, tuple(self.integer(height) for _ in range(rows * cols)))

    def dims(self) -> List[int]:
        return [self.rng.randint(0, self.max_dim) for _ in range(4)]

    # ── motifs ─────────────────────────────────────────────────────
    def motif(self, dims=None, positive: bool = True) -> LinearMotif:
        dV, dT, dC, rL = dims if dims is not None else self.dims()
        tor = [[self.torus_point(positive) for _ in range(rL)] for _ in range(dT)]
        return LinearMotif(dV, dT, dC, rL, self.rat_matrix(dV, dC), self.rat_matrix(dT, dC),
                           self.rat_matrix(dV, rL), tor)

    # ── morphisms ──────────────────────────────────────────────────
    def morphism_into(self, target: LinearMotif, degree: int = 1, positive: bool = True,
                      pad_v: int = 0, pad_t: int = 0) -> MotifMorphism:
        """
        A valid morphism into ``target`` padded by ``pad_v``/``pad_t`` zero
        coordinates. Vector and torus blocks have the shape [I | R] and
        [degree*I | S]; formal and lattice blocks are arbitrary. For degree > 1
        the torus points of ``target`` are replaced by their degree-th powers.
        """
        base = target
        dC1 = self.rng.randint(0, self.max_dim)
        rL1 = self.rng.randint(0, self.max_dim)
        kv = self.rng.randint(0, 2)
        kt = self.rng.randint(0, 2)
        fC = self.rat_matrix(base.dC, dC1)
        fL = self.int_matrix(base.rL, rL1)

        if degree != 1:
            # target torus points become degree-th powers so roots exist
            tor = tuple(tuple(v ** degree for v in row) for row in base.uet_tor)
            base = LinearMotif(base.dV, base.dT, base.dC, base.rL, base.u0_vec, base.u0_tor,
                               base.uet_vec, tor)

        r = self.rat_matrix(base.dV, kv)
        z = self.rat_matrix(kv, dC1)
        w = self.rat_matrix(kv, rL1)
        u0_vec = (base.u0_vec @ fC - r @ z).vstack(z)
        uet_vec = (base.uet_vec @ fL.to_rat() - r @ w).vstack(w)
        fV = RatMatrix.identity(base.dV).hstack(r)

        s = self.int_matrix(base.dT, kt)
        z2 = self.rat_matrix(kt, dC1)
        top = (base.u0_tor @ fC - s.to_rat() @ z2).scale(Fraction(1, degree))
        u0_tor = top.vstack(z2)
        fT = IntMatrix.identity(base.dT).scale(degree).hstack(s)

        # torus points of the source: (a; b) with a^degree * b^S = target value
        cols = []
        for j in range(rL1):
            q = base.uet_tor_at(fL.column(j))
            roots = [self.torus_point(True) for _ in range(kt)]
            b = [c ** degree for c in roots]
            a = []
            for i in range(base.dT):
                lifted = self._root(q[i], degree) / monomial_value(roots, s.row(i))
                if not positive and degree % 2 == 0 and self.rng.random() < 0.5:
                    lifted = FactoredRational(-lifted.sign, lifted.factors)
                a.append(lifted)
            cols.append(a + b)
        tor1 = [[cols[j][i] for j in range(rL1)] for i in range(base.dT + kt)]
        source = LinearMotif(base.dV + kv, base.dT + kt, dC1, rL1, u0_vec, u0_tor, uet_vec, tor1)

        target_padded = self.pad(base, pad_v, pad_t)
        fV = fV.vstack(RatMatrix.zeros(pad_v, fV.cols))
        fT = fT.vstack(IntMatrix.zeros(pad_t, fT.cols))
        return MotifMorphism(source, target_padded, fV, fT, fC, fL)

    @staticmethod
    def _root(value: FactoredRational, degree: int) -> FactoredRational:
        if degree == 1:
            return value
        if any(e % degree for _, e in value.factors) or (value.sign < 0 and degree % 2 == 0):
            raise ValueError(f"{value} has no rational {degree}-th root")
        sign = value.sign if degree % 2 else 1
        return FactoredRational(sign, tuple((p, e // degree) for p, e in value.factors))

    @staticmethod
    def pad(m: LinearMotif, pad_v: int, pad_t: int) -> LinearMotif:
        """Extra vector and torus coordinates on which the structure map is trivial."""
        if not pad_v and not pad_t:
            return m
        one = FactoredRational()
        tor = [list(row) for row in m.uet_tor] + [[one] * m.rL for _ in range(pad_t)]
        return LinearMotif(m.dV + pad_v, m.dT + pad_t, m.dC, m.rL,
                           m.u0_vec.vstack(RatMatrix.zeros(pad_v, m.dC)),
                           m.u0_tor.vstack(RatMatrix.zeros(pad_t, m.dC)),
                           m.uet_vec.vstack(RatMatrix.zeros(pad_v, m.rL)), tor)

    def morphism(self, degree: Optional[int] = None) -> MotifMorphism:
        """A random valid morphism with a random target, possibly padded."""
        if degree is None:
            degree = self.rng.choice((1, 1, 2))
        target = self.motif()
        return self.morphism_into(target, degree=degree,
                                  pad_v=self.rng.randint(0, 1), pad_t=self.rng.randint(0, 1))

    def morphism_from(self, source: LinearMotif) -> MotifMorphism:
        """A valid morphism out of ``source``, built as the dual of one into its dual."""
        return dual_morphism(self.morphism_into(cartier_dual(source)))
