# src/motif/motif.py
"""
Split linear generalized 1-motifs [G_formal -> G] over Q and their morphisms.

A motif has a vector part V (dim dV), a split torus T (rank dT), a connected
formal part of dimension dC and an etale lattice X of rank rL. The structure
map u is stored blockwise:

    u0_vec  dV x dC  (Lie of u into V)
    u0_tor  dT x dC  (Lie of u into Lie T)
    uet_vec dV x rL  (etale part into V(Q))
    uet_tor dT x rL  (etale part into T(Q), as factored rationals)

Torus maps are integer matrices N acting on points by t -> (prod_k t_k^{N_ik})_i,
which is also their action on cocharacters and on Lie algebras.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from ..arith import FactoredRational, IntMatrix, RatMatrix, torus_apply
from ..arith.factored import monomial_value
from ..utils.errors import CompatibilityError, ShapeMismatchError

logger = logging.getLogger(__name__)

TorusBlock = Tuple[Tuple[FactoredRational, ...], ...]


def _torus_block(rows: int, cols: int, values=None) -> TorusBlock:
    if values is None:
        return tuple(tuple(FactoredRational() for _ in range(cols)) for _ in range(rows))
    block = tuple(tuple(v if isinstance(v, FactoredRational) else FactoredRational.from_value(v)
                        for v in row) for row in values)
    if len(block) != rows or any(len(r) != cols for r in block):
        raise ShapeMismatchError(f"uet_tor must be {rows}x{cols}")
    return block


def torus_column(block: TorusBlock, j: int) -> List[FactoredRational]:
    return [row[j] for row in block]


@dataclass(frozen=True)
class LinearMotif:
    dV: int
    dT: int
    dC: int
    rL: int
    u0_vec: RatMatrix
    u0_tor: RatMatrix
    uet_vec: RatMatrix
    uet_tor: TorusBlock

    def __post_init__(self):
        for name in ("dV", "dT", "dC", "rL"):
            if getattr(self, name) < 0:
                raise ShapeMismatchError(f"{name} must be non-negative")
        expected = {
            "u0_vec": (self.dV, self.dC),
            "u0_tor": (self.dT, self.dC),
            "uet_vec": (self.dV, self.rL),
        }
        for name, shape in expected.items():
            block = getattr(self, name)
            if block.shape != shape:
                raise ShapeMismatchError(f"{name} has shape {block.shape}, expected {shape}")
            object.__setattr__(self, name, block.to_rat())
        object.__setattr__(self, "uet_tor", _torus_block(self.dT, self.rL, self.uet_tor))

    # ── constructors ───────────────────────────────────────────────
    @classmethod
    def build(cls, dV=0, dT=0, dC=0, rL=0, u0_vec=None, u0_tor=None, uet_vec=None, uet_tor=None):
        """Structure blocks default to zero (and to 1 for torus points)."""
        def rat(block, shape):
            if block is None:
                return RatMatrix.zeros(*shape)
            if isinstance(block, RatMatrix):
                return block
            return RatMatrix.from_rows(block, shape[1])
        return cls(dV, dT, dC, rL,
                   rat(u0_vec, (dV, dC)), rat(u0_tor, (dT, dC)), rat(uet_vec, (dV, rL)),
                   _torus_block(dT, rL, uet_tor))

    @classmethod
    def zero(cls) -> "LinearMotif":
        return cls.build()

    # ── dimension bookkeeping ──────────────────────────────────────
    @property
    def dG(self) -> int:
        return self.dV + self.dT

    @property
    def d_formal(self) -> int:
        return self.dC

    @property
    def r_formal(self) -> int:
        return self.rL

    @property
    def dims(self) -> Tuple[int, int, int, int]:
        return (self.dV, self.dT, self.dC, self.rL)

    def is_zero(self) -> bool:
        return self.dims == (0, 0, 0, 0)

    def uet_tor_at(self, lattice_vector: Sequence[int]) -> List[FactoredRational]:
        """u^et evaluated at an integer combination of the lattice basis, torus component."""
        return [monomial_value(row, lattice_vector) for row in self.uet_tor]

    def is_commutative(self) -> bool:
        """The attached algebra is commutative iff u0 and the etale translations vanish."""
        return (self.u0_vec.is_zero() and self.u0_tor.is_zero() and self.uet_vec.is_zero()
                and all(v.is_one() for row in self.uet_tor for v in row))

    def __repr__(self):
        return f"LinearMotif(dV={self.dV}, dT={self.dT}, dC={self.dC}, rL={self.rL})"


@dataclass(frozen=True)
class MotifMorphism:
    source: LinearMotif
    target: LinearMotif
    fV: RatMatrix
    fT: IntMatrix
    fC: RatMatrix
    fL: IntMatrix

    def __post_init__(self):
        s, t = self.source, self.target
        expected = {"fV": (t.dV, s.dV), "fT": (t.dT, s.dT), "fC": (t.dC, s.dC), "fL": (t.rL, s.rL)}
        for name, shape in expected.items():
            block = getattr(self, name)
            if block.shape != shape:
                raise ShapeMismatchError(f"{name} has shape {block.shape}, expected {shape}")
        object.__setattr__(self, "fV", self.fV.to_rat())
        object.__setattr__(self, "fC", self.fC.to_rat())
        try:
            object.__setattr__(self, "fT", self.fT.to_int())
            object.__setattr__(self, "fL", self.fL.to_int())
        except ValueError as e:
            raise ShapeMismatchError(f"torus and lattice blocks must be integral: {e}") from e

    @classmethod
    def build(cls, source, target, fV=None, fT=None, fC=None, fL=None):
        def block(value, shape, kind):
            if value is None:
                return kind.zeros(*shape)
            if isinstance(value, RatMatrix):
                return value
            return kind.from_rows(value, shape[1])
        return cls(source, target,
                   block(fV, (target.dV, source.dV), RatMatrix),
                   block(fT, (target.dT, source.dT), IntMatrix),
                   block(fC, (target.dC, source.dC), RatMatrix),
                   block(fL, (target.rL, source.rL), IntMatrix))

    def compatibility_failures(self) -> List[str]:
        """Names of the structure-map squares that fail to commute."""
        s, t = self.source, self.target
        failures = []
        if self.fV @ s.u0_vec != t.u0_vec @ self.fC:
            failures.append("u0_vec")
        if self.fT.to_rat() @ s.u0_tor != t.u0_tor @ self.fC:
            failures.append("u0_tor")
        if self.fV @ s.uet_vec != t.uet_vec @ self.fL.to_rat():
            failures.append("uet_vec")
        for j in range(s.rL):
            image = torus_apply(self.fT, torus_column(s.uet_tor, j))
            if image != t.uet_tor_at(self.fL.column(j)):
                failures.append(f"uet_tor[{j}]")
                break
        return failures

    def is_zero(self) -> bool:
        return self.fV.is_zero() and self.fT.is_zero() and self.fC.is_zero() and self.fL.is_zero()

    def is_iso(self) -> bool:
        from ..arith.lattice import is_unimodular
        from ..arith.linalg import rank
        return (self.fV.rows == self.fV.cols and rank(self.fV) == self.fV.rows
                and self.fC.rows == self.fC.cols and rank(self.fC) == self.fC.rows
                and is_unimodular(self.fT) and is_unimodular(self.fL))

    def __repr__(self):
        return f"MotifMorphism({self.source!r} -> {self.target!r})"


def validate(f: MotifMorphism) -> bool:
    """
    True iff the four compatibility identities hold. Shape errors are raised
    as ShapeMismatchError at construction, so they never reach this point.
    """
    failures = f.compatibility_failures()
    if failures:
        logger.debug(f"validate: failing squares {failures}")
    return not failures


def require_valid(f: MotifMorphism) -> None:
    failures = f.compatibility_failures()
    if failures:
        raise CompatibilityError(f"morphism does not commute with structure maps: {', '.join(failures)}")


# ── basic morphisms ───────────────────────────────────────────────
def identity(m: LinearMotif) -> MotifMorphism:
    return MotifMorphism(m, m, RatMatrix.identity(m.dV), IntMatrix.identity(m.dT),
                         RatMatrix.identity(m.dC), IntMatrix.identity(m.rL))


def zero_morphism(source: LinearMotif, target: LinearMotif) -> MotifMorphism:
    return MotifMorphism.build(source, target)


def compose(g: MotifMorphism, f: MotifMorphism) -> MotifMorphism:
    """g after f."""
    if f.target != g.source:
        raise ShapeMismatchError("compose: target of f is not the source of g")
    return MotifMorphism(f.source, g.target, g.fV @ f.fV, g.fT @ f.fT, g.fC @ f.fC, g.fL @ f.fL)


def inversion(m: LinearMotif) -> MotifMorphism:
    """The group inversion <-1> of m, an automorphism."""
    return MotifMorphism(m, m, -RatMatrix.identity(m.dV), -IntMatrix.identity(m.dT),
                         -RatMatrix.identity(m.dC), -IntMatrix.identity(m.rL))


# ── products ──────────────────────────────────────────────────────
def product(m1: LinearMotif, m2: LinearMotif) -> LinearMotif:
    """m1 x m2 with m1's coordinates first in every block."""
    tor = tuple(tuple(row) + tuple(FactoredRational() for _ in range(m2.rL)) for row in m1.uet_tor) + \
        tuple(tuple(FactoredRational() for _ in range(m1.rL)) + tuple(row) for row in m2.uet_tor)
    return LinearMotif(m1.dV + m2.dV, m1.dT + m2.dT, m1.dC + m2.dC, m1.rL + m2.rL,
                       m1.u0_vec.block_diag(m2.u0_vec), m1.u0_tor.block_diag(m2.u0_tor),
                       m1.uet_vec.block_diag(m2.uet_vec), tor)


def _select(n_total: int, start: int, size: int, kind):
    return kind.from_rows([[1 if j == start + i else 0 for j in range(n_total)] for i in range(size)], n_total)


def projection(m1: LinearMotif, m2: LinearMotif, which: int) -> MotifMorphism:
    """pr_1 or pr_2 out of m1 x m2."""
    if which not in (1, 2):
        raise ValueError(f"projection index must be 1 or 2, got {which}")
    p = product(m1, m2)
    m = m1 if which == 1 else m2
    offsets = (0, 0, 0, 0) if which == 1 else m1.dims
    return MotifMorphism(p, m,
                         _select(p.dV, offsets[0], m.dV, RatMatrix),
                         _select(p.dT, offsets[1], m.dT, IntMatrix),
                         _select(p.dC, offsets[2], m.dC, RatMatrix),
                         _select(p.rL, offsets[3], m.rL, IntMatrix))


def product_morphism(f: MotifMorphism, g: MotifMorphism) -> MotifMorphism:
    """f x g between products."""
    return MotifMorphism(product(f.source, g.source), product(f.target, g.target),
                         f.fV.block_diag(g.fV), f.fT.block_diag(g.fT),
                         f.fC.block_diag(g.fC), f.fL.block_diag(g.fL))


def diagonal(m: LinearMotif) -> MotifMorphism:
    def stack(n, kind):
        eye = kind.identity(n)
        return eye.vstack(eye)
    return MotifMorphism(m, product(m, m), stack(m.dV, RatMatrix), stack(m.dT, IntMatrix),
                         stack(m.dC, RatMatrix), stack(m.rL, IntMatrix))


def addition(m: LinearMotif) -> MotifMorphism:
    """The group law mu: m x m -> m."""
    def side(n, kind):
        eye = kind.identity(n)
        return eye.hstack(eye)
    return MotifMorphism(product(m, m), m, side(m.dV, RatMatrix), side(m.dT, IntMatrix),
                         side(m.dC, RatMatrix), side(m.rL, IntMatrix))


def difference(m: LinearMotif) -> MotifMorphism:
    """(a, b) -> a - b."""
    def side(n, kind):
        eye = kind.identity(n)
        return eye.hstack(-eye)
    return MotifMorphism(product(m, m), m, side(m.dV, RatMatrix), side(m.dT, IntMatrix),
                         side(m.dC, RatMatrix), side(m.rL, IntMatrix))


def structure_morphism(m: LinearMotif) -> MotifMorphism:
    """m -> 0."""
    return zero_morphism(m, LinearMotif.zero())
