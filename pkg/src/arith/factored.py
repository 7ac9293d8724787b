# src/arith/factored.py
"""
Nonzero rationals kept as sign plus prime-exponent map, and the multiplicative
lattice arithmetic of torus points in (Q*)^d.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple, Union

from sympy import factorint, isprime

from .lattice import int_kernel, lattice_basis
from .matrices import IntMatrix, to_fraction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FactoredRational:
    """sign * prod p^e over the stored primes; never zero."""

    sign: int = 1
    factors: Tuple[Tuple[int, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        merged: Dict[int, int] = {}
        for p, e in self.factors:
            p, e = int(p), int(e)
            if not isprime(p):
                raise ValueError(f"{p} is not prime")
            merged[p] = merged.get(p, 0) + e
        object.__setattr__(self, "factors", tuple(sorted((p, e) for p, e in merged.items() if e)))

    @classmethod
    def from_value(cls, value: Union[int, str, Fraction]) -> "FactoredRational":
        q = to_fraction(value)
        if q == 0:
            raise ValueError("zero is not a torus coordinate")
        exps: Dict[int, int] = {}
        for p, e in factorint(abs(q.numerator)).items():
            exps[int(p)] = exps.get(int(p), 0) + int(e)
        for p, e in factorint(q.denominator).items():
            exps[int(p)] = exps.get(int(p), 0) - int(e)
        return cls(1 if q > 0 else -1, tuple(exps.items()))

    @classmethod
    def one(cls) -> "FactoredRational":
        return cls()

    @property
    def exponents(self) -> Dict[int, int]:
        return dict(self.factors)

    @property
    def value(self) -> Fraction:
        v = Fraction(self.sign)
        for p, e in self.factors:
            v *= Fraction(p) ** e
        return v

    def is_one(self) -> bool:
        return self.sign == 1 and not self.factors

    def __mul__(self, other: "FactoredRational") -> "FactoredRational":
        return FactoredRational(self.sign * other.sign, self.factors + other.factors)

    def inverse(self) -> "FactoredRational":
        return FactoredRational(self.sign, tuple((p, -e) for p, e in self.factors))

    def __truediv__(self, other: "FactoredRational") -> "FactoredRational":
        return self * other.inverse()

    def __pow__(self, n: int) -> "FactoredRational":
        n = int(n)
        return FactoredRational(self.sign ** (n % 2), tuple((p, e * n) for p, e in self.factors))

    def to_json(self) -> dict:
        return {"sign": self.sign, "factors": {str(p): e for p, e in self.factors}}

    @classmethod
    def from_json(cls, payload) -> "FactoredRational":
        """Accepts the factored dict form or a plain rational string/int."""
        if isinstance(payload, Mapping):
            factors = payload.get("factors", {})
            return cls(int(payload.get("sign", 1)), tuple((int(p), int(e)) for p, e in factors.items()))
        return cls.from_value(payload)

    def __str__(self):
        return str(self.value)


FR = FactoredRational


def product(values: Sequence[FactoredRational]) -> FactoredRational:
    out = FactoredRational()
    for v in values:
        out = out * v
    return out


def torus_apply(n: IntMatrix, point: Sequence[FactoredRational]) -> List[FactoredRational]:
    """Image of a torus point under t -> (prod_k t_k^{N_ik})_i."""
    if n.cols != len(point):
        raise ValueError(f"torus map {n.shape} applied to a point of length {len(point)}")
    return [product([point[k] ** n[i, k] for k in range(n.cols) if n[i, k]]) for i in range(n.rows)]


def monomial_value(point: Sequence[FactoredRational], exponent: Sequence[int]) -> FactoredRational:
    """prod_i point_i^{exponent_i} in Q*."""
    return product([p ** e for p, e in zip(point, exponent) if e])


def mult_relations(points: Sequence[Sequence[FactoredRational]]) -> IntMatrix:
    """
    Basis (columns) of {n in Z^k : prod_i points_i^{n_i} = 1 in (Q*)^d}.

    Each point is a vector of length d. Prime exponents give integer conditions;
    the sign gives one condition mod 2 per coordinate, encoded by the extra
    column block 2*I.
    """
    k = len(points)
    if k == 0:
        return IntMatrix.zeros(0, 0)
    d = len(points[0])
    if any(len(p) != d for p in points):
        raise ValueError("mult_relations: points of unequal length")
    primes = sorted({p for pt in points for c in pt for p, _ in c.factors})
    exp_rows = [[pt[c].exponents.get(p, 0) for pt in points] + [0] * d
                for c in range(d) for p in primes]
    sign_rows = [[1 if pt[c].sign < 0 else 0 for pt in points] + [2 if j == c else 0 for j in range(d)]
                 for c in range(d)]
    rows = exp_rows + sign_rows
    if not rows:
        return IntMatrix.identity(k)
    kernel = int_kernel(IntMatrix.from_rows(rows, k + d))
    if kernel.cols == 0:
        return IntMatrix.zeros(k, 0)
    relations = lattice_basis(kernel.row_block(0, k))
    logger.debug(f"mult_relations: {k} points in dimension {d} -> rank {relations.cols}")
    return relations
