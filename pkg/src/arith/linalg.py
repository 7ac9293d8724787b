# src/arith/linalg.py
"""Exact linear algebra over Q on top of sympy's DomainMatrix."""

import logging
from fractions import Fraction
from typing import Mapping, Optional, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .matrices import RatMatrix

logger = logging.getLogger(__name__)


def _qq(value: Fraction):
    return QQ(int(value.numerator), int(value.denominator))


def _frac(element) -> Fraction:
    return Fraction(int(element.numerator), int(element.denominator))


def to_domain(m: RatMatrix) -> DomainMatrix:
    """Dense DomainMatrix over QQ; the caller guards empty shapes."""
    return DomainMatrix([[_qq(Fraction(e)) for e in m.row(i)] for i in range(m.rows)],
                        (m.rows, m.cols), QQ)


def sparse_domain(entries: Mapping[int, Mapping[int, Fraction]], shape: Tuple[int, int]) -> DomainMatrix:
    """Sparse DomainMatrix from a dict of rows; zero entries are dropped."""
    rows = {}
    for i, row in entries.items():
        clean = {j: _qq(v) for j, v in row.items() if v}
        if clean:
            rows[i] = clean
    return DomainMatrix(rows, shape, QQ)


def from_domain(dm: DomainMatrix) -> RatMatrix:
    m, n = dm.shape
    sym = dm.to_Matrix()
    return RatMatrix(m, n, tuple(Fraction(int(sym[i, j].p), int(sym[i, j].q))
                                 for i in range(m) for j in range(n)))


def rank(m: RatMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return to_domain(m).rank()


def sparse_rank(entries: Mapping[int, Mapping[int, Fraction]], shape: Tuple[int, int]) -> int:
    """Rank of a sparse matrix given as {row: {col: value}}."""
    if shape[0] == 0 or shape[1] == 0 or not any(any(r.values()) for r in entries.values()):
        return 0
    return sparse_domain(entries, shape).rank()


def rref(m: RatMatrix) -> Tuple[RatMatrix, Tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    if m.rows == 0 or m.cols == 0:
        return m, ()
    reduced, pivots = to_domain(m).rref()
    return from_domain(reduced), tuple(pivots)


def nullspace(m: RatMatrix) -> RatMatrix:
    """Columns form a basis of {v : m v = 0}."""
    if m.cols == 0:
        return RatMatrix.zeros(0, 0)
    if m.rows == 0:
        return RatMatrix.identity(m.cols)
    reduced, pivots = rref(m)
    free = [j for j in range(m.cols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -reduced[r, f]
        basis.append(v)
    return RatMatrix.from_columns(basis, m.cols) if basis else RatMatrix.zeros(m.cols, 0)


def solve(a: RatMatrix, b: RatMatrix) -> Optional[RatMatrix]:
    """A particular X with a X = b, or None when the system is inconsistent."""
    if a.rows != b.rows:
        raise ValueError(f"solve: row mismatch {a.shape} / {b.shape}")
    if b.cols == 0:
        return RatMatrix.zeros(a.cols, 0)
    if a.rows == 0:
        return RatMatrix.zeros(a.cols, b.cols)
    if a.cols == 0:
        return RatMatrix.zeros(0, b.cols) if b.is_zero() else None
    reduced, pivots = rref(a.hstack(b))
    if any(p >= a.cols for p in pivots):
        return None
    x = [[Fraction(0)] * b.cols for _ in range(a.cols)]
    for r, p in enumerate(pivots):
        for j in range(b.cols):
            x[p][j] = reduced[r, a.cols + j]
    return RatMatrix.from_rows(x, b.cols)


def solve_left(a: RatMatrix, b: RatMatrix) -> Optional[RatMatrix]:
    """A particular X with X a = b."""
    x = solve(a.transpose(), b.transpose())
    return None if x is None else x.transpose()


def right_inverse(m: RatMatrix) -> Optional[RatMatrix]:
    """S with m S = I, when m is surjective."""
    return solve(m, RatMatrix.identity(m.rows))


def left_inverse(m: RatMatrix) -> Optional[RatMatrix]:
    """P with P m = I, when m is injective."""
    return solve_left(m, RatMatrix.identity(m.cols))


def column_basis(m: RatMatrix) -> RatMatrix:
    """Pivot columns of m, a basis of its column space."""
    _, pivots = rref(m)
    return m.submatrix(range(m.rows), pivots)


def is_injective(m: RatMatrix) -> bool:
    return rank(m) == m.cols


def is_surjective(m: RatMatrix) -> bool:
    return rank(m) == m.rows
