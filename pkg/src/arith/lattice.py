# src/arith/lattice.py
"""
Smith normal form with transforms, and the lattice operations built on it:
integer kernels, saturation, torsion-free quotients and integer solving.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .matrices import IntMatrix, RatMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SmithDecomposition:
    """U A V = D with U, V unimodular and d_1 | d_2 | ... on the diagonal of D."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))

    @property
    def invariants(self) -> Tuple[int, ...]:
        """Nonzero diagonal entries."""
        return tuple(d for d in self.diagonal if d)

    @property
    def torsion(self) -> Tuple[int, ...]:
        """Invariant factors > 1, i.e. the torsion of the cokernel."""
        return tuple(d for d in self.invariants if d > 1)


class _Elimination:
    """Mutable working state of one SNF run; every row/column move is mirrored on the transforms."""

    def __init__(self, a: IntMatrix):
        self.m, self.n = a.rows, a.cols
        self.d = a.to_rows()
        self.u = _eye(self.m)
        self.u_inv = _eye(self.m)
        self.v = _eye(self.n)
        self.v_inv = _eye(self.n)

    # row_i += q * row_t
    def add_row(self, i: int, t: int, q: int):
        if not q:
            return
        for M in (self.d, self.u):
            M[i] = [a + q * b for a, b in zip(M[i], M[t])]
        for r in self.u_inv:
            r[t] -= q * r[i]

    def swap_rows(self, i: int, t: int):
        if i == t:
            return
        for M in (self.d, self.u):
            M[i], M[t] = M[t], M[i]
        for r in self.u_inv:
            r[i], r[t] = r[t], r[i]

    def negate_row(self, i: int):
        for M in (self.d, self.u):
            M[i] = [-a for a in M[i]]
        for r in self.u_inv:
            r[i] = -r[i]

    # col_j += q * col_t
    def add_col(self, j: int, t: int, q: int):
        if not q:
            return
        for M in (self.d, self.v):
            for r in M:
                r[j] += q * r[t]
        self.v_inv[t] = [a - q * b for a, b in zip(self.v_inv[t], self.v_inv[j])]

    def swap_cols(self, j: int, t: int):
        if j == t:
            return
        for M in (self.d, self.v):
            for r in M:
                r[j], r[t] = r[t], r[j]
        self.v_inv[j], self.v_inv[t] = self.v_inv[t], self.v_inv[j]

    def smallest_entry(self, t: int) -> Optional[Tuple[int, int]]:
        best = None
        for i in range(t, self.m):
            for j in range(t, self.n):
                a = self.d[i][j]
                if a and (best is None or abs(a) < abs(self.d[best[0]][best[1]])):
                    best = (i, j)
        return best

    def run(self):
        for t in range(min(self.m, self.n)):
            pivot = self.smallest_entry(t)
            if pivot is None:
                break
            self.swap_rows(t, pivot[0])
            self.swap_cols(t, pivot[1])
            while True:
                moved = False
                for i in range(t + 1, self.m):
                    if self.d[i][t]:
                        self.add_row(i, t, -(self.d[i][t] // self.d[t][t]))
                        if self.d[i][t]:
                            self.swap_rows(i, t)
                            moved = True
                for j in range(t + 1, self.n):
                    if self.d[t][j]:
                        self.add_col(j, t, -(self.d[t][j] // self.d[t][t]))
                        if self.d[t][j]:
                            self.swap_cols(j, t)
                            moved = True
                if moved:
                    continue
                p = self.d[t][t]
                offender = next(((i, j) for i in range(t + 1, self.m) for j in range(t + 1, self.n)
                                 if self.d[i][j] % p), None)
                if offender is None:
                    break
                self.add_row(t, offender[0], 1)
            if self.d[t][t] < 0:
                self.negate_row(t)


def _eye(n: int) -> List[List[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _as_int(rows: List[List[int]], n_rows: int, n_cols: int) -> IntMatrix:
    return IntMatrix(n_rows, n_cols, tuple(e for r in rows for e in r))


def snf(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form of an integer matrix, with both unimodular transforms and their inverses."""
    if not isinstance(a, IntMatrix):
        a = a.to_int()
    work = _Elimination(a)
    work.run()
    m, n = a.rows, a.cols
    return SmithDecomposition(
        U=_as_int(work.u, m, m),
        D=_as_int(work.d, m, n),
        V=_as_int(work.v, n, n),
        U_inv=_as_int(work.u_inv, m, m),
        V_inv=_as_int(work.v_inv, n, n),
    )


def _normalize_sign(columns: List[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    out = []
    for c in columns:
        lead = next((x for x in c if x), 0)
        out.append(tuple(-x for x in c) if lead < 0 else tuple(c))
    return out


def int_kernel(a: IntMatrix) -> IntMatrix:
    """Columns form a Z-basis of {v in Z^n : a v = 0}."""
    if a.cols == 0:
        return IntMatrix.zeros(0, 0)
    s = snf(a)
    cols = [s.V.column(j) for j in range(s.rank, a.cols)]
    return IntMatrix.from_columns(_normalize_sign(cols), a.cols) if cols else IntMatrix.zeros(a.cols, 0)


def lattice_basis(generators: IntMatrix) -> IntMatrix:
    """A Z-basis (as columns) of the lattice spanned by the columns of ``generators``."""
    n = generators.rows
    if generators.cols == 0 or generators.is_zero():
        return IntMatrix.zeros(n, 0)
    s = snf(generators)
    cols = [tuple(d * x for x in s.U_inv.column(i)) for i, d in enumerate(s.invariants)]
    return IntMatrix.from_columns(_normalize_sign(cols), n)


def saturate(span: IntMatrix) -> IntMatrix:
    """Basis of {x in Z^n : m x in span for some m > 0}."""
    n = span.rows
    if span.cols == 0 or span.is_zero():
        return IntMatrix.zeros(n, 0)
    s = snf(span)
    cols = [s.U_inv.column(i) for i in range(s.rank)]
    return IntMatrix.from_columns(_normalize_sign(cols), n)


def is_saturated(span: IntMatrix) -> bool:
    if span.cols == 0 or span.is_zero():
        return True
    return not snf(span).torsion


def quotient_projection(span: IntMatrix) -> Tuple[IntMatrix, IntMatrix]:
    """
    For a sublattice L of Z^n, a surjection P: Z^n -> Z^{n-r} with kernel sat(L)
    together with an integer section S (P S = I).
    """
    n = span.rows
    if span.cols == 0 or span.is_zero():
        return IntMatrix.identity(n), IntMatrix.identity(n)
    s = snf(span)
    r = s.rank
    projection = s.U.row_block(r, n)
    section = s.U_inv.col_block(r, n)
    return projection, section


def torsion_generators(span: IntMatrix) -> List[Tuple[Tuple[int, ...], int]]:
    """Generators of the torsion of Z^n / span as (vector, order) pairs."""
    if span.cols == 0 or span.is_zero():
        return []
    s = snf(span)
    return [(s.U_inv.column(i), d) for i, d in enumerate(s.invariants) if d > 1]


def int_solve(a: IntMatrix, b: IntMatrix) -> Optional[IntMatrix]:
    """An integer X with a X = b, or None."""
    if a.rows != b.rows:
        raise ValueError(f"int_solve: row mismatch {a.shape} / {b.shape}")
    if a.cols == 0:
        return IntMatrix.zeros(0, b.cols) if b.is_zero() else None
    s = snf(a)
    c = s.U @ b
    y = [[0] * b.cols for _ in range(a.cols)]
    for i in range(a.rows):
        d = s.D[i, i] if i < a.cols else 0
        for j in range(b.cols):
            v = c[i, j]
            if d == 0:
                if v:
                    return None
            elif v % d:
                return None
            else:
                y[i][j] = v // d
    return s.V @ IntMatrix.from_rows(y, b.cols)


def is_unimodular(a: IntMatrix) -> bool:
    return a.rows == a.cols and snf(a).invariants == (1,) * a.rows


def is_split_surjective(a: IntMatrix) -> bool:
    """Surjective onto Z^rows: all invariant factors equal to one and full row rank."""
    if a.rows == 0:
        return True
    return snf(a).invariants == (1,) * a.rows


def is_split_injective(a: IntMatrix) -> bool:
    """Injective with torsion-free cokernel."""
    if a.cols == 0:
        return True
    return snf(a).invariants == (1,) * a.cols


def gcd_of_minors(a: RatMatrix, k: int) -> int:
    """gcd of all k x k minors, via sympy determinants (test oracle)."""
    from itertools import combinations
    from math import gcd
    from sympy import Matrix

    g = 0
    for rows in combinations(range(a.rows), k):
        for cols in combinations(range(a.cols), k):
            sub = Matrix([[int(a[i, j]) for j in cols] for i in rows])
            g = gcd(g, int(sub.det()))
    return g
