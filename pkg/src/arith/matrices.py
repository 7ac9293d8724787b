# src/arith/matrices.py
"""
Immutable integer and rational matrices.

Every matrix block carried by a motif or a morphism lives in one of these two
classes. Entries are stored row-major as a flat tuple; rationals are kept as
``fractions.Fraction`` so equality is structural.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

Number = Union[int, Fraction]


def to_fraction(value: Union[int, str, Fraction]) -> Fraction:
    """Coerce an int, a Fraction or a decimal string such as ``"-3/7"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip().replace("−", "-"))
    raise TypeError(f"cannot read {value!r} as a rational")


@dataclass(frozen=True)
class RatMatrix:
    """A rows x cols matrix over Q."""

    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError(f"negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"entry count {len(self.entries)} does not match shape {self.rows}x{self.cols}"
            )
        object.__setattr__(self, "entries", tuple(self._coerce(e) for e in self.entries))

    @staticmethod
    def _coerce(value) -> Number:
        return to_fraction(value)

    # ── constructors ───────────────────────────────────────────────
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int = None):
        rows = [list(r) for r in rows]
        n = len(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError(f"ragged row of length {len(r)}, expected {cols}")
        return cls(n, cols, tuple(e for r in rows for e in r))

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int):
        columns = [list(c) for c in columns]
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], len(columns))

    # ── access ─────────────────────────────────────────────────────
    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, index: Tuple[int, int]):
        i, j = index
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index {index} out of range for shape {self.shape}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> List[List]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> List[Tuple]:
        return [self.column(j) for j in range(self.cols)]

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]):
        rows, cols = list(rows), list(cols)
        return type(self).from_rows([[self[i, j] for j in cols] for i in rows], len(cols))

    def row_block(self, start: int, stop: int):
        return self.submatrix(range(start, stop), range(self.cols))

    def col_block(self, start: int, stop: int):
        return self.submatrix(range(self.rows), range(start, stop))

    # ── algebra ────────────────────────────────────────────────────
    def transpose(self):
        return type(self).from_rows([list(self.column(j)) for j in range(self.cols)], self.rows)

    @property
    def T(self):
        return self.transpose()

    def _result_type(self, other):
        return type(self) if type(self) is type(other) else RatMatrix

    def __add__(self, other):
        self._check_same_shape(other)
        cls = self._result_type(other)
        return cls(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other):
        self._check_same_shape(other)
        cls = self._result_type(other)
        return cls(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self):
        return type(self)(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c: Number):
        c = to_fraction(c)
        if isinstance(self, IntMatrix) and c.denominator == 1:
            return IntMatrix(self.rows, self.cols, tuple(int(c) * a for a in self.entries))
        return RatMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cls = self._result_type(other)
        out = []
        other_cols = [other.column(j) for j in range(other.cols)]
        for i in range(self.rows):
            r = self.row(i)
            for col in other_cols:
                out.append(sum((a * b for a, b in zip(r, col) if a and b), 0))
        return cls(self.rows, other.cols, tuple(out))

    def apply(self, vector: Sequence) -> Tuple:
        if len(vector) != self.cols:
            raise ValueError(f"vector of length {len(vector)} for matrix {self.shape}")
        return tuple(sum((a * b for a, b in zip(self.row(i), vector) if a and b), 0)
                     for i in range(self.rows))

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError(f"hstack row mismatch {self.shape} / {other.shape}")
        cls = self._result_type(other)
        return cls.from_rows([list(self.row(i)) + list(other.row(i)) for i in range(self.rows)],
                             self.cols + other.cols)

    def vstack(self, other):
        if self.cols != other.cols:
            raise ValueError(f"vstack column mismatch {self.shape} / {other.shape}")
        cls = self._result_type(other)
        return cls(self.rows + other.rows, self.cols, self.entries + other.entries)

    def block_diag(self, other):
        cls = self._result_type(other)
        top = self.hstack(cls.zeros(self.rows, other.cols))
        bottom = cls.zeros(other.rows, self.cols).hstack(other)
        return top.vstack(bottom)

    # ── predicates ─────────────────────────────────────────────────
    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_integral(self) -> bool:
        return all(to_fraction(e).denominator == 1 for e in self.entries)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == type(self).identity(self.rows)

    def to_int(self) -> "IntMatrix":
        if not self.is_integral():
            raise ValueError("matrix has non-integral entries")
        return IntMatrix(self.rows, self.cols, tuple(int(e) for e in self.entries))

    def to_rat(self) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, self.entries)

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        name = type(self).__name__
        body = "; ".join(" ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"{name}({self.rows}x{self.cols}: [{body}])"


@dataclass(frozen=True, eq=False)
class IntMatrix(RatMatrix):
    """A rows x cols matrix over Z."""

    @staticmethod
    def _coerce(value) -> int:
        f = to_fraction(value)
        if f.denominator != 1:
            raise ValueError(f"non-integral entry {value!r} in IntMatrix")
        return int(f)
