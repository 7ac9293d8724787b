# src/functors/twist.py
"""
Bookkeeping of determinant-line twists and cohomological shifts.

Every block of a motif carries a line (the top exterior power of its Lie
algebra or lattice), written as an integer combination of the symbols
omega_V, omega_T, omega_C, omega_X of a reference motif. The reference
lines of the Cartier dual are omega_V' = omega_C^-1, omega_T' = omega_X^-1,
omega_C' = omega_V^-1, omega_X' = omega_T^-1.
"""

from dataclasses import dataclass, field
from typing import Dict, Mapping, Tuple

from ..motif.motif import LinearMotif, MotifMorphism

SYMBOLS = ("omega_V", "omega_T", "omega_C", "omega_X")


def _clean(exps: Mapping[str, int]) -> Tuple[Tuple[str, int], ...]:
    return tuple(sorted((k, int(v)) for k, v in exps.items() if v))


@dataclass(frozen=True)
class TwistShift:
    """
    (tensor product of lines)[shift]; composition adds both parts.

    ``rank`` is the signed total dimension of the blocks behind the lines. It
    is additive over exact sequences, so two routes around a cartesian square
    agree on it even when their symbols name lines of different motifs.
    """

    exponents: Tuple[Tuple[str, int], ...] = ()
    shift: int = 0
    rank: int = field(default=0, compare=False)

    @classmethod
    def of(cls, exps: Mapping[str, int] = None, shift: int = 0, rank: int = 0) -> "TwistShift":
        return cls(_clean(exps or {}), shift, rank)

    def as_dict(self) -> Dict[str, int]:
        return dict(self.exponents)

    def __add__(self, other: "TwistShift") -> "TwistShift":
        out = self.as_dict()
        for k, v in other.exponents:
            out[k] = out.get(k, 0) + v
        return TwistShift.of(out, self.shift + other.shift, self.rank + other.rank)

    def __neg__(self) -> "TwistShift":
        return TwistShift.of({k: -v for k, v in self.exponents}, -self.shift, -self.rank)

    def __sub__(self, other: "TwistShift") -> "TwistShift":
        return self + (-other)

    def scaled(self, n: int) -> "TwistShift":
        return TwistShift.of({k: n * v for k, v in self.exponents}, n * self.shift, n * self.rank)

    def line(self) -> "TwistShift":
        return TwistShift(self.exponents, 0, self.rank)

    def agrees_with(self, other: "TwistShift") -> bool:
        """Same shift and same line rank."""
        return self.shift == other.shift and self.rank == other.rank

    def is_trivial(self) -> bool:
        return not self.exponents and self.shift == 0

    def to_json(self) -> dict:
        return {"twist": self.as_dict(), "shift": self.shift}

    @classmethod
    def from_json(cls, payload: Mapping) -> "TwistShift":
        return cls.of(payload.get("twist", {}), int(payload.get("shift", 0)))

    def __str__(self):
        body = " ".join(f"{k}^{v}" for k, v in self.exponents) or "1"
        return f"{body} [{self.shift}]"


def line(exps: Mapping[str, int] = None, rank: int = 0) -> TwistShift:
    return TwistShift.of(exps, rank=rank)


@dataclass(frozen=True)
class BlockLines:
    """The lines of the four blocks of a motif."""

    V: TwistShift = field(default_factory=TwistShift)
    T: TwistShift = field(default_factory=TwistShift)
    C: TwistShift = field(default_factory=TwistShift)
    X: TwistShift = field(default_factory=TwistShift)

    @classmethod
    def canonical(cls, motif: LinearMotif) -> "BlockLines":
        """The motif's own symbols; zero-dimensional blocks carry the trivial line."""
        def sym(name, dim):
            return line({name: 1}, rank=dim) if dim else TwistShift()
        return cls(sym("omega_V", motif.dV), sym("omega_T", motif.dT),
                   sym("omega_C", motif.dC), sym("omega_X", motif.rL))

    def dual(self) -> "BlockLines":
        return BlockLines(-self.C, -self.X, -self.V, -self.T)

    def __add__(self, other: "BlockLines") -> "BlockLines":
        """Lines of a product motif."""
        return BlockLines(self.V + other.V, self.T + other.T, self.C + other.C, self.X + other.X)

    @property
    def group(self) -> TwistShift:
        return self.V + self.T

    @property
    def formal(self) -> TwistShift:
        return self.C + self.X

    @property
    def motif_line(self) -> TwistShift:
        """omega_M = omega_G (x) omega_formal^-1."""
        return self.group - self.formal


# ── ledgers of the elementary functors ────────────────────────────
def push_ledger(lines1: BlockLines, lines2: BlockLines) -> TwistShift:
    """Direct image along M1 -> M2: Lie induction, Lie coinvariants, lattice induction, lattice coinvariants."""
    return (-lines2.C) + lines1.C + (-lines2.X) + lines1.X


def pull_ledger(f: MotifMorphism, lines1: BlockLines, lines2: BlockLines) -> TwistShift:
    """Inverse image along M1 -> M2; the group stage shifts by dG1 - dG2."""
    group = lines1.V + lines1.T - lines2.V - lines2.T
    formal = lines2.C - lines1.C + lines2.X - lines1.X
    return group + formal + TwistShift.of({}, f.source.dG - f.target.dG)


def fourier_ledger(lines: BlockLines, motif: LinearMotif) -> TwistShift:
    """omega_formal^2 (x) omega_G^-1 [-dG]."""
    return lines.formal.scaled(2) - lines.group + TwistShift.of({}, -motif.dG)


def duality_ledger(lines: BlockLines, motif: LinearMotif) -> TwistShift:
    """omega_M (x) omega_formal^-1 [dG]."""
    return lines.motif_line - lines.formal + TwistShift.of({}, motif.dG)


def contravariant(applied: TwistShift, inner: TwistShift) -> TwistShift:
    """Ledger of a contravariant functor with ledger ``applied`` after one with ledger ``inner``."""
    return applied - inner
