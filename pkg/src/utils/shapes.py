# src/utils/shapes.py
from enum import Enum
from typing import List, Optional

from ..arith import RatMatrix
from ..motif.motif import LinearMotif


class ElementaryShape(str, Enum):
    """The elementary motifs for which the Fourier transform has a closed form."""
    VECTOR = "[0->V]"
    FORMAL_VECTOR = "[V^0->0]"
    WEYL = "[V^0->V]"
    TORUS = "[0->T]"
    LATTICE = "[X->0]"
    MELLIN = "[T^0->T]"
    LATTICE_VECTOR = "[X->V]"

    @classmethod
    def list(cls) -> List[str]:
        return [shape.value for shape in cls]

    @classmethod
    def from_name(cls, name: str) -> "ElementaryShape":
        """Accepts the bracket form or the enum name, case-insensitively."""
        cleaned = name.strip().replace("→", "->").replace(" ", "")
        for shape in cls:
            if cleaned == shape.value or cleaned.upper() == shape.name:
                return shape
        raise ValueError(f"unknown elementary shape {name!r}; expected one of {cls.list()}")

    def motif(self, n: int = 1) -> LinearMotif:
        eye = RatMatrix.identity(n)
        if self is ElementaryShape.VECTOR:
            return LinearMotif.build(dV=n)
        if self is ElementaryShape.FORMAL_VECTOR:
            return LinearMotif.build(dC=n)
        if self is ElementaryShape.WEYL:
            return LinearMotif.build(dV=n, dC=n, u0_vec=eye)
        if self is ElementaryShape.TORUS:
            return LinearMotif.build(dT=n)
        if self is ElementaryShape.LATTICE:
            return LinearMotif.build(rL=n)
        if self is ElementaryShape.MELLIN:
            return LinearMotif.build(dT=n, dC=n, u0_tor=eye)
        return LinearMotif.build(dV=n, rL=n, uet_vec=eye)

    @property
    def dual(self) -> "ElementaryShape":
        return _DUALS[self]

    @classmethod
    def detect(cls, m: LinearMotif) -> Optional["ElementaryShape"]:
        """The shape m is literally equal to, if any."""
        n = max(m.dims)
        if n == 0:
            return None
        for shape in cls:
            if shape.motif(n) == m:
                return shape
        return None


_DUALS = {
    ElementaryShape.VECTOR: ElementaryShape.FORMAL_VECTOR,
    ElementaryShape.FORMAL_VECTOR: ElementaryShape.VECTOR,
    ElementaryShape.WEYL: ElementaryShape.WEYL,
    ElementaryShape.TORUS: ElementaryShape.LATTICE,
    ElementaryShape.LATTICE: ElementaryShape.TORUS,
    ElementaryShape.MELLIN: ElementaryShape.LATTICE_VECTOR,
    ElementaryShape.LATTICE_VECTOR: ElementaryShape.MELLIN,
}
