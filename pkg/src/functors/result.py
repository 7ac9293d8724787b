# src/functors/result.py
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

from ..algebra.presentation import ModulePresentation
from ..homology.complexes import FreeComplex, concentrated
from ..homology.homology import GradedSlice, homology
from ..homology.modules import RealizedModule, realize
from ..motif.motif import LinearMotif
from ..utils.errors import AlgebraMismatchError
from .twist import BlockLines, TwistShift


@dataclass
class TransformResult:
    """
    A complex C with a ledger (twist, shift): the functor's value is
    C (x) twist [shift], so complex degree k sits in effective degree k - shift.
    """

    complex: FreeComplex
    motif: LinearMotif
    ledger: TwistShift = field(default_factory=TwistShift)
    lines: Optional[BlockLines] = None
    stages: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.lines is None:
            self.lines = BlockLines.canonical(self.motif)

    def homology(self, window: Optional[int] = None) -> List[GradedSlice]:
        return homology(self.complex, window)

    def effective_dims(self, window: Optional[int] = None) -> Dict[int, int]:
        return {s.degree - self.ledger.shift: s.homology_dim
                for s in self.homology(window) if s.homology_dim}

    def total_dim(self, window: Optional[int] = None) -> int:
        return sum(self.effective_dims(window).values())

    def to_json(self, window: Optional[int] = None) -> dict:
        return {
            "kind": "transform_result",
            "ledger": self.ledger.to_json(),
            "stages": list(self.stages),
            "homology": [s.to_json() for s in self.homology(window)],
            "effective": {str(k): v for k, v in sorted(self.effective_dims(window).items())},
        }


Input = Union[ModulePresentation, RealizedModule, FreeComplex, TransformResult]


def as_transform(obj: Input, motif: LinearMotif, lines: Optional[BlockLines] = None) -> TransformResult:
    """Wrap any accepted module-like input as a TransformResult over ``motif``."""
    if isinstance(obj, TransformResult):
        result = obj
    elif isinstance(obj, ModulePresentation):
        result = TransformResult(concentrated(realize(obj)), obj.motif)
    elif isinstance(obj, RealizedModule):
        result = TransformResult(concentrated(obj), obj.algebra.motif)
    else:
        result = TransformResult(obj, obj.algebra.motif)
    if result.motif != motif:
        raise AlgebraMismatchError(f"module lives over {result.motif!r}, expected {motif!r}")
    if lines is not None:
        result = TransformResult(result.complex, result.motif, result.ledger, lines, list(result.stages))
    return result
