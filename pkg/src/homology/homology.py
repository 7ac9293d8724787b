# src/homology/homology.py
"""
Windowed homology of FreeComplex objects.

Degree i is truncated to the filtration step F_{L_i}, L_i = window + margin * (top - i),
so the incoming differential is evaluated on a strictly larger step than the
outgoing one. The homology slice is

    dim ker(d^i on F_{L_i}) - dim(im d^{i-1}(F_{L_{i-1}}) intersected with F_{L_i}).
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .. import config
from ..algebra.ore import OreElement
from ..algebra.presentation import ModulePresentation
from ..arith import RatMatrix
from ..arith.linalg import nullspace, sparse_rank
from ..utils.errors import HomologyError, UnsupportedModuleError
from .complexes import FreeComplex
from .modules import CyclicModule, Key, QuotientModule, Vector, realize

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GradedSlice:
    degree: int
    level: int
    term_dim: int
    kernel_dim: int
    image_dim: int
    homology_dim: int

    def to_json(self) -> dict:
        return {
            "degree": self.degree, "level": self.level, "term_dim": self.term_dim,
            "kernel_dim": self.kernel_dim, "image_dim": self.image_dim,
            "homology_dim": self.homology_dim,
        }


def vectors_rank(vectors: Sequence[Mapping[Key, Fraction]]) -> int:
    index: Dict[Key, int] = {}
    rows = {}
    for r, vec in enumerate(vectors):
        row = {}
        for k, v in vec.items():
            if v:
                row[index.setdefault(k, len(index))] = v
        if row:
            rows[r] = row
    if not rows:
        return 0
    return sparse_rank(rows, (len(vectors), len(index)))


def vector_size(c: FreeComplex, degree: int, vec: Mapping[Key, Fraction]) -> int:
    term = c.term(degree)
    return max((term.size(k) for k in vec), default=0)


class WindowedHomology:
    """Caches the truncated bases and differential images of one complex."""

    def __init__(self, c: FreeComplex, window: Optional[int] = None, margin: Optional[int] = None):
        self.c = c
        self.window = config.DEFAULT_WINDOW if window is None else window
        self.margin = max(c.margin, config.HOMOLOGY_MARGIN) if margin is None else margin
        self._images: Dict[Tuple[int, int], Tuple[List[Key], List[Vector]]] = {}

    def level(self, degree: int) -> int:
        return self.window + self.margin * (self.c.high - degree)

    def images(self, degree: int, level: int) -> Tuple[List[Key], List[Vector]]:
        """Basis of F_level C^degree and the images of its vectors under d."""
        cached = self._images.get((degree, level))
        if cached is None:
            basis = self.c.term(degree).keys(level) if degree in self.c.terms else []
            if len(basis) > config.MAX_SLICE_DIM:
                raise HomologyError(f"degree {degree} at level {level} has {len(basis)} basis vectors, "
                                    f"above the bound {config.MAX_SLICE_DIM}")
            cached = (basis, [self.c.d(degree, {k: Fraction(1)}) for k in basis])
            self._images[(degree, level)] = cached
        return cached

    def slice(self, degree: int) -> GradedSlice:
        level = self.level(degree)
        basis, outgoing = self.images(degree, level)
        kernel = len(basis) - vectors_rank(outgoing)
        _, incoming = self.images(degree - 1, level + self.margin)
        inside = set(basis)
        full = vectors_rank(incoming)
        outside = vectors_rank([{k: v for k, v in vec.items() if k not in inside} for vec in incoming])
        image = full - outside
        h = kernel - image
        if h < 0:
            logger.warning(f"negative homology estimate {h} at degree {degree}; window {self.window} too small")
            h = 0
        return GradedSlice(degree, level, len(basis), kernel, image, h)

    def cycles(self, degree: int) -> List[Vector]:
        basis, outgoing = self.images(degree, self.level(degree))
        if not basis:
            return []
        index: Dict[Key, int] = {}
        for vec in outgoing:
            for k in vec:
                index.setdefault(k, len(index))
        if not index:
            return [{k: Fraction(1)} for k in basis]
        rows = [[Fraction(0)] * len(basis) for _ in range(len(index))]
        for j, vec in enumerate(outgoing):
            for k, v in vec.items():
                rows[index[k]][j] = v
        kernel = nullspace(RatMatrix.from_rows(rows, len(basis)))
        out = []
        for col in range(kernel.cols):
            out.append({basis[j]: kernel[j, col] for j in range(len(basis)) if kernel[j, col]})
        return out

    def boundaries(self, degree: int, level: Optional[int] = None) -> List[Vector]:
        level = self.level(degree) + self.margin if level is None else level
        _, incoming = self.images(degree - 1, level)
        return [v for v in incoming if v]


def homology(c: FreeComplex, window: Optional[int] = None, margin: Optional[int] = None) -> List[GradedSlice]:
    """One GradedSlice per degree of the complex, lowest degree first."""
    engine = WindowedHomology(c, window, margin)
    slices = [engine.slice(i) for i in range(c.low, c.high + 1)]
    logger.debug(f"homology: {[(s.degree, s.homology_dim) for s in slices]}")
    return slices


def homology_dims(c: FreeComplex, window: Optional[int] = None, shift: int = 0) -> Dict[int, int]:
    """Nonzero homology dimensions keyed by effective degree (complex degree - shift)."""
    return {s.degree - shift: s.homology_dim for s in homology(c, window) if s.homology_dim}


def homology_basis(c: FreeComplex, degree: int, window: Optional[int] = None,
                   engine: Optional[WindowedHomology] = None) -> List[Vector]:
    """Cycles in the window forming a basis of the homology slice, smallest first."""
    engine = engine or WindowedHomology(c, window)
    cycles = sorted(engine.cycles(degree), key=lambda v: (vector_size(c, degree, v), len(v)))
    span = engine.boundaries(degree)
    base = vectors_rank(span)
    picked: List[Vector] = []
    for v in cycles:
        r = vectors_rank(span + picked + [v])
        if r > base + len(picked):
            picked.append(v)
    return picked


def in_span(vec: Mapping[Key, Fraction], span: Sequence[Mapping[Key, Fraction]]) -> bool:
    if not vec:
        return True
    return vectors_rank(list(span) + [vec]) == vectors_rank(span)


# ── isomorphisms with rank-1 presentations ────────────────────────
@dataclass
class IsoWitness:
    """A homology class v with Ann-relations of the target killing it."""

    degree: int
    representative: Vector
    relations_checked: int
    keys_checked: int
    classes_covered: int
    notes: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "representative": {repr(k): str(v) for k, v in self.representative.items()},
            "relations_checked": self.relations_checked,
            "keys_checked": self.keys_checked,
            "classes_covered": self.classes_covered,
        }


def _key_elements(target: ModulePresentation, level: int) -> List[OreElement]:
    module = realize(target)
    if not isinstance(module, (CyclicModule, QuotientModule)):
        raise UnsupportedModuleError("isomorphism search needs a nonzero cyclic target")
    return [module.key_element(k) for k in module.keys(level)]


def find_isomorphism(c: FreeComplex, degree: int, target: ModulePresentation,
                     window: Optional[int] = None, search: Optional[int] = None) -> Optional[IsoWitness]:
    """
    Search for a class v in H^degree(c) such that g -> v induces an isomorphism
    from the rank-1 ``target`` onto the homology slice, within the window:
    relations kill v modulo boundaries, the images of a basis of the target are
    independent modulo boundaries, and the small homology classes are reached.
    """
    if not target.is_cyclic():
        raise UnsupportedModuleError("isomorphism search needs a cyclic target")
    if target.algebra != c.term(degree).algebra:
        return None
    search = config.ISO_SEARCH_WINDOW if search is None else search
    engine = WindowedHomology(c, window)
    reps = homology_basis(c, degree, engine=engine)
    if not reps:
        return None
    term = c.term(degree)
    relations = target.cyclic_relations()
    elements = _key_elements(target, search)
    for v in reps[:config.ISO_SEARCH_DEGREE + 1]:
        v_size = vector_size(c, degree, v)
        reach = v_size + engine.margin * (search + 1) + max((r.degree() for r in relations), default=0)
        span = engine.boundaries(degree, max(engine.level(degree), reach) + engine.margin)
        if not all(in_span(term.act(r, v), span) for r in relations):
            continue
        mapped = [term.act(e, v) for e in elements]
        base = vectors_rank(span)
        if vectors_rank(span + mapped) != base + len(mapped):
            continue
        covered = [w for w in reps if vector_size(c, degree, w) <= v_size + search - 1]
        if not all(in_span(w, span + mapped) for w in covered):
            continue
        logger.debug(f"isomorphism found in degree {degree} with {len(mapped)} target keys")
        return IsoWitness(degree, v, len(relations), len(mapped), len(covered))
    logger.debug(f"no isomorphism onto the target in degree {degree} within search {search}")
    return None
