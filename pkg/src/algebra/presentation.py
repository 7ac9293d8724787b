# src/algebra/presentation.py
"""Finitely presented left modules over motif algebras, induction and external products."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..motif.motif import LinearMotif, product
from ..utils.errors import AlgebraMismatchError, UnsupportedModuleError, ValidationError
from .ideals import LaurentIdeal
from .ore import AlgebraMap, MotifAlgebra, OreElement, algebra_from_motif

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModulePresentation:
    """<g_1..g_n | sum_i r_i g_i = 0 for each relation r>."""

    algebra: MotifAlgebra
    ngens: int
    relations: Tuple[Tuple[OreElement, ...], ...]

    def __post_init__(self):
        rels = tuple(tuple(r) for r in self.relations)
        for r in rels:
            if len(r) != self.ngens:
                raise ValidationError(f"relation of length {len(r)} for {self.ngens} generators")
            for entry in r:
                if entry.algebra != self.algebra:
                    raise AlgebraMismatchError("relation entry from another algebra")
        object.__setattr__(self, "relations", rels)

    @property
    def motif(self) -> LinearMotif:
        return self.algebra.motif

    def is_cyclic(self) -> bool:
        return self.ngens == 1

    def cyclic_relations(self) -> List[OreElement]:
        if not self.is_cyclic():
            raise ValidationError("presentation is not cyclic")
        return [r[0] for r in self.relations]

    def map_relations(self, phi: AlgebraMap) -> "ModulePresentation":
        """Transport along a ring isomorphism phi: algebra -> phi.target."""
        if phi.source != self.algebra:
            raise AlgebraMismatchError("map_relations: map does not start at this algebra")
        return ModulePresentation(phi.target, self.ngens,
                                  tuple(tuple(phi(e) for e in r) for r in self.relations))

    def __eq__(self, other):
        if not isinstance(other, ModulePresentation):
            return NotImplemented
        return (self.algebra == other.algebra and self.ngens == other.ngens
                and set(self.relations) == set(other.relations))

    def __hash__(self):
        return hash((self.algebra, self.ngens, frozenset(self.relations)))


# ── constructors ──────────────────────────────────────────────────
def free_module(algebra: MotifAlgebra, rank: int = 1) -> ModulePresentation:
    return ModulePresentation(algebra, rank, ())


def cyclic_module(algebra: MotifAlgebra, relations: Sequence[OreElement]) -> ModulePresentation:
    return ModulePresentation(algebra, 1, tuple((r,) for r in relations))


def zero_module(algebra: MotifAlgebra) -> ModulePresentation:
    return cyclic_module(algebra, [algebra.one()])


def delta_module(algebra: MotifAlgebra, point: Sequence = (), torus_point: Sequence = ()) -> ModulePresentation:
    """Kills x_i - a_i and t_j - b_j: the delta module at (a, b)."""
    rels = [algebra.x(i) - Fraction(a) for i, a in enumerate(point)]
    rels += [algebra.t(j) - Fraction(b) for j, b in enumerate(torus_point)]
    if len(point) != algebra.nx or len(torus_point) != algebra.nt:
        raise ValidationError("delta_module: point does not match the group dimensions")
    return cyclic_module(algebra, rels)


def character_module(algebra: MotifAlgebra, weights: Sequence = (), multipliers: Sequence = ()) -> ModulePresentation:
    """Kills xi_a - lambda_a and s_e - q_e."""
    if len(weights) != algebra.nxi or len(multipliers) != algebra.ns:
        raise ValidationError("character_module: data does not match the formal dimensions")
    rels = [algebra.xi(a) - Fraction(l) for a, l in enumerate(weights)]
    rels += [algebra.s(e) - Fraction(q) for e, q in enumerate(multipliers)]
    return cyclic_module(algebra, rels)


def function_algebra(motif: LinearMotif) -> MotifAlgebra:
    """The commutative algebra O_G of the group part of ``motif``."""
    return algebra_from_motif(LinearMotif.build(dV=motif.dV, dT=motif.dT))


def function_embedding(motif: LinearMotif) -> AlgebraMap:
    """O_G -> algebra of ``motif``, identity on x and t."""
    src = function_algebra(motif)
    tgt = algebra_from_motif(motif)
    images = {("x", i): tgt.x(i) for i in range(motif.dV)}
    images.update({("t", j, 1): tgt.t(j) for j in range(motif.dT)})
    return AlgebraMap(src, tgt, images)


# ── induction ─────────────────────────────────────────────────────
def induce(f: ModulePresentation, motif: LinearMotif) -> ModulePresentation:
    """
    Ind(F) for F presented over O_G: same generators, relations base-changed
    to the full algebra of ``motif``.
    """
    for r in f.relations:
        for e in r:
            if not e.is_function():
                raise ValidationError(f"induce: relation entry {e} contains xi or s")
    if (f.algebra.nx, f.algebra.nt) != (motif.dV, motif.dT):
        raise AlgebraMismatchError("induce: F lives on another group")
    if f.algebra.nxi or f.algebra.ns:
        f = ModulePresentation(function_algebra(motif), f.ngens,
                               tuple(tuple(function_algebra(motif).function(e.function_part()) for e in r)
                                     for r in f.relations))
    return f.map_relations(function_embedding(motif))


def function_part(m: ModulePresentation) -> ModulePresentation:
    """The O_G-module whose induction covers m: relations that are pure functions."""
    fa = function_algebra(m.motif)
    rels = [tuple(fa.function(e.function_part()) for e in r)
            for r in m.relations if all(e.is_function() for e in r)]
    return ModulePresentation(fa, m.ngens, tuple(rels))


def _function_ideals(f: ModulePresentation) -> Optional[List[LaurentIdeal]]:
    """Per generator ideals of F, or None when a relation mixes generators."""
    alg = f.algebra
    per_generator: List[List[Dict]] = [[] for _ in range(f.ngens)]
    for r in f.relations:
        support = [i for i, e in enumerate(r) if not e.is_zero()]
        if len(support) > 1:
            return None
        if support:
            i = support[0]
            per_generator[i].append({alpha + beta: c for (alpha, beta), c in r[i].function_part().items()})
    signed = [False] * alg.nx + [True] * alg.nt
    return [LaurentIdeal(signed, rels) for rels in per_generator]


def coherence_witness(m: ModulePresentation, f: Optional[ModulePresentation] = None) -> Dict:
    """
    Check the map Ind(F) -> m sending generator i to generator i, where F
    defaults to the O_G-module cut out by the function relations of m.

    The map is well defined when every induced relation acts by zero on the
    generators of m, and onto when the generators it misses are zero in m.
    Both are decided in a realized model of m; presentations that cannot be
    realized fall back to a syntactic comparison of relations.
    """
    from ..homology.modules import generator_vectors

    f = function_part(m) if f is None else f
    if f.ngens > m.ngens:
        raise ValidationError(f"coherence: F has {f.ngens} generators, m only {m.ngens}")
    ind = induce(f, m.motif)
    try:
        module, gens = generator_vectors(m)
    except UnsupportedModuleError:
        module, gens = None, []
    if module is None:
        method = "syntactic"
        padded = {tuple(r) + (m.algebra.zero(),) * (m.ngens - f.ngens) for r in ind.relations}
        well_defined = padded <= set(m.relations)
        missed_zero = f.ngens == m.ngens
    else:
        method = "realized"
        well_defined = True
        for r in ind.relations:
            image: Dict = {}
            for e, g in zip(r, gens):
                for k, v in module.act(e, g).items():
                    image[k] = image.get(k, 0) + v
            if any(image.values()):
                well_defined = False
                break
        missed_zero = all(not g for g in gens[f.ngens:])
    ideals = _function_ideals(f)
    dims = None if ideals is None else [i.quotient_dimension() for i in ideals]
    dimension = None if dims is None or None in dims else sum(dims)
    return {
        "ngens": m.ngens,
        "relations": len(m.relations),
        "function_relations": len(f.relations),
        "generator_images": list(range(f.ngens)),
        "method": method,
        "well_defined": well_defined,
        "epimorphism": well_defined and missed_zero,
        "function_dimension": dimension,
        "finite": dimension is not None,
    }


def coherence_smoke(m: ModulePresentation, f: Optional[ModulePresentation] = None) -> bool:
    witness = coherence_witness(m, f)
    logger.debug(f"coherence witness: {witness}")
    return witness["epimorphism"]


# ── external products ─────────────────────────────────────────────
def block_embedding(m1: LinearMotif, m2: LinearMotif, which: int) -> AlgebraMap:
    """Algebra of m1 (which=1) or m2 (which=2) into the algebra of m1 x m2."""
    src_motif = m1 if which == 1 else m2
    src = algebra_from_motif(src_motif)
    tgt = algebra_from_motif(product(m1, m2))
    ox, ot, oxi, os_ = (0, 0, 0, 0) if which == 1 else (m1.dV, m1.dT, m1.dC, m1.rL)
    images = {("x", i): tgt.x(ox + i) for i in range(src.nx)}
    images.update({("t", j, 1): tgt.t(ot + j) for j in range(src.nt)})
    images.update({("xi", a): tgt.xi(oxi + a) for a in range(src.nxi)})
    images.update({("s", e, 1): tgt.s(os_ + e) for e in range(src.ns)})
    return AlgebraMap(src, tgt, images)


def boxtimes(m: ModulePresentation, n: ModulePresentation) -> ModulePresentation:
    """m x n over the product algebra; generator (i, j) has index i * n.ngens + j."""
    i1 = block_embedding(m.motif, n.motif, 1)
    i2 = block_embedding(m.motif, n.motif, 2)
    tgt = i1.target
    rank = m.ngens * n.ngens
    relations = []
    for r in m.relations:
        for j in range(n.ngens):
            row = [tgt.zero()] * rank
            for i in range(m.ngens):
                row[i * n.ngens + j] = i1(r[i])
            relations.append(tuple(row))
    for r in n.relations:
        for i in range(m.ngens):
            row = [tgt.zero()] * rank
            for j in range(n.ngens):
                row[i * n.ngens + j] = i2(r[j])
            relations.append(tuple(row))
    return ModulePresentation(tgt, rank, tuple(relations))
