# src/homology/complexes.py
"""
Cochain complexes of realized modules.

A FreeComplex carries terms C^i and differentials d^i: C^i -> C^{i+1}, each
differential being any object with ``apply(vec) -> vec``. Koszul totals are
built lazily on top of an existing complex, so every stage of a direct or
inverse image stays a complex of the same kind.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from ..algebra.ore import AlgebraMap, MotifAlgebra, OreElement, algebra_from_motif
from ..algebra.presentation import ModulePresentation
from ..arith import FactoredRational, RatMatrix
from ..motif.motif import LinearMotif
from ..utils.errors import ValidationError
from .modules import (CyclicModule, DirectSum, Key, RealizedModule, Restricted, SpaceTerm, TensorModule,
                      Vector, ZeroModule, accumulate, add_into, realize, signed_vectors)

logger = logging.getLogger(__name__)


class ComplexMap:
    """A linear map between two terms, applied to sparse vectors."""

    def apply_basis(self, key: Key) -> Vector:
        raise NotImplementedError

    def apply(self, vec: Mapping[Key, Fraction]) -> Vector:
        out: Vector = {}
        for k, c in vec.items():
            add_into(out, self.apply_basis(k), c)
        return out


class ZeroMap(ComplexMap):
    def apply_basis(self, key):
        return {}


class MatrixMap(ComplexMap):
    """A map given on basis keys by an explicit table."""

    def __init__(self, table: Mapping[Key, Vector]):
        self.table = dict(table)

    def apply_basis(self, key):
        return self.table.get(key, {})


class ElementMatrixMap(ComplexMap):
    """
    Between direct sums of copies of one module: (r, k) -> sum_c (c, entries[r][c] . k).
    Entries are algebra elements acting on the underlying module.
    """

    def __init__(self, module: RealizedModule, entries: Sequence[Sequence[Optional[OreElement]]]):
        self.module = module
        self.entries = [list(row) for row in entries]

    def apply_basis(self, key):
        r, k = key
        out: Vector = {}
        for c, e in enumerate(self.entries[r]):
            if e is None or e.is_zero():
                continue
            for k2, v in self.module.act(e, {k: Fraction(1)}).items():
                accumulate(out, (c, k2), v)
        return out


class FunctionMap(ComplexMap):
    """A map given by a function on basis keys, cached."""

    def __init__(self, fn: Callable[[Key], Vector]):
        self.fn = fn
        self._cache: Dict[Key, Vector] = {}

    def apply_basis(self, key):
        out = self._cache.get(key)
        if out is None:
            out = self.fn(key)
            self._cache[key] = out
        return out


@dataclass
class FreeComplex:
    """Terms and differentials indexed by cohomological degree."""

    terms: Dict[int, RealizedModule]
    maps: Dict[int, ComplexMap] = field(default_factory=dict)
    margin: int = 1
    algebra: Optional[MotifAlgebra] = None
    # bound on how far one generator moves the size of a basis key
    reach: int = 1

    def __post_init__(self):
        if self.algebra is None:
            for term in self.terms.values():
                if term.algebra is not None:
                    self.algebra = term.algebra
                    break

    @property
    def low(self) -> int:
        return min(self.terms) if self.terms else 0

    @property
    def high(self) -> int:
        return max(self.terms) if self.terms else 0

    def degrees(self) -> List[int]:
        return sorted(self.terms)

    def term(self, i: int) -> RealizedModule:
        return self.terms.get(i) or ZeroModule(self.algebra)

    def d(self, i: int, vec: Mapping[Key, Fraction]) -> Vector:
        if i not in self.maps or (i + 1) not in self.terms:
            return {}
        return self.maps[i].apply(vec)

    def restrict(self, phi: AlgebraMap) -> "FreeComplex":
        """Restriction of scalars termwise; differentials are untouched."""
        terms = {i: Restricted(t, phi) for i, t in self.terms.items()}
        reach = self.reach * operator_reach(list(phi.images.values()))
        return FreeComplex(terms, dict(self.maps), self.margin, phi.source, reach)

    def shifted(self, n: int) -> "FreeComplex":
        """C[n]: (C[n])^i = C^{i+n}, with the sign (-1)^n on differentials."""
        sign = -1 if n % 2 else 1
        maps = {}
        for i, m in self.maps.items():
            maps[i - n] = m if sign == 1 else FunctionMap(lambda k, m=m: {a: -v for a, v in m.apply_basis(k).items()})
        return FreeComplex({i - n: t for i, t in self.terms.items()}, maps, self.margin, self.algebra, self.reach)

    def check_d_squared(self, level: int) -> bool:
        """d^{i+1} d^i = 0 on the basis of F_level of every term."""
        for i in self.degrees():
            for k in self.term(i).keys(level):
                if self.d(i + 1, self.d(i, {k: Fraction(1)})):
                    logger.debug(f"d^2 != 0 at degree {i} on {k!r}")
                    return False
        return True


def concentrated(module: RealizedModule, degree: int = 0, reach: int = 1) -> FreeComplex:
    return FreeComplex({degree: module}, {}, 1, module.algebra, reach)


def operator_reach(elements: Sequence[OreElement]) -> int:
    """Largest total exponent in the given elements, at least 1."""
    reach = 1
    for e in elements:
        for m in e.terms:
            reach = max(reach, sum(abs(v) for block in m for v in block))
    return reach


# ── Koszul totals ─────────────────────────────────────────────────
class KoszulTerm(RealizedModule):
    """
    Degree-n term of the Koszul total of a complex C over commuting operators:
    the sum over p of Lambda^p (x) C^{n+p}, keys (S, p-key) with S a sorted tuple.
    """

    def __init__(self, inner: FreeComplex, degree: int, count: int):
        super().__init__()
        self.inner, self.degree, self.count = inner, degree, count
        self.algebra = inner.algebra

    def _keys(self, level):
        out = []
        for p in range(self.count + 1):
            q = self.degree + p
            if q not in self.inner.terms:
                continue
            term = self.inner.terms[q]
            for subset in combinations(range(self.count), p):
                out.extend((subset, k) for k in term.keys(level))
        return out

    def size(self, key):
        subset, k = key
        return self.inner.terms[self.degree + len(subset)].size(k)

    def _act_gen(self, gen, key):
        subset, k = key
        term = self.inner.terms[self.degree + len(subset)]
        return {(subset, k2): v for k2, v in term.act_gen(gen, k).items()}


def koszul_total(c: FreeComplex, operators: Sequence[OreElement]) -> FreeComplex:
    """
    Total complex of Lambda^* (x) C with Lambda^p in degree -p and differential
    d_K + (-1)^p d_C, where d_K(e_S (x) m) = sum_j (-1)^j e_{S - s_j} (x) c_{s_j} m.
    The operators must commute with each other and with d_C.
    """
    ops = list(operators)
    k = len(ops)
    if k == 0:
        return c
    for a in ops:
        for b in ops:
            if not (a * b - b * a).is_zero():
                raise ValidationError(f"Koszul operators {a} and {b} do not commute")
    low, high = c.low - k, c.high
    terms = {n: KoszulTerm(c, n, k) for n in range(low, high + 1)}

    def differential(n):
        def fn(key):
            subset, m = key
            p = len(subset)
            q = n + p
            out: Vector = {}
            term = c.terms[q]
            for pos, s in enumerate(subset):
                rest = subset[:pos] + subset[pos + 1:]
                sign = -1 if pos % 2 else 1
                for m2, v in term.act(ops[s], {m: Fraction(1)}).items():
                    accumulate(out, (rest, m2), sign * v)
            sign_c = -1 if p % 2 else 1
            for m2, v in c.d(q, {m: Fraction(1)}).items():
                accumulate(out, (subset, m2), sign_c * v)
            return out
        return FunctionMap(fn)

    maps = {n: differential(n) for n in range(low, high)}
    margin = max(c.margin, c.reach * operator_reach(ops))
    return FreeComplex(terms, maps, margin, c.algebra, c.reach)


def xi_koszul(module: RealizedModule, which: Optional[Sequence[int]] = None) -> FreeComplex:
    """Koszul complex of the derivations xi_a (all, or the listed ones) acting on a module."""
    alg = module.algebra
    idx = range(alg.nxi) if which is None else which
    return koszul_total(concentrated(module), [alg.xi(a) for a in idx])


def tensor_complexes(a: FreeComplex, b: FreeComplex) -> FreeComplex:
    """External tensor product with the Koszul sign rule, over the product algebra."""
    terms: Dict[int, RealizedModule] = {}
    pieces: Dict[int, List[Tuple[int, int]]] = {}
    for i in a.degrees():
        for j in b.degrees():
            pieces.setdefault(i + j, []).append((i, j))
    for n, pairs in pieces.items():
        terms[n] = DirectSum([TensorModule(a.terms[i], b.terms[j]) for i, j in pairs])

    def differential(n):
        pairs = pieces[n]
        targets = {pair: pos for pos, pair in enumerate(pieces.get(n + 1, []))}

        def fn(key):
            pos, (ka, kb) = key
            i, j = pairs[pos]
            out: Vector = {}
            if (i + 1, j) in targets:
                for k2, v in a.d(i, {ka: Fraction(1)}).items():
                    accumulate(out, (targets[(i + 1, j)], (k2, kb)), v)
            if (i, j + 1) in targets:
                sign = -1 if i % 2 else 1
                for k2, v in b.d(j, {kb: Fraction(1)}).items():
                    accumulate(out, (targets[(i, j + 1)], (ka, k2)), sign * v)
            return out
        return FunctionMap(fn)

    maps = {n: differential(n) for n in pieces if n + 1 in pieces}
    first = next(iter(terms.values()))
    return FreeComplex(terms, maps, max(a.margin, b.margin), first.algebra, max(a.reach, b.reach))


# ── explicit small complexes ──────────────────────────────────────
def _wedge_sign(subset: Tuple[int, ...], i: int, prepend: bool) -> int:
    passed = sum(1 for s in subset if (s < i if prepend else s > i))
    return -1 if passed % 2 else 1


def koszul_complex(dim_v: int, n: int) -> FreeComplex:
    """
    The complex Lambda^p V (x) S^{n-p} V in degree p, p = 0..n, with
    (v_S) (x) w -> sum_i (v_S ^ e_i) (x) (w / e_i). Exact; n must be positive.
    """
    if dim_v < 0 or n < 1:
        raise ValidationError("koszul_complex: needs dim_v >= 0 and n >= 1")

    def monomials(k):
        out = [()]
        for _ in range(k):
            out = [m + (i,) for m in out for i in range(dim_v) if not m or i >= m[-1]]
        return out

    terms, tables = {}, {}
    for p in range(0, min(n, dim_v) + 1):
        basis = [(subset, mono) for subset in combinations(range(dim_v), p) for mono in monomials(n - p)]
        terms[p] = SpaceTerm(basis)
    for p in range(0, min(n, dim_v)):
        table = {}
        for subset, mono in terms[p].basis:
            out: Vector = {}
            for i in sorted(set(mono)):
                if i in subset:
                    continue
                mult = mono.count(i)
                rest = list(mono)
                rest.remove(i)
                new = tuple(sorted(subset + (i,)))
                accumulate(out, (new, tuple(rest)), mult * _wedge_sign(subset, i, prepend=False))
            table[(subset, mono)] = out
        tables[p] = MatrixMap(table)
    return FreeComplex(terms, tables, 1, None)


def lattice_resolution(rank: int, scalars: Sequence, shifts: Optional[Sequence[Sequence]] = None) -> FreeComplex:
    """
    Koszul complex of the operators 1 - s_e on the module where s_e acts by
    c_e times translation by the vector shift v_e (functions on the shift space,
    or Q when no shifts are given).
    """
    if len(scalars) != rank:
        raise ValidationError(f"lattice_resolution: {len(scalars)} scalars for rank {rank}")
    values = [v if isinstance(v, FactoredRational) else FactoredRational.from_value(v) for v in scalars]
    if shifts:
        dim = len(shifts[0])
        if len(shifts) != rank or any(len(s) != dim for s in shifts):
            raise ValidationError("lattice_resolution: one shift vector of common length per generator")
        uet = RatMatrix.from_columns(shifts, dim)
    else:
        dim, uet = 0, RatMatrix.zeros(0, rank)
    motif = LinearMotif.build(dV=dim, rL=rank, uet_vec=uet)
    alg = algebra_from_motif(motif)
    module = CyclicModule(alg, {("s", e): values[e].value for e in range(rank)})
    return koszul_total(concentrated(module), [1 - alg.s(e) for e in range(rank)])


class GroupAlgebraTerm(RealizedModule):
    """Q[X] (x) Lambda^p X^dual with keys (x, S)."""

    def __init__(self, rank: int, p: int):
        super().__init__()
        self.rank, self.p = rank, p

    def _keys(self, level):
        subsets = list(combinations(range(self.rank), self.p))
        return [(x, s) for x in signed_vectors([True] * self.rank, level) for s in subsets]

    def size(self, key):
        return sum(abs(v) for v in key[0])

    def _act_gen(self, gen, key):
        raise NotImplementedError("the canonical lattice complex carries no algebra action")


def canonical_lattice_complex(rank: int) -> FreeComplex:
    """
    Q[X] (x) Lambda^* X^dual with d([x] (x) w) = sum_j <e_j^dual, x> [x - e_j] (x) (e_j^dual ^ w).
    For rank 1 the homology is spanned by [0] in degree 0 and [-1] in degree 1.
    """
    terms = {p: GroupAlgebraTerm(rank, p) for p in range(rank + 1)}

    def differential(key):
        x, subset = key
        out: Vector = {}
        for j in range(rank):
            if j in subset or not x[j]:
                continue
            lowered = tuple(v - 1 if i == j else v for i, v in enumerate(x))
            new = tuple(sorted(subset + (j,)))
            accumulate(out, (lowered, new), x[j] * _wedge_sign(subset, j, prepend=True))
        return out

    maps = {p: FunctionMap(differential) for p in range(rank)}
    return FreeComplex(terms, maps, 1, None)


def presentation_complex(presentation: ModulePresentation, degree: int = 0) -> FreeComplex:
    return concentrated(realize(presentation), degree)
