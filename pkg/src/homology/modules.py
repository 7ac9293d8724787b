# src/homology/modules.py
"""
Modules realized as filtered vector spaces.

A realized module has a basis indexed by hashable keys, a size function on
keys and the action of every algebra generator on basis vectors. The
filtration step F_L is the span of the keys of size at most L; generators
move the size by a bounded amount, which is what windowed homology relies on.
"""

import logging
from abc import ABC, abstractmethod
from fractions import Fraction
from math import comb
from typing import Dict, Hashable, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..algebra.ideals import LaurentIdeal
from ..algebra.ore import AlgebraMap, MotifAlgebra, OreElement, algebra_from_motif
from ..algebra.presentation import ModulePresentation
from ..arith import IntMatrix, RatMatrix
from ..motif.motif import product
from ..utils.errors import UnsupportedModuleError

logger = logging.getLogger(__name__)

Key = Hashable
Vector = Dict[Key, Fraction]

_BLOCK = {"x": 0, "t": 1, "xi": 2, "s": 3}


def accumulate(target: Vector, key: Key, value) -> None:
    if not value:
        return
    v = target.get(key, 0) + value
    if v:
        target[key] = v
    else:
        target.pop(key, None)


def add_into(target: Vector, vec: Mapping[Key, Fraction], scale=1) -> None:
    for k, v in vec.items():
        accumulate(target, k, v * scale)


def signed_vectors(signed: Sequence[bool], budget: int) -> Iterator[Tuple[int, ...]]:
    """Integer vectors with l1-norm at most budget; unsigned slots are >= 0."""
    if not signed:
        yield ()
        return
    head, rest = signed[0], signed[1:]
    values = range(-budget, budget + 1) if head else range(budget + 1)
    for v in values:
        for tail in signed_vectors(rest, budget - abs(v)):
            yield (v,) + tail


def _norm(v: Sequence[int]) -> int:
    return sum(abs(x) for x in v)


class RealizedModule(ABC):
    """Base class: keys(level), size(key) and the generator action."""

    algebra: Optional[MotifAlgebra] = None

    def __init__(self):
        self._act_cache: Dict[Tuple, Vector] = {}
        self._keys_cache: Dict[int, List[Key]] = {}

    @abstractmethod
    def _keys(self, level: int) -> List[Key]:
        ...

    @abstractmethod
    def size(self, key: Key) -> int:
        ...

    @abstractmethod
    def _act_gen(self, gen: tuple, key: Key) -> Vector:
        ...

    def keys(self, level: int) -> List[Key]:
        if level < 0:
            return []
        cached = self._keys_cache.get(level)
        if cached is None:
            cached = sorted(self._keys(level), key=lambda k: (self.size(k), repr(k)))
            self._keys_cache[level] = cached
        return cached

    def act_gen(self, gen: tuple, key: Key) -> Vector:
        cache_key = (gen, key)
        out = self._act_cache.get(cache_key)
        if out is None:
            out = self._act_gen(gen, key)
            self._act_cache[cache_key] = out
        return out

    def act_gen_vec(self, gen: tuple, vec: Mapping[Key, Fraction]) -> Vector:
        out: Vector = {}
        for k, c in vec.items():
            add_into(out, self.act_gen(gen, k), c)
        return out

    def act_monomial(self, m, vec: Mapping[Key, Fraction]) -> Vector:
        """x^alpha t^beta xi^gamma s^delta applied to vec, rightmost block first."""
        cur: Vector = dict(vec)
        for block, kind in ((3, "s"), (2, "xi"), (1, "t"), (0, "x")):
            for idx, e in enumerate(m[block]):
                if not e:
                    continue
                gen = (kind, idx, 1 if e > 0 else -1) if kind in ("t", "s") else (kind, idx)
                for _ in range(abs(e)):
                    cur = self.act_gen_vec(gen, cur)
                    if not cur:
                        return cur
        return cur

    def act(self, element: OreElement, vec: Mapping[Key, Fraction]) -> Vector:
        out: Vector = {}
        for m, c in element.terms.items():
            add_into(out, self.act_monomial(m, vec), c)
        return out

    def dimension_at(self, level: int) -> int:
        return len(self.keys(level))


class ZeroModule(RealizedModule):
    def __init__(self, algebra: Optional[MotifAlgebra]):
        super().__init__()
        self.algebra = algebra

    def _keys(self, level):
        return []

    def size(self, key):
        return 0

    def _act_gen(self, gen, key):
        return {}


class SpaceTerm(RealizedModule):
    """A finite-dimensional vector space with no algebra action."""

    def __init__(self, basis: Sequence[Key], sizes: Optional[Mapping[Key, int]] = None):
        super().__init__()
        self.basis = list(basis)
        self._sizes = dict(sizes or {})

    def _keys(self, level):
        return [k for k in self.basis if self.size(k) <= level]

    def keys(self, level: int) -> List[Key]:
        if not self._sizes:
            return list(self.basis)
        return super().keys(level)

    def size(self, key):
        return self._sizes.get(key, 0)

    def _act_gen(self, gen, key):
        raise UnsupportedModuleError("a plain vector space carries no algebra action")


class CyclicModule(RealizedModule):
    """
    A / A.(g - c_g : g in kills) for coordinate kills g among x_i, t_j, xi_a, s_e.

    Kills of derivations and shifts only (U-type) give the basis of normal
    monomials with the killed exponents fixed at zero. Kills of functions
    only (O-type) give the basis xi^gamma s^delta x^alpha t^beta. Mixed kills
    need a commutative algebra.
    """

    def __init__(self, algebra: MotifAlgebra, kills: Mapping[Tuple[str, int], Fraction]):
        super().__init__()
        self.algebra = algebra
        self.kills = {k: Fraction(v) for k, v in kills.items()}
        for (kind, idx), v in self.kills.items():
            bound = {"x": algebra.nx, "t": algebra.nt, "xi": algebra.nxi, "s": algebra.ns}[kind]
            if not 0 <= idx < bound:
                raise UnsupportedModuleError(f"kill of {kind}{idx + 1} outside the algebra")
            if kind in ("t", "s") and v == 0:
                raise UnsupportedModuleError(f"{kind}{idx + 1} is a unit and cannot act by 0")
        functions = any(kind in ("x", "t") for kind, _ in self.kills)
        duals = any(kind in ("xi", "s") for kind, _ in self.kills)
        if functions and duals and not algebra.is_commutative:
            raise UnsupportedModuleError("mixed function and derivation kills need a commutative algebra")
        self.mode = "O" if functions and not algebra.is_commutative else "U"
        sizes = (algebra.nx, algebra.nt, algebra.nxi, algebra.ns)
        self._free = [(block, idx) for block, n in enumerate(sizes) for idx in range(n)
                      if (("x", "t", "xi", "s")[block], idx) not in self.kills]

    def _keys(self, level):
        signed = [block in (1, 3) for block, _ in self._free]
        zero = [[0] * n for n in (self.algebra.nx, self.algebra.nt, self.algebra.nxi, self.algebra.ns)]
        out = []
        for vec in signed_vectors(signed, level):
            parts = [list(p) for p in zero]
            for (block, idx), v in zip(self._free, vec):
                parts[block][idx] = v
            out.append(tuple(tuple(p) for p in parts))
        return out

    def size(self, key):
        return sum(_norm(block) for block in key)

    def generator(self) -> Key:
        return self.algebra.unit_monomial()

    def key_element(self, key: Key) -> OreElement:
        """The algebra element whose action on the generator is the basis vector ``key``."""
        alg = self.algebra
        if self.mode == "U":
            return alg.element({key: 1})
        return _function_first_element(alg, key)

    def _reduce(self, m, c) -> Tuple[Key, Fraction]:
        parts = [list(p) for p in m]
        for (kind, idx), v in self.kills.items():
            block = _BLOCK[kind]
            e = parts[block][idx]
            if e:
                c = c * v ** e
                parts[block][idx] = 0
        return tuple(tuple(p) for p in parts), c

    def _act_gen(self, gen, key):
        if self.mode == "U":
            alg = self.algebra
            out: Vector = {}
            for m, c in alg.monomial_product(alg.generator_monomial(gen), key).items():
                k, v = self._reduce(m, c)
                accumulate(out, k, v)
            return out
        return _function_first_action(self.algebra, gen, key, self._reduce_function)

    def _reduce_function(self, poly):
        zxi, zs = self.algebra.unit_monomial()[2:]
        out = {}
        for (alpha, beta), v in poly.items():
            m, c = self._reduce((alpha, beta, zxi, zs), v)
            accumulate(out, (m[0], m[1]), c)
        return out


def _function_first_element(alg: MotifAlgebra, key: Key) -> OreElement:
    """xi^gamma s^delta x^alpha t^beta as a normal-form element."""
    alpha, beta, gamma, delta = key
    zx, zt, zxi, zs = alg.unit_monomial()
    return alg.normal_form([alg.element({(zx, zt, gamma, zs): 1}),
                            alg.element({(zx, zt, zxi, delta): 1}),
                            alg.element({(alpha, beta, zxi, zs): 1})])


def _function_first_action(alg: MotifAlgebra, gen: tuple, key: Key, reduce_function) -> Vector:
    """
    A generator acting on the basis xi^gamma s^delta x^alpha t^beta of A/A.I for
    an ideal I of functions; ``reduce_function`` takes function polynomials to
    their normal form modulo I.
    """
    alpha, beta, gamma, delta = key
    kind = gen[0]
    if kind == "xi":
        g = tuple(v + 1 if i == gen[1] else v for i, v in enumerate(gamma))
        return {(alpha, beta, g, delta): Fraction(1)}
    if kind == "s":
        d = tuple(v + gen[2] if i == gen[1] else v for i, v in enumerate(delta))
        return {(alpha, beta, gamma, d): Fraction(1)}
    gm = alg.generator_monomial(gen)
    phi = {(gm[0], gm[1]): Fraction(1)}
    back = tuple(-d for d in delta)
    out: Vector = {}
    for kappa, psi in alg.derivative_table(gamma, phi).items():
        if not psi:
            continue
        weight = Fraction((-1) ** sum(kappa))
        for g, k in zip(gamma, kappa):
            weight *= comb(g, k)
        shifted = {}
        for fkey, v in psi.items():
            for k2, w in alg.tau(back, fkey).items():
                accumulate(shifted, k2, v * w)
        rest = tuple(g - k for g, k in zip(gamma, kappa))
        product = alg.poly_mul(shifted, {(alpha, beta): Fraction(1)})
        for (a2, b2), v in reduce_function(product).items():
            accumulate(out, (a2, b2, rest, delta), v * weight)
    return out


def _flatten(parts) -> Tuple[int, ...]:
    return tuple(e for block in parts for e in block)


def _split(flat: Sequence[int], sizes: Sequence[int]) -> tuple:
    out, pos = [], 0
    for n in sizes:
        out.append(tuple(flat[pos:pos + n]))
        pos += n
    return tuple(out)


class QuotientModule(RealizedModule):
    """
    A / A.I for relations that are not coordinate kills.

    On a commutative algebra A is a Laurent polynomial ring in all generators
    and the basis is the standard monomials of a Groebner basis of I. On a
    noncommutative algebra the relations must be functions; the basis is then
    xi^gamma s^delta times the standard monomials of I in the functions.
    """

    def __init__(self, algebra: MotifAlgebra, relations: Sequence[OreElement]):
        super().__init__()
        self.algebra = algebra
        self.relations = [r for r in relations if not r.is_zero()]
        self.mode = "U" if algebra.is_commutative else "O"
        if self.mode == "O":
            bad = [r for r in self.relations if not r.is_function()]
            if bad:
                raise UnsupportedModuleError(f"relation {bad[0]} needs a commutative algebra or must be a function")
            self._sizes = (algebra.nx, algebra.nt)
            gens = [{_flatten(m): c for m, c in r.function_part().items()} for r in self.relations]
        else:
            self._sizes = (algebra.nx, algebra.nt, algebra.nxi, algebra.ns)
            gens = [{_flatten(m): c for m, c in r.terms.items()} for r in self.relations]
        self._signed = [False] * algebra.nx + [True] * algebra.nt
        if self.mode == "U":
            self._signed += [False] * algebra.nxi + [True] * algebra.ns
        self.ideal = LaurentIdeal(self._signed, gens)

    
    def is_zero(self) -> bool:
        return self.ideal.is_unit

    def _keys(self, level):
        alg = self.algebra
        if self.mode == "U":
            return [_split(v, self._sizes) for v in signed_vectors(self._signed, level)
                    if self.ideal.is_standard(v)]
        signed = self._signed + [False] * alg.nxi + [True] * alg.ns
        nf = alg.nx + alg.nt
        return [_split(v, (alg.nx, alg.nt, alg.nxi, alg.ns)) for v in signed_vectors(signed, level)
                if self.ideal.is_standard(v[:nf])]

    def size(self, key):
        return sum(_norm(block) for block in key)

    def generator(self) -> Key:
        return self.algebra.unit_monomial()

    def key_element(self, key: Key) -> OreElement:
        if self.mode == "U":
            return self.algebra.element({key: 1})
        return _function_first_element(self.algebra, key)

    def _reduce_function(self, poly):
        reduced = self.ideal.normal_form({_flatten(k): v for k, v in poly.items()})
        return {_split(e, self._sizes): v for e, v in reduced.items()}

    def _act_gen(self, gen, key):
        alg = self.algebra
        if self.mode == "U":
            moved = {_flatten(m): c for m, c in alg.monomial_product(alg.generator_monomial(gen), key).items()}
            return {_split(e, self._sizes): v for e, v in self.ideal.normal_form(moved).items()}
        return _function_first_action(alg, gen, key, self._reduce_function)


class DirectSum(RealizedModule):
    def __init__(self, summands: Sequence[RealizedModule], algebra: Optional[MotifAlgebra] = None):
        super().__init__()
        self.summands = list(summands)
        self.algebra = algebra or (self.summands[0].algebra if self.summands else None)

    def _keys(self, level):
        return [(c, k) for c, mod in enumerate(self.summands) for k in mod.keys(level)]

    def size(self, key):
        return self.summands[key[0]].size(key[1])

    def _act_gen(self, gen, key):
        c, k = key
        return {(c, k2): v for k2, v in self.summands[c].act_gen(gen, k).items()}


class TensorModule(RealizedModule):
    """M1 x M2 over the algebra of the product motif."""

    def __init__(self, first: RealizedModule, second: RealizedModule):
        super().__init__()
        self.first, self.second = first, second
        self.algebra = algebra_from_motif(product(first.algebra.motif, second.algebra.motif))
        a1 = first.algebra
        self._offsets = {"x": a1.nx, "t": a1.nt, "xi": a1.nxi, "s": a1.ns}

    def _keys(self, level):
        out = []
        for k1 in self.first.keys(level):
            for k2 in self.second.keys(level - self.first.size(k1)):
                out.append((k1, k2))
        return out

    def size(self, key):
        return self.first.size(key[0]) + self.second.size(key[1])

    def _act_gen(self, gen, key):
        k1, k2 = key
        off = self._offsets[gen[0]]
        if gen[1] < off:
            return {(n1, k2): v for n1, v in self.first.act_gen(gen, k1).items()}
        local = (gen[0], gen[1] - off) + tuple(gen[2:])
        return {(k1, n2): v for n2, v in self.second.act_gen(local, k2).items()}


class Restricted(RealizedModule):
    """Restriction of scalars along phi: phi.source -> inner.algebra."""

    def __init__(self, inner: RealizedModule, phi: AlgebraMap):
        super().__init__()
        if phi.target != inner.algebra:
            raise UnsupportedModuleError("restriction map does not land in the module's algebra")
        self.inner = inner
        self.phi = phi
        self.algebra = phi.source

    def _keys(self, level):
        return self.inner.keys(level)

    def size(self, key):
        return self.inner.size(key)

    def _act_gen(self, gen, key):
        return self.inner.act(self.phi.images[gen], {key: Fraction(1)})


class InducedLie(RealizedModule):
    """
    Induction along a Lie inclusion xi'' -> xi^(1) + fC xi^(2). Keys (alpha, m)
    stand for (-zeta)^alpha (x) m with zeta = xi^(2).
    """

    def __init__(self, inner: RealizedModule, algebra: MotifAlgebra, fC: RatMatrix, n1: int):
        super().__init__()
        self.inner, self.algebra, self.fC, self.n1 = inner, algebra, fC, n1
        self.n2 = algebra.nxi - n1

    def _keys(self, level):
        out = []
        for alpha in signed_vectors([False] * self.n2, level):
            for k in self.inner.keys(level - sum(alpha)):
                out.append((alpha, k))
        return out

    def size(self, key):
        return sum(key[0]) + self.inner.size(key[1])

    def _bump(self, alpha, c, by=1):
        return tuple(v + by if i == c else v for i, v in enumerate(alpha))

    def _act_gen(self, gen, key):
        alpha, k = key
        kind = gen[0]
        out: Vector = {}
        if kind == "s":
            return {(alpha, k2): v for k2, v in self.inner.act_gen(gen, k).items()}
        if kind == "xi":
            a = gen[1]
            if a >= self.n1:
                return {(self._bump(alpha, a - self.n1), k): Fraction(-1)}
            for k2, v in self.inner.act_gen(gen, k).items():
                accumulate(out, (alpha, k2), v)
            for c in range(self.n2):
                w = self.fC[c, a]
                if w:
                    accumulate(out, (self._bump(alpha, c), k), w)
            return out
        alg = self.algebra
        gm = alg.generator_monomial(gen)
        phi = {(gm[0], gm[1]): Fraction(1)}
        inner_alg = self.inner.algebra
        for kappa_full, psi in alg.derivative_table((0,) * self.n1 + alpha, phi).items():
            if not psi:
                continue
            kappa = kappa_full[self.n1:]
            weight = 1
            for g, kk in zip(alpha, kappa):
                weight *= comb(g, kk)
            rest = tuple(g - kk for g, kk in zip(alpha, kappa))
            for k2, v in self.inner.act(inner_alg.function(psi), {k: Fraction(1)}).items():
                accumulate(out, (rest, k2), v * weight)
        return out


class InducedLattice(RealizedModule):
    """
    Induction along a lattice inclusion e -> (e, fL e). Keys (h, m) stand for
    s2^h (x) m.
    """

    def __init__(self, inner: RealizedModule, algebra: MotifAlgebra, fL: IntMatrix):
        super().__init__()
        self.inner, self.algebra, self.fL = inner, algebra, fL
        self.n1 = fL.cols
        self.n2 = fL.rows

    def _keys(self, level):
        out = []
        for h in signed_vectors([True] * self.n2, level):
            for k in self.inner.keys(level - _norm(h)):
                out.append((h, k))
        return out

    def size(self, key):
        return _norm(key[0]) + self.inner.size(key[1])

    def _act_gen(self, gen, key):
        h, k = key
        kind = gen[0]
        if kind == "xi":
            return {(h, k2): v for k2, v in self.inner.act_gen(gen, k).items()}
        if kind == "s":
            e, p = gen[1], gen[2]
            if e >= self.n1:
                l = e - self.n1
                return {(tuple(v + p if i == l else v for i, v in enumerate(h)), k): Fraction(1)}
            col = self.fL.column(e)
            h2 = tuple(v - p * c for v, c in zip(h, col))
            return {(h2, k2): v for k2, v in self.inner.act_gen(gen, k).items()}
        alg = self.algebra
        gm = alg.generator_monomial(gen)
        shifted = alg.tau((0,) * self.n1 + tuple(-v for v in h), (gm[0], gm[1]))
        inner_alg = self.inner.algebra
        return {(h, k2): v for k2, v in self.inner.act(inner_alg.function(shifted), {k: Fraction(1)}).items()}


# ── presentations ─────────────────────────────────────────────────
def _coordinate_kill(element: OreElement) -> Optional[Tuple[Tuple[str, int], Fraction]]:
    """(generator, value) if element = c (g - value) for a single generator g."""
    unit = element.algebra.unit_monomial()
    moving = [(m, c) for m, c in element.terms.items() if m != unit]
    if len(moving) != 1:
        return None
    m, c = moving[0]
    hits = [(block, idx, e) for block, exps in enumerate(m) for idx, e in enumerate(exps) if e]
    if len(hits) != 1:
        return None
    block, idx, e = hits[0]
    kind = ("x", "t", "xi", "s")[block]
    value = -element.constant() / c
    if e == 1:
        return (kind, idx), value
    if e == -1 and kind in ("t", "s") and value != 0:
        return (kind, idx), 1 / value
    return None


def _cyclic_summand(alg: MotifAlgebra, relations: Sequence[OreElement]) -> RealizedModule:
    if any(e.is_scalar() for e in relations):
        return ZeroModule(alg)
    kills: Dict[Tuple[str, int], Fraction] = {}
    for e in relations:
        kill = _coordinate_kill(e)
        if kill is None:
            break
        gen, value = kill
        if (gen[0] in ("t", "s") and value == 0) or kills.get(gen, value) != value:
            return ZeroModule(alg)
        kills[gen] = value
    else:
        return CyclicModule(alg, kills)
    logger.debug(f"realizing {len(relations)} relations through a Groebner basis")
    module = QuotientModule(alg, relations)
    return ZeroModule(alg) if module.is_zero else module


def realize(presentation: ModulePresentation) -> RealizedModule:
    """
    A realized model of a presentation whose relations each involve a single
    generator. Coordinate kills give a CyclicModule; any other relations need
    a commutative algebra or must be functions, and give a QuotientModule.
    """
    alg = presentation.algebra
    per_generator: List[List[OreElement]] = [[] for _ in range(presentation.ngens)]
    for rel in presentation.relations:
        support = [i for i, e in enumerate(rel) if not e.is_zero()]
        if not support:
            continue
        if len(support) > 1:
            raise UnsupportedModuleError("relations mixing several generators are not realizable")
        per_generator[support[0]].append(rel[support[0]])
    summands = [_cyclic_summand(alg, rels) for rels in per_generator]
    if not summands:
        return ZeroModule(alg)
    if len(summands) == 1:
        return summands[0]
    return DirectSum(summands, alg)


def generator_vectors(presentation: ModulePresentation) -> Tuple[RealizedModule, List[Vector]]:
    """The realized module and the vectors of the presentation's generators in it."""
    module = realize(presentation)
    if not presentation.ngens:
        return module, []
    summands = module.summands if isinstance(module, DirectSum) else [module]
    vectors: List[Vector] = []
    for i, summand in enumerate(summands):
        if isinstance(summand, ZeroModule):
            vectors.append({})
        elif isinstance(module, DirectSum):
            vectors.append({(i, summand.generator()): Fraction(1)})
        else:
            vectors.append({summand.generator(): Fraction(1)})
    return module, vectors
