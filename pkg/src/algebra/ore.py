# src/algebra/ore.py
"""
The twisted algebra attached to a linear motif and its crossed product with
the etale lattice.

Elements are kept in normal form: a Q-linear combination of monomials
x^alpha t^beta xi^gamma s^delta (functions on the left, then invariant
derivations, then shifts). Commutation rules:

    xi_a x_i = x_i xi_a + u0_vec[i, a]
    xi_a t_j = t_j xi_a + u0_tor[j, a] t_j
    s_e x_i  = (x_i + uet_vec[i, e]) s_e
    s_e t_j  = uet_tor[j, e] t_j s_e

all other pairs of generators commute.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from ..motif.motif import LinearMotif
from ..utils.errors import AlgebraMismatchError

logger = logging.getLogger(__name__)

Exps = Tuple[int, ...]
Monomial = Tuple[Exps, Exps, Exps, Exps]
FunctionKey = Tuple[Exps, Exps]
Poly = Dict[FunctionKey, Fraction]
GenKey = tuple


def _add(a: Exps, b: Exps) -> Exps:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Exps, b: Exps) -> Exps:
    return tuple(x - y for x, y in zip(a, b))


def _accumulate(target: dict, key, value):
    if not value:
        return
    v = target.get(key, 0) + value
    if v:
        target[key] = v
    else:
        target.pop(key, None)


class MotifAlgebra:
    """The algebra of a linear motif with its multiplication cache."""

    def __init__(self, motif: LinearMotif):
        self.motif = motif
        self.nx, self.nt, self.nxi, self.ns = motif.dV, motif.dT, motif.dC, motif.rL
        self._shift_vec = [[motif.uet_vec[i, e] for e in range(self.ns)] for i in range(self.nx)]
        self._shift_tor = [[motif.uet_tor[j][e].value for e in range(self.ns)] for j in range(self.nt)]
        self._deriv_vec = [[motif.u0_vec[i, a] for i in range(self.nx)] for a in range(self.nxi)]
        self._deriv_tor = [[motif.u0_tor[j, a] for j in range(self.nt)] for a in range(self.nxi)]
        self._product_cache: Dict[Tuple[Monomial, Monomial], Dict[Monomial, Fraction]] = {}
        self._tau_cache: Dict[Tuple[Exps, FunctionKey], Poly] = {}

    # ── identity ───────────────────────────────────────────────────
    def __eq__(self, other):
        return isinstance(other, MotifAlgebra) and self.motif == other.motif

    def __hash__(self):
        return hash(self.motif)

    def __repr__(self):
        return (f"MotifAlgebra(x:{self.nx}, t:{self.nt}, xi:{self.nxi}, s:{self.ns})")

    @property
    def is_commutative(self) -> bool:
        return self.motif.is_commutative()

    # ── monomials ──────────────────────────────────────────────────
    def unit_monomial(self) -> Monomial:
        return ((0,) * self.nx, (0,) * self.nt, (0,) * self.nxi, (0,) * self.ns)

    def generator_keys(self) -> List[GenKey]:
        keys: List[GenKey] = [("x", i) for i in range(self.nx)]
        keys += [("t", j, s) for j in range(self.nt) for s in (1, -1)]
        keys += [("xi", a) for a in range(self.nxi)]
        keys += [("s", e, s) for e in range(self.ns) for s in (1, -1)]
        return keys

    def generator_monomial(self, key: GenKey) -> Monomial:
        parts = [list(p) for p in self.unit_monomial()]
        kind, idx = key[0], key[1]
        block = {"x": 0, "t": 1, "xi": 2, "s": 3}[kind]
        parts[block][idx] = key[2] if kind in ("t", "s") else 1
        return tuple(tuple(p) for p in parts)

    # ── element constructors ───────────────────────────────────────
    def element(self, terms: Mapping[Monomial, Union[int, Fraction]]) -> "OreElement":
        return OreElement(self, {m: Fraction(c) for m, c in terms.items() if c})

    def zero(self) -> "OreElement":
        return OreElement(self, {})

    def one(self) -> "OreElement":
        return self.scalar(1)

    def scalar(self, c) -> "OreElement":
        return self.element({self.unit_monomial(): Fraction(c)})

    def gen(self, key: GenKey) -> "OreElement":
        return self.element({self.generator_monomial(key): 1})

    def x(self, i: int) -> "OreElement":
        return self.gen(("x", i))

    def t(self, j: int, power: int = 1) -> "OreElement":
        return self.gen(("t", j, 1 if power >= 0 else -1)) ** abs(power)

    def xi(self, a: int) -> "OreElement":
        return self.gen(("xi", a))

    def s(self, e: int, power: int = 1) -> "OreElement":
        return self.gen(("s", e, 1 if power >= 0 else -1)) ** abs(power)

    def function(self, poly: Mapping[FunctionKey, Fraction]) -> "OreElement":
        zero_xi, zero_s = (0,) * self.nxi, (0,) * self.ns
        return self.element({(a, b, zero_xi, zero_s): c for (a, b), c in poly.items()})

    # ── function calculus ──────────────────────────────────────────
    def tau(self, delta: Exps, key: FunctionKey) -> Poly:
        """Translation of the function x^alpha t^beta by the lattice vector delta."""
        cache_key = (delta, key)
        if cache_key in self._tau_cache:
            return self._tau_cache[cache_key]
        alpha, beta = key
        scale = Fraction(1)
        for j, b in enumerate(beta):
            if b:
                for e, d in enumerate(delta):
                    if d:
                        scale *= self._shift_tor[j][e] ** (b * d)
        shifts = [sum((self._shift_vec[i][e] * d for e, d in enumerate(delta) if d), Fraction(0))
                  for i in range(self.nx)]
        poly: Poly = {((0,) * self.nx, beta): scale}
        for i, a in enumerate(alpha):
            if not a:
                continue
            c = shifts[i]
            if not c:
                poly = {(_add(k[0], tuple(a if m == i else 0 for m in range(self.nx))), k[1]): v
                        for k, v in poly.items()}
                continue
            out: Poly = {}
            for k, v in poly.items():
                for r in range(a + 1):
                    bump = tuple(r if m == i else 0 for m in range(self.nx))
                    _accumulate(out, (_add(k[0], bump), k[1]), v * comb(a, r) * c ** (a - r))
            poly = out
        self._tau_cache[cache_key] = poly
        return poly

    def derive(self, a: int, poly: Poly) -> Poly:
        """The invariant derivation attached to xi_a applied to a function."""
        out: Poly = {}
        dv, dt = self._deriv_vec[a], self._deriv_tor[a]
        for (alpha, beta), v in poly.items():
            euler = sum((dt[j] * b for j, b in enumerate(beta) if b), Fraction(0))
            _accumulate(out, (alpha, beta), v * euler)
            for i, ai in enumerate(alpha):
                if ai and dv[i]:
                    lowered = tuple(x - 1 if m == i else x for m, x in enumerate(alpha))
                    _accumulate(out, (lowered, beta), v * dv[i] * ai)
        return out

    def derivative_table(self, gamma: Exps, poly: Poly) -> Dict[Exps, Poly]:
        """All D^kappa(poly) for kappa <= gamma."""
        table: Dict[Exps, Poly] = {(): poly}
        for a, g in enumerate(gamma):
            nxt: Dict[Exps, Poly] = {}
            for kappa, p in table.items():
                cur = p
                for k in range(g + 1):
                    nxt[kappa + (k,)] = cur
                    if k < g:
                        cur = self.derive(a, cur) if cur else cur
            table = nxt
        return table

    @staticmethod
    def poly_mul(p: Poly, q: Poly) -> Poly:
        out: Poly = {}
        for (a1, b1), v1 in p.items():
            for (a2, b2), v2 in q.items():
                _accumulate(out, (_add(a1, a2), _add(b1, b2)), v1 * v2)
        return out

    # ── multiplication ─────────────────────────────────────────────
    def monomial_product(self, m1: Monomial, m2: Monomial) -> Dict[Monomial, Fraction]:
        key = (m1, m2)
        cached = self._product_cache.get(key)
        if cached is not None:
            return cached
        alpha1, beta1, gamma1, delta1 = m1
        alpha2, beta2, gamma2, delta2 = m2
        phi = self.tau(delta1, (alpha2, beta2))
        delta = _add(delta1, delta2)
        out: Dict[Monomial, Fraction] = {}
        for kappa, psi in self.derivative_table(gamma1, phi).items():
            if not psi:
                continue
            weight = 1
            for g, k in zip(gamma1, kappa):
                weight *= comb(g, k)
            gamma = _add(_sub(gamma1, kappa), gamma2)
            for (alpha, beta), v in psi.items():
                _accumulate(out, (_add(alpha1, alpha), _add(beta1, beta), gamma, delta), v * weight)
        self._product_cache[key] = out
        return out

    def multiply(self, a: "OreElement", b: "OreElement") -> "OreElement":
        if a.algebra != self or b.algebra != self:
            raise AlgebraMismatchError("multiply: operands belong to different algebras")
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                for m, c in self.monomial_product(m1, m2).items():
                    _accumulate(out, m, c1 * c2 * c)
        return OreElement(self, out)

    def normal_form(self, word: Iterable["OreElement"]) -> "OreElement":
        """Normal form of a product of elements, left to right."""
        result = self.one()
        for factor in word:
            result = self.multiply(result, factor)
        return result

    def commutator(self, a: "OreElement", b: "OreElement") -> "OreElement":
        return self.multiply(a, b) - self.multiply(b, a)


@lru_cache(maxsize=None)
def algebra_from_motif(motif: LinearMotif) -> MotifAlgebra:
    """The (shared, cached) algebra of a motif."""
    logger.debug(f"building algebra for {motif!r}")
    return MotifAlgebra(motif)


class OreElement:
    """An element in normal form; immutable by convention."""

    __slots__ = ("algebra", "terms", "_hash")

    def __init__(self, algebra: MotifAlgebra, terms: Dict[Monomial, Fraction]):
        self.algebra = algebra
        self.terms = {m: c for m, c in terms.items() if c}
        self._hash = None

    def _check(self, other: "OreElement"):
        if self.algebra != other.algebra:
            raise AlgebraMismatchError("elements belong to different algebras")

    def _lift(self, other) -> "OreElement":
        if isinstance(other, OreElement):
            self._check(other)
            return other
        return self.algebra.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(out, m, c)
        return OreElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return OreElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, OreElement):
            return self.algebra.multiply(self, other)
        c = Fraction(other)
        return OreElement(self.algebra, {m: v * c for m, v in self.terms.items()})

    def __rmul__(self, other):
        c = Fraction(other)
        return OreElement(self.algebra, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are only available for t and s generators")
        result = self.algebra.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, OreElement):
            return self.algebra == other.algebra and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.algebra.scalar(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        unit = self.algebra.unit_monomial()
        return all(m == unit for m in self.terms)

    def constant(self) -> Fraction:
        return self.terms.get(self.algebra.unit_monomial(), Fraction(0))

    def is_function(self) -> bool:
        """No xi and no s in any term."""
        return all(not any(m[2]) and not any(m[3]) for m in self.terms)

    def function_part(self) -> Poly:
        return {(m[0], m[1]): c for m, c in self.terms.items()}

    def degree(self) -> int:
        return max((sum(m[0]) + sum(m[2]) for m in self.terms), default=-1)

    def __repr__(self):
        from .parser import format_element
        return f"OreElement({format_element(self)!r})"

    def __str__(self):
        from .parser import format_element
        return format_element(self)


@dataclass
class AlgebraMap:
    """
    A ring map between motif algebras, given by the images of the generators
    ('x', i), ('t', j, +-1), ('xi', a), ('s', e, +-1). Missing inverse images
    of t and s are derived when the forward image is a unit monomial.
    """

    source: MotifAlgebra
    target: MotifAlgebra
    images: Dict[GenKey, OreElement]
    _cache: Dict[Monomial, OreElement] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for key in self.source.generator_keys():
            if key in self.images:
                if self.images[key].algebra != self.target:
                    raise AlgebraMismatchError(f"image of {key} lives in another algebra")
                continue
            if key[0] in ("t", "s") and key[2] == -1 and (key[0], key[1], 1) in self.images:
                self.images[key] = unit_inverse(self.images[(key[0], key[1], 1)])
            else:
                raise AlgebraMismatchError(f"no image given for generator {key}")

    def apply_monomial(self, m: Monomial) -> OreElement:
        cached = self._cache.get(m)
        if cached is not None:
            return cached
        word = []
        for i, a in enumerate(m[0]):
            word += [self.images[("x", i)]] * a
        for j, b in enumerate(m[1]):
            word += [self.images[("t", j, 1 if b > 0 else -1)]] * abs(b)
        for a, g in enumerate(m[2]):
            word += [self.images[("xi", a)]] * g
        for e, d in enumerate(m[3]):
            word += [self.images[("s", e, 1 if d > 0 else -1)]] * abs(d)
        result = self.target.normal_form(word)
        self._cache[m] = result
        return result

    def __call__(self, element: OreElement) -> OreElement:
        if element.algebra != self.source:
            raise AlgebraMismatchError("AlgebraMap applied to an element of another algebra")
        out = self.target.zero()
        for m, c in element.terms.items():
            out = out + self.apply_monomial(m) * c
        return out

    def is_homomorphism(self) -> bool:
        """Check every defining relation of the source on the images."""
        src = self.source
        keys = src.generator_keys()
        for k1 in keys:
            g1 = src.gen(k1)
            for k2 in keys:
                g2 = src.gen(k2)
                if self(src.multiply(g1, g2)) != self.images[k1] * self.images[k2]:
                    logger.debug(f"relation {k1}*{k2} not preserved")
                    return False
        return True

    def then(self, other: "AlgebraMap") -> "AlgebraMap":
        """other after self."""
        return AlgebraMap(self.source, other.target, {k: other(v) for k, v in self.images.items()})


def unit_inverse(u: OreElement) -> OreElement:
    """Inverse of c * t^beta * s^delta."""
    if len(u.terms) != 1:
        raise AlgebraMismatchError(f"{u} is not a unit monomial")
    (m, c), = u.terms.items()
    if any(m[0]) or any(m[2]):
        raise AlgebraMismatchError(f"{u} is not a unit monomial")
    alg = u.algebra
    zero_x, zero_xi = (0,) * alg.nx, (0,) * alg.nxi
    inv_s = alg.element({(zero_x, (0,) * alg.nt, zero_xi, tuple(-d for d in m[3])): 1})
    inv_t = alg.element({(zero_x, tuple(-b for b in m[1]), zero_xi, (0,) * alg.ns): 1 / c})
    return inv_s * inv_t


def identity_map(alg: MotifAlgebra) -> AlgebraMap:
    return AlgebraMap(alg, alg, {k: alg.gen(k) for k in alg.generator_keys()})
