# src/algebra/ideals.py
"""
Ideals of Laurent polynomial rings, through sympy Groebner bases.

A Laurent monomial is an integer exponent tuple; signed slots may go negative.
Each signed slot y gets a partner z with y*z - 1 in the ideal, so a Laurent
ring becomes a polynomial quotient. Under grevlex the partners never appear
together in a standard monomial and reduction never raises total degree, which
is what keeps realized quotient modules filtered by the l1 size.
"""

import logging
from fractions import Fraction
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.groebnertools import groebner
from sympy.polys.orderings import grevlex
from sympy.polys.rings import ring

from ..arith.linalg import _frac, _qq

logger = logging.getLogger(__name__)

Exps = Tuple[int, ...]
LaurentPoly = Dict[Exps, Fraction]


class LaurentIdeal:
    """The ideal generated by ``generators`` in Q[y_i, y_j^-1 : signed j]."""

    def __init__(self, signed: Sequence[bool], generators: Sequence[Mapping[Exps, Fraction]]):
        self.signed = tuple(bool(s) for s in signed)
        self.nvars = len(self.signed)
        self._partner = {}
        for i, s in enumerate(self.signed):
            if s:
                self._partner[i] = self.nvars + len(self._partner)
        gens = [{e: Fraction(c) for e, c in g.items() if c} for g in generators]
        gens = [g for g in gens if g]
        if not self.nvars:
            # the ground field: any nonzero constant generates everything
            self._ring = None
            self._basis = []
            self._unit = bool(gens)
            self._leads: List[Tuple[int, ...]] = []
            return
        names = [f"y{i}" for i in range(self.nvars)] + [f"z{i}" for i in self._partner]
        self._ring = ring(names, QQ, grevlex)[0]
        polys = [self._to_ring(g) for g in gens]
        one = self._ring.one
        for i, j in self._partner.items():
            polys.append(self._ring.gens[i] * self._ring.gens[j] - one)
        self._basis = groebner(polys, self._ring) if polys else []
        self._unit = any(p.is_ground for p in self._basis)
        self._leads = [p.LM for p in self._basis]
        logger.debug(f"Groebner basis of {len(gens)} relations in {self.nvars} slots: {len(self._basis)} elements")

    # ── conversions ───────────────────────────────────────────────
    def _extend(self, e: Exps) -> Tuple[int, ...]:
        out = [max(v, 0) for v in e] + [0] * len(self._partner)
        for i, j in self._partner.items():
            if e[i] < 0:
                out[j] = -e[i]
        return tuple(out)

    def _contract(self, ext: Sequence[int]) -> Exps:
        out = list(ext[:self.nvars])
        for i, j in self._partner.items():
            out[i] -= ext[j]
        return tuple(out)

    def _to_ring(self, poly: Mapping[Exps, Fraction]):
        for e in poly:
            if len(e) != self.nvars or any(v < 0 and not self.signed[i] for i, v in enumerate(e)):
                raise ValueError(f"exponent {e} does not fit the slots {self.signed}")
        return self._ring.from_dict({self._extend(e): _qq(Fraction(c)) for e, c in poly.items() if c})

    # ── queries ───────────────────────────────────────────────────
    @property
    def is_unit(self) -> bool:
        return self._unit

    @property
    def basis_size(self) -> int:
        return len(self._basis)

    def is_standard(self, e: Exps) -> bool:
        """True if the monomial is not divisible by a leading monomial of the basis."""
        if self._unit:
            return False
        if self._ring is None:
            return True
        ext = self._extend(e)
        return not any(all(a >= b for a, b in zip(ext, lead)) for lead in self._leads)

    def normal_form(self, poly: Mapping[Exps, Fraction]) -> LaurentPoly:
        """Remainder of ``poly`` on division by the basis, as a Laurent polynomial."""
        if self._unit:
            return {}
        clean = {e: Fraction(c) for e, c in poly.items() if c}
        if self._ring is None or not clean:
            return clean
        rem = self._to_ring(clean)
        if self._basis:
            rem = rem.rem(self._basis)
        out: LaurentPoly = {}
        for ext, c in rem.items():
            e = self._contract(ext)
            v = out.get(e, 0) + _frac(c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return out

    def quotient_dimension(self) -> Optional[int]:
        """dim_Q of the quotient ring, or None when it is infinite."""
        if self._unit:
            return 0
        if self._ring is None:
            return 1
        nvars = len(self._ring.gens)
        bounds = [None] * nvars
        for lead in self._leads:
            support = [k for k, a in enumerate(lead) if a]
            if len(support) == 1:
                k = support[0]
                bounds[k] = lead[k] if bounds[k] is None else min(bounds[k], lead[k])
        if any(b is None for b in bounds):
            return None
        return sum(1 for ext in product(*(range(b) for b in bounds))
                   if not any(all(a >= b for a, b in zip(ext, lead)) for lead in self._leads))

    def contains(self, poly: Mapping[Exps, Fraction]) -> bool:
        return not self.normal_form(poly)


__all__ = ["LaurentIdeal", "LaurentPoly"]
