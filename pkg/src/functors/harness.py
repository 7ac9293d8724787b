# src/functors/harness.py
"""
Property harness for the functorial calculus on random cartesian squares

    M1' --f'--> M2'
     |a1         |a
     v           v
    M1  --f-->  M2

with f epimorphic. Each trial checks base change, the projection formula,
compatibility with external products and transitivity of direct images at
the level of windowed homology in effective degrees.
"""

import logging
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from tqdm import tqdm

from .. import config
from ..algebra.ore import algebra_from_motif
from ..algebra.presentation import ModulePresentation, character_module, delta_module
from ..arith import IntMatrix, RatMatrix
from ..motif.exact import kernel
from ..motif.motif import (LinearMotif, MotifMorphism, compose, identity, product, product_morphism,
                           projection)
from ..motif.random import MotifSampler
from .direct import pushforward
from .inverse import pullback
from .products import boxtimes_complex, otimes_shriek

logger = logging.getLogger(__name__)


class Family(str, Enum):
    VECTOR = "vector"
    LATTICE = "lattice"

    @classmethod
    def parse(cls, name: str) -> "Family":
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"unknown harness family {name!r}; expected one of {[f.value for f in cls]}")


class Check(str, Enum):
    BASE_CHANGE = "base_change"
    PROJECTION_FORMULA = "projection_formula"
    BOXTIMES = "boxtimes"
    TRANSITIVITY = "transitivity"


# ── random data ───────────────────────────────────────────────────
def _motif(family: Family, n: int) -> LinearMotif:
    return LinearMotif.build(dV=n) if family == Family.VECTOR else LinearMotif.build(rL=n)


def _morphism(family: Family, source: LinearMotif, target: LinearMotif, block) -> MotifMorphism:
    if family == Family.VECTOR:
        return MotifMorphism.build(source, target, fV=block)
    return MotifMorphism.build(source, target, fL=block)


def fiber_product(f: MotifMorphism, a: MotifMorphism) -> Tuple[LinearMotif, MotifMorphism, MotifMorphism]:
    """M1 x_{M2} M2' with its projections a1 (to M1) and f' (to M2')."""
    m1, m2p = f.source, a.source
    h = MotifMorphism(product(m1, m2p), f.target, f.fV.hstack(-a.fV), f.fT.hstack(-a.fT),
                      f.fC.hstack(-a.fC), f.fL.hstack(-a.fL))
    k, incl = kernel(h)
    return k, compose(projection(m1, m2p, 1), incl), compose(projection(m1, m2p, 2), incl)


class SquareSampler:
    """Random epimorphisms, arbitrary base changes and finite modules of one family."""

    def __init__(self, family: Family, seed: int = config.DEFAULT_SEED, max_dim: int = 2):
        self.family = family
        self.sampler = MotifSampler(seed=seed, height=3, max_dim=max_dim)
        self.rng = self.sampler.rng
        self.max_dim = max_dim

    def _block(self, rows: int, cols: int):
        if self.family == Family.VECTOR:
            return self.sampler.rat_matrix(rows, cols)
        return self.sampler.int_matrix(rows, cols, height=2)

    def epimorphism(self, source: LinearMotif, n: int) -> MotifMorphism:
        """[I | R] on the family's block, onto a motif of dimension n."""
        total = source.dV if self.family == Family.VECTOR else source.rL
        eye = RatMatrix.identity(n) if self.family == Family.VECTOR else IntMatrix.identity(n)
        return _morphism(self.family, source, _motif(self.family, n), eye.hstack(self._block(n, total - n)))

    def square(self) -> Tuple[MotifMorphism, MotifMorphism]:
        n1 = self.rng.randint(1, self.max_dim)
        n2 = self.rng.randint(1, n1)
        n2p = self.rng.randint(0, self.max_dim)
        f = self.epimorphism(_motif(self.family, n1), n2)
        a = _morphism(self.family, _motif(self.family, n2p), f.target, self._block(n2, n2p))
        return f, a

    def module(self, motif: LinearMotif) -> ModulePresentation:
        """A delta module (vector family) or a character module (lattice family)."""
        alg = algebra_from_motif(motif)
        if self.family == Family.VECTOR:
            return delta_module(alg, [self.rng.randint(-3, 3) for _ in range(motif.dV)])
        choices = (Fraction(1), Fraction(1), Fraction(2), Fraction(1, 3), Fraction(-1))
        return character_module(alg, (), [self.rng.choice(choices) for _ in range(motif.rL)])


# ── checks ────────────────────────────────────────────────────────
def compare_routes(check: Check, lhs, rhs, window: int) -> Dict:
    """Both routes must agree on effective homology and on their ledgers."""
    left, right = lhs.effective_dims(window), rhs.effective_dims(window)
    ledgers = lhs.ledger.agrees_with(rhs.ledger)
    if not ledgers:
        logger.debug(f"{check.value}: ledgers {lhs.ledger} (rank {lhs.ledger.rank}) "
                     f"and {rhs.ledger} (rank {rhs.ledger.rank}) disagree")
    return {
        "check": check.value,
        "passed": left == right and ledgers,
        "lhs": {str(k): v for k, v in sorted(left.items())},
        "rhs": {str(k): v for k, v in sorted(right.items())},
        "ledgers": {"lhs": str(lhs.ledger), "rhs": str(rhs.ledger), "agree": ledgers},
    }


def base_change(f: MotifMorphism, a: MotifMorphism, module, window: int) -> Dict:
    _, a1, f_prime = fiber_product(f, a)
    lhs = pullback(a, pushforward(f, module))
    rhs = pushforward(f_prime, pullback(a1, module))
    return compare_routes(Check.BASE_CHANGE, lhs, rhs, window)


def projection_formula(f: MotifMorphism, source_module, target_module, window: int) -> Dict:
    lhs = pushforward(f, otimes_shriek(source_module, pullback(f, target_module)))
    rhs = otimes_shriek(pushforward(f, source_module), target_module)
    return compare_routes(Check.PROJECTION_FORMULA, lhs, rhs, window)


def boxtimes_compatibility(f: MotifMorphism, g: MotifMorphism, m, n, window: int) -> Dict:
    lhs = pushforward(product_morphism(f, g), boxtimes_complex(m, n))
    rhs = boxtimes_complex(pushforward(f, m), pushforward(g, n))
    return compare_routes(Check.BOXTIMES, lhs, rhs, window)


def transitivity(f: MotifMorphism, g: MotifMorphism, module, window: int) -> Dict:
    lhs = pushforward(compose(g, f), module)
    rhs = pushforward(g, pushforward(f, module))
    return compare_routes(Check.TRANSITIVITY, lhs, rhs, window)


def identity_square(module, window: int) -> List[Dict]:
    """Every check on identity morphisms; a sanity baseline for the report."""
    m = module.motif
    one = identity(m)
    return [base_change(one, one, module, window),
            projection_formula(one, module, module, window),
            transitivity(one, one, module, window)]


def run_trial(squares: SquareSampler, window: int) -> List[Dict]:
    f, a = squares.square()
    src_module = squares.module(f.source)
    tgt_module = squares.module(f.target)
    g = squares.epimorphism(f.target, squares.rng.randint(1, f.target.dV or f.target.rL))
    results = [
        base_change(f, a, src_module, window),
        projection_formula(f, src_module, tgt_module, window),
        boxtimes_compatibility(f, a, src_module, squares.module(a.source), window),
        transitivity(f, g, src_module, window),
    ]
    for r in results:
        r["dims"] = {"source": f.source.dims, "target": f.target.dims, "base": a.source.dims}
    return results


def run_harness(trials: int = config.DEFAULT_TRIALS, seed: int = config.DEFAULT_SEED,
                window: int = 4, families=(Family.VECTOR, Family.LATTICE),
                progress: bool = False,
                on_trial: Optional[Callable[[Dict], None]] = None) -> Dict:
    """Run ``trials`` random squares per family; the report lists every check."""
    report = {"kind": "harness_report", "seed": seed, "trials": trials, "window": window,
              "families": {}, "failures": 0}
    for family in families:
        family = Family.parse(family) if isinstance(family, str) else family
        squares = SquareSampler(family, seed=seed)
        rows = identity_square(squares.module(_motif(family, 1)), window)
        for c in rows:
            c["trial"] = "identity"
            if not c["passed"]:
                report["failures"] += 1
                logger.warning(f"harness {family.value} identity baseline: {c['check']} failed")
            if on_trial:
                on_trial(c)
        for i in tqdm(range(trials), desc=f"harness[{family.value}]", disable=not progress):
            try:
                checks = run_trial(squares, window)
            except Exception as e:
                logger.error(f"harness trial {i} ({family.value}) raised: {e}", exc_info=True)
                checks = [{"check": "trial", "passed": False, "error": f"{type(e).__name__}: {e}"}]
            for c in checks:
                c["trial"] = i
                if not c["passed"]:
                    report["failures"] += 1
                    logger.warning(f"harness {family.value} trial {i}: {c['check']} failed")
                if on_trial:
                    on_trial(c)
            rows.extend(checks)
        report["families"][family.value] = rows
    report["passed"] = report["failures"] == 0
    logger.info(f"harness: {report['failures']} failures over {trials} trials per family")
    return report
