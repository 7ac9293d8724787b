# src/fourier/oracles.py
"""
Verification oracles for the Fourier transform and the duality functor.
Every oracle returns a JSON-ready report with a ``passed`` flag. With
``strict=True`` a failed report raises OracleFailure instead.
"""

import logging
import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from .. import config
from ..algebra.ore import algebra_from_motif
from ..algebra.presentation import (ModulePresentation, cyclic_module, delta_module, free_module, induce,
                                    function_algebra)
from ..functors.direct import pushforward
from ..functors.products import convolution, otimes_shriek
from ..functors.result import TransformResult
from ..functors.twist import (BlockLines, TwistShift, contravariant, duality_ledger, fourier_ledger)
from ..homology.complexes import concentrated, koszul_total
from ..homology.homology import find_isomorphism, homology
from ..homology.modules import ZeroModule, realize
from ..motif.duality import cartier_dual, dimension_identity_holds
from ..motif.motif import LinearMotif, structure_morphism
from ..utils.errors import OracleFailure
from ..utils.shapes import ElementaryShape
from .duality import dual_presentation, duality, normalized_relations
from .elementary import ShapeLike, elementary_presentation, fourier_elementary, invert, relabel_map, resolve_shape
from .transform import fourier_complex

logger = logging.getLogger(__name__)


def _support(result: TransformResult, window: Optional[int]) -> Dict[int, int]:
    """Nonzero homology by complex degree."""
    return {s.degree: s.homology_dim for s in result.homology(window) if s.homology_dim}


def settle(report: Dict, strict: bool) -> Dict:
    """The report itself, or OracleFailure when ``strict`` and the report failed."""
    if strict and not report["passed"]:
        raise OracleFailure(f"{report['kind']} check failed", report)
    return report


def _is_zero(mod: ModulePresentation) -> bool:
    return isinstance(realize(mod), ZeroModule)


def _matches(result: TransformResult, target: ModulePresentation, window: Optional[int]) -> Dict:
    """Homology concentrated in complex degree 0 and isomorphic there to ``target``."""
    support = _support(result, window)
    if _is_zero(target):
        return {"support": support, "iso": None, "passed": not support}
    witness = None
    if set(support) == {0}:
        witness = find_isomorphism(result.complex, 0, target, window)
    return {"support": support, "iso": witness.to_json() if witness else None,
            "passed": set(support) == {0} and witness is not None}


def _single_degree_match(result: TransformResult, target: ModulePresentation, window: Optional[int]) -> Dict:
    """Homology in exactly one complex degree, isomorphic there to ``target``."""
    support = _support(result, window)
    witness = None
    if len(support) == 1:
        (degree, _), = support.items()
        witness = find_isomorphism(result.complex, degree, target, window)
    return {"support": {str(k): v for k, v in support.items()},
            "iso": witness.to_json() if witness else None,
            "ledger": result.ledger.to_json(),
            "passed": witness is not None}


# ── Fourier transform ─────────────────────────────────────────────
def agreement_oracle(shape: ShapeLike, mod: ModulePresentation, window: Optional[int] = None,
                     strict: bool = False) -> Dict:
    """General transform against the closed form: support, explicit isomorphism and ledger."""
    shape, m = resolve_shape(shape, max(mod.motif.dims))
    general = fourier_complex(m, mod)
    closed = fourier_elementary(shape, mod)
    target = elementary_presentation(shape, mod)
    match = _matches(general, target, window)
    ledger_ok = general.ledger == closed.ledger
    report = {
        "kind": "agreement", "shape": shape.value,
        "general": {str(k): v for k, v in match["support"].items()},
        "elementary": {str(k): v for k, v in _support(closed, window).items()},
        "iso": match["iso"],
        "ledger": {"general": general.ledger.to_json(), "elementary": closed.ledger.to_json()},
        "passed": match["passed"] and ledger_ok,
    }
    logger.info(f"agreement {shape.value}: {'pass' if report['passed'] else 'FAIL'}")
    return settle(report, strict)


def involution_ledger(m: LinearMotif, lines: Optional[BlockLines] = None) -> TwistShift:
    """omega_M^-2 (x) omega_M'^-1 [-2 d_G + d_formal' + r_formal' - d_G'], with omega_M' = omega_M."""
    lines = lines or BlockLines.canonical(m)
    d = cartier_dual(m)
    return lines.motif_line.scaled(-3) + TwistShift.of({}, -2 * m.dG + d.dC + d.rL - d.dG)


def involutivity_oracle(shape: ShapeLike, mod: ModulePresentation, window: Optional[int] = None,
                        strict: bool = False) -> Dict:
    """
    Closed form over M, then the general transform over M', compared with the
    pullback of ``mod`` along the inversion.
    """
    shape, m = resolve_shape(shape, max(mod.motif.dims))
    lines = BlockLines.canonical(m)
    first = fourier_elementary(shape, mod, lines)
    second = fourier_complex(cartier_dual(m), first)
    target = invert(mod)
    match = _matches(second, target, window)
    expected = involution_ledger(m, lines)
    report = {
        "kind": "involutivity", "shape": shape.value,
        "support": {str(k): v for k, v in match["support"].items()},
        "iso": match["iso"],
        "ledger": second.ledger.to_json(),
        "expected_ledger": expected.to_json(),
        "shift": second.ledger.shift,
        "weyl_sign": config.FOURIER_SIGN,
        "passed": match["passed"] and second.ledger == expected,
    }
    logger.info(f"involutivity {shape.value}: shift {second.ledger.shift}, "
                f"{'pass' if report['passed'] else 'FAIL'}")
    return settle(report, strict)


def _delta(shape: ElementaryShape, alg, point: Sequence[Fraction]) -> ModulePresentation:
    if shape in (ElementaryShape.WEYL, ElementaryShape.VECTOR):
        return delta_module(alg, point)
    return delta_module(alg, (), point)


def exchange_oracle(shape: ShapeLike, a: Sequence, b: Sequence, window: Optional[int] = None,
                    strict: bool = False) -> Dict:
    """
    delta_a * delta_b against delta_{a+b} (delta_{ab} on a torus) by direct
    convolution, and F(delta_a) (x)^! F(delta_b) against F(delta_{a+b}).
    """
    a, b = [Fraction(v) for v in a], [Fraction(v) for v in b]
    shape, m = resolve_shape(shape, len(a))
    if shape not in (ElementaryShape.WEYL, ElementaryShape.MELLIN, ElementaryShape.VECTOR,
                     ElementaryShape.TORUS):
        raise ValueError(f"exchange oracle needs a group with points, got {shape.value}")
    alg = algebra_from_motif(m)
    additive = shape in (ElementaryShape.WEYL, ElementaryShape.VECTOR)
    total = [x + y for x, y in zip(a, b)] if additive else [x * y for x, y in zip(a, b)]
    da, db, dsum = _delta(shape, alg, a), _delta(shape, alg, b), _delta(shape, alg, total)

    direct = _single_degree_match(convolution(da, db), dsum, window)
    fa, fb = fourier_elementary(shape, da), fourier_elementary(shape, db)
    fourier_side = _single_degree_match(otimes_shriek(fa, fb), elementary_presentation(shape, dsum), window)
    report = {
        "kind": "exchange", "shape": shape.value,
        "a": [str(v) for v in a], "b": [str(v) for v in b], "sum": [str(v) for v in total],
        "convolution": direct, "fourier": fourier_side,
        "passed": direct["passed"] and fourier_side["passed"],
    }
    logger.info(f"exchange {shape.value} {report['a']} * {report['b']}: "
                f"{'pass' if report['passed'] else 'FAIL'}")
    return settle(report, strict)


def exchange_pairs(seed: int = config.DEFAULT_SEED, count: int = 10, torus: bool = False) -> List[Tuple]:
    rng = random.Random(seed)
    pool = [-3, -2, -1, 1, 2, 3] if torus else list(range(-4, 5))
    return [((rng.choice(pool),), (rng.choice(pool),)) for _ in range(count)]


def mellin_check(lam, radius: int = 6, strict: bool = False) -> Dict:
    """
    Brute force on Laurent monomials t^n, |n| <= radius: t^n -> e_n intertwines
    t with s' and theta with -x', where x' acts on e_n by -n. The relation
    theta - lam maps to omega - lam for omega = -x', and both kill exactly the
    n equal to lam.
    """
    lam = Fraction(lam)
    phi = relabel_map(ElementaryShape.MELLIN)
    src, tgt = phi.source, phi.target
    window = range(-radius, radius + 1)

    def act_src(element, n):
        out = {}
        for (_, beta, gamma, _), c in element.terms.items():
            k = n + beta[0]
            out[k] = out.get(k, 0) + c * Fraction(n) ** gamma[0]
        return {k: v for k, v in out.items() if v}

    def act_tgt(element, n):
        out = {}
        for (alpha, _, _, delta), c in element.terms.items():
            k = n + delta[0]
            out[k] = out.get(k, 0) + c * Fraction(-k) ** alpha[0]
        return {k: v for k, v in out.items() if v}

    gens = [src.t(0), src.t(0, -1), src.xi(0)]
    intertwines = all(act_src(g, n) == act_tgt(phi(g), n) for g in gens for n in window)
    relation = src.xi(0) - lam
    image = phi(relation)
    omega = -tgt.x(0)
    killed_src = [n for n in window if not act_src(relation, n)]
    killed_tgt = [n for n in window if not act_tgt(image, n)]
    report = {
        "kind": "mellin", "lambda": str(lam), "radius": radius,
        "intertwines": intertwines,
        "relation": str(image),
        "relation_is_omega_minus_lambda": image == omega - lam,
        "killed": killed_src,
        "passed": intertwines and image == omega - lam and killed_src == killed_tgt,
    }
    logger.info(f"mellin lambda={lam}: {'pass' if report['passed'] else 'FAIL'}")
    return settle(report, strict)


def twist_identity_holds(m: LinearMotif) -> bool:
    """The shift of the double transform is the same integer read from M or from M'."""
    return dimension_identity_holds(m)


# ── duality ───────────────────────────────────────────────────────
def theorem_iv_oracle(shape: ShapeLike, mod: ModulePresentation, strict: bool = False) -> Dict:
    """
    D' F(mod) against the inversion of F(D(mod)) on presentations, and the
    ledger difference omega_M^3 [d_G - d_formal - r_formal + 2 d_G'].
    """
    shape, m = resolve_shape(shape, max(mod.motif.dims))
    lines = BlockLines.canonical(m)
    d = cartier_dual(m)
    left = dual_presentation(elementary_presentation(shape, mod))
    right = invert(elementary_presentation(shape, dual_presentation(mod)))
    same = normalized_relations(left) == normalized_relations(right)

    f_ledger = fourier_ledger(lines, m)
    left_ledger = contravariant(duality_ledger(lines.dual(), d), f_ledger)
    right_ledger = f_ledger + duality_ledger(lines, m)
    expected = lines.motif_line.scaled(3) + TwistShift.of({}, m.dG - m.dC - m.rL + 2 * d.dG)
    diff = left_ledger - right_ledger
    return settle({
        "kind": "theorem_iv", "shape": shape.value,
        "relations_match": same,
        "ledger_difference": diff.to_json(), "expected": expected.to_json(),
        "passed": same and diff == expected,
    }, strict)


def _vector_pushforward_check(mod: ModulePresentation, window: Optional[int]) -> Dict:
    """f_* D against D_pt f_* for f the structure morphism: degrees are mirrored."""
    f = structure_morphism(mod.motif)
    plain = pushforward(f, mod).effective_dims(window)
    dual = pushforward(f, duality(mod)).effective_dims(window)
    mirrored = {-k: v for k, v in plain.items()}
    return {"plain": {str(k): v for k, v in plain.items()},
            "dual": {str(k): v for k, v in dual.items()},
            "passed": dual == mirrored}


def _function_ext(f: ModulePresentation, window: Optional[int]) -> Dict:
    """
    RHom_O(F, O) for F = O/(f_1..f_k) from the Koszul complex over the
    function algebra: by self-duality it is the Koszul homology moved up by k,
    so F is its own dual exactly when that homology sits in degree 0 alone.
    """
    fs = f.cyclic_relations()
    k = koszul_total(concentrated(realize(free_module(f.algebra))), fs)
    support = {s.degree: s.homology_dim for s in homology(k, window) if s.homology_dim}
    witness = find_isomorphism(k, 0, f, window) if set(support) == {0} else None
    return {"degree": len(fs), "support": {str(d + len(fs)): v for d, v in support.items()},
            "iso": witness is not None}


def duality_case(name: str, mod: ModulePresentation, window: Optional[int] = None,
                 strict: bool = False) -> Dict:
    """
    D applied twice against the input, the induced-module closed form against
    an Ext computed over the function algebra and, on finite modules over
    [0->V], f_* D = D f_*. Homology is compared through explicit isomorphisms.
    """
    m = mod.motif
    lines = BlockLines.canonical(m)
    k = len(mod.relations)
    once = duality(mod, lines)
    report: Dict = {"kind": "duality", "name": name, "degree": k, "ledger": once.ledger.to_json()}

    twice = duality(dual_presentation(mod), lines)
    support = _support(twice, window)
    back = find_isomorphism(twice.complex, k, mod, window) if set(support) == {k} else None
    composite = contravariant(twice.ledger, once.ledger)
    report["biduality"] = {"support": {str(d): v for d, v in support.items()},
                           "iso": back.to_json() if back else None,
                           "ledger": composite.to_json(),
                           "passed": back is not None and composite.is_trivial()}
    passed = report["biduality"]["passed"]

    if all(e.is_function() for r in mod.relations for e in r):
        fa = function_algebra(m)
        f = cyclic_module(fa, [fa.function(r[0].function_part()) for r in mod.relations])
        ext = _function_ext(f, window)
        ind = induce(f, m)
        d_ind = duality(ind, lines)
        # Ind(RHom(F, O)) (x) omega_M (x) omega_formal^-1 [d_G]
        expected_degree = ext["degree"] - m.dG
        closed = lines.motif_line - lines.formal + TwistShift.of({}, m.dG)
        effective = d_ind.effective_dims(window)
        iso = find_isomorphism(d_ind.complex, k, induce(f, m), window) if ext["iso"] else None
        report["induced"] = {"ext": ext, "effective": {str(d): v for d, v in effective.items()},
                             "expected_degree": expected_degree,
                             "iso": iso.to_json() if iso else None,
                             "passed": (iso is not None and set(effective) <= {expected_degree}
                                        and d_ind.ledger == closed)}
        passed = passed and report["induced"]["passed"]
    if m.dims == (m.dV, 0, 0, 0) and m.dV and mod.relations and len(mod.relations) == m.dV:
        report["pushforward"] = _vector_pushforward_check(mod, window)
        passed = passed and report["pushforward"]["passed"]
    report["passed"] = passed
    return settle(report, strict)


def duality_fixtures(seed: int = config.DEFAULT_SEED) -> List[Tuple[str, ModulePresentation]]:
    """Twenty small modules: commutative shapes in dimension <= 2, Weyl and Mellin in dimension 1."""
    rng = random.Random(seed)
    out: List[Tuple[str, ModulePresentation]] = []
    for n in (1, 2):
        vec = algebra_from_motif(ElementaryShape.VECTOR.motif(n))
        out.append((f"free[0->V]^{n}", free_module(vec)))
        out.append((f"delta[0->V]^{n}", delta_module(vec, [rng.randint(-3, 3) for _ in range(n)])))
        out.append((f"origin[0->V]^{n}", delta_module(vec, [0] * n)))
        tor = algebra_from_motif(ElementaryShape.TORUS.motif(n))
        out.append((f"delta[0->T]^{n}", delta_module(tor, (), [rng.choice((1, 2, 3, -1)) for _ in range(n)])))
        lat = algebra_from_motif(ElementaryShape.LATTICE.motif(n))
        out.append((f"char[X->0]^{n}", cyclic_module(lat, [lat.s(e) - rng.choice((1, 2, 3)) for e in range(n)])))
        formal = algebra_from_motif(ElementaryShape.FORMAL_VECTOR.motif(n))
        out.append((f"char[V^0->0]^{n}", cyclic_module(formal, [formal.xi(a) - rng.randint(-2, 2) for a in range(n)])))
    weyl = algebra_from_motif(ElementaryShape.WEYL.motif(1))
    mellin = algebra_from_motif(ElementaryShape.MELLIN.motif(1))
    for lam in (0, 1, Fraction(-2), Fraction(3, 5)):
        out.append((f"char[V^0->V] {lam}", cyclic_module(weyl, [weyl.xi(0) - lam])))
    out.append(("delta[V^0->V]", delta_module(weyl, [2])))
    out.append(("char[T^0->T]", cyclic_module(mellin, [mellin.xi(0) - Fraction(1, 2)])))
    out.append(("delta[T^0->T]", delta_module(mellin, (), [3])))
    out.append(("free[T^0->T]", free_module(mellin)))
    return out


def duality_oracles(seed: int = config.DEFAULT_SEED, window: Optional[int] = None,
                    progress: bool = False, strict: bool = False) -> Dict:
    cases = duality_fixtures(seed)
    rows = []
    for name, mod in tqdm(cases, desc="duality", disable=not progress):
        try:
            rows.append(duality_case(name, mod, window))
        except Exception as e:
            logger.error(f"duality case {name} raised: {e}", exc_info=True)
            rows.append({"kind": "duality", "name": name, "passed": False, "error": f"{type(e).__name__}: {e}"})
    for shape in (ElementaryShape.WEYL, ElementaryShape.VECTOR, ElementaryShape.TORUS, ElementaryShape.MELLIN):
        m = shape.motif(1)
        alg = algebra_from_motif(m)
        mod = cyclic_module(alg, [alg.xi(0) - 1]) if alg.nxi else free_module(alg)
        rows.append(theorem_iv_oracle(shape, mod))
    failures = sum(1 for r in rows if not r["passed"])
    return settle({"kind": "duality_report", "seed": seed, "cases": rows, "failures": failures,
                     "passed": not failures}, strict)
