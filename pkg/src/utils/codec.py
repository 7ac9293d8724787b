# src/utils/codec.py
"""
JSON codec for motifs, morphisms, presentations and job payloads.

Every payload is an object with a "kind" field. Rationals are written as JSON
integers when integral and as "p/q" strings otherwise; algebra elements use
the canonical printer of the element parser. decode(encode(x)) == x, and
encode(decode(p)) == p for every payload already in canonical form.
"""

import json
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Tuple, Union

from ..algebra.ore import algebra_from_motif
from ..algebra.parser import format_element, parse_element
from ..algebra.presentation import ModulePresentation
from ..arith import FactoredRational, IntMatrix, RatMatrix, to_fraction
from ..motif.motif import LinearMotif, MotifMorphism, require_valid
from .errors import MotifError, ParseError, ValidationError

logger = logging.getLogger(__name__)


# ── job payloads ──────────────────────────────────────────────────
@dataclass(frozen=True)
class ElementJob:
    motif: LinearMotif
    element: str


@dataclass(frozen=True)
class PairJob:
    f: MotifMorphism
    g: MotifMorphism


@dataclass(frozen=True)
class KoszulJob:
    dim: int
    degree: int


@dataclass(frozen=True)
class FunctorJob:
    morphism: MotifMorphism
    module: ModulePresentation


@dataclass(frozen=True)
class ExchangeJob:
    shape: str
    a: Tuple[Fraction, ...]
    b: Tuple[Fraction, ...]


@dataclass(frozen=True)
class LatticeJob:
    rank: int
    scalars: Tuple[Fraction, ...] = field(default_factory=tuple)


# ── scalars and matrices ──────────────────────────────────────────
def encode_rational(q) -> Union[int, str]:
    q = Fraction(q)
    return int(q) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def decode_rational(value) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"expected an integer or a 'p/q' string, got {value!r}")
    try:
        return to_fraction(value)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"bad rational {value!r}: {e}") from e


def _rows(payload, rows: int, cols: int, name: str) -> List[List[Fraction]]:
    if payload is None:
        return [[Fraction(0)] * cols for _ in range(rows)]
    if not isinstance(payload, list) or len(payload) != rows:
        raise ValidationError(f"{name}: expected {rows} rows")
    out = []
    for r in payload:
        if not isinstance(r, list) or len(r) != cols:
            raise ValidationError(f"{name}: expected rows of length {cols}")
        out.append([decode_rational(v) for v in r])
    return out


def encode_matrix(m: RatMatrix) -> List[List]:
    return [[encode_rational(v) for v in m.row(i)] for i in range(m.rows)]


def decode_matrix(payload, rows: int, cols: int, name: str, integral: bool = False) -> RatMatrix:
    entries = _rows(payload, rows, cols, name)
    kind = IntMatrix if integral else RatMatrix
    try:
        return kind.from_rows(entries, cols)
    except ValueError as e:
        raise ValidationError(f"{name}: {e}") from e


# ── motifs and morphisms ──────────────────────────────────────────
MOTIF_DIMS = ("dV", "dT", "dC", "rL")


def encode_motif(m: LinearMotif) -> Dict:
    out: Dict[str, Any] = {"kind": "motif"}
    out.update(zip(MOTIF_DIMS, m.dims))
    out.update({
        "u0_vec": encode_matrix(m.u0_vec),
        "u0_tor": encode_matrix(m.u0_tor),
        "uet_vec": encode_matrix(m.uet_vec),
        "uet_tor": [[v.to_json() for v in row] for row in m.uet_tor],
    })
    return out


def decode_motif(payload: Dict) -> LinearMotif:
    if not isinstance(payload, dict):
        raise ParseError("motif: expected an object")
    if payload.get("dA"):
        raise ValidationError("motif: abelian parts are not supported")
    dims = [payload.get(name, 0) for name in MOTIF_DIMS]
    for name, d in zip(MOTIF_DIMS, dims):
        if isinstance(d, bool) or not isinstance(d, int) or d < 0:
            raise ParseError(f"motif: {name!r} must be a non-negative integer, got {d!r}")
    dV, dT, dC, rL = dims
    tor_raw = payload.get("uet_tor")
    if tor_raw is None:
        tor = [[FactoredRational() for _ in range(rL)] for _ in range(dT)]
    else:
        if not isinstance(tor_raw, list) or len(tor_raw) != dT or \
                any(not isinstance(r, list) or len(r) != rL for r in tor_raw):
            raise ValidationError(f"uet_tor: expected a {dT} x {rL} block")
        try:
            tor = [[FactoredRational.from_json(v) for v in row] for row in tor_raw]
        except (ValueError, TypeError, AttributeError) as e:
            raise ValidationError(f"uet_tor: {e}") from e
    return LinearMotif(dV, dT, dC, rL,
                       decode_matrix(payload.get("u0_vec"), dV, dC, "u0_vec"),
                       decode_matrix(payload.get("u0_tor"), dT, dC, "u0_tor"),
                       decode_matrix(payload.get("uet_vec"), dV, rL, "uet_vec"),
                       tor)


def encode_morphism(f: MotifMorphism) -> Dict:
    return {
        "kind": "morphism",
        "source": encode_motif(f.source),
        "target": encode_motif(f.target),
        "fV": encode_matrix(f.fV),
        "fT": encode_matrix(f.fT),
        "fC": encode_matrix(f.fC),
        "fL": encode_matrix(f.fL),
    }


def decode_morphism(payload: Dict) -> MotifMorphism:
    s = decode_motif(_field(payload, "source"))
    t = decode_motif(_field(payload, "target"))
    f = MotifMorphism(s, t,
                      decode_matrix(payload.get("fV"), t.dV, s.dV, "fV"),
                      decode_matrix(payload.get("fT"), t.dT, s.dT, "fT", integral=True),
                      decode_matrix(payload.get("fC"), t.dC, s.dC, "fC"),
                      decode_matrix(payload.get("fL"), t.rL, s.rL, "fL", integral=True))
    require_valid(f)
    return f


# ── modules ───────────────────────────────────────────────────────
def encode_module(mod: ModulePresentation) -> Dict:
    if mod.ngens == 1:
        rels: List = [format_element(r[0]) for r in mod.relations]
    else:
        rels = [[format_element(e) for e in r] for r in mod.relations]
    return {"kind": "module", "motif": encode_motif(mod.motif), "ngens": mod.ngens, "relations": rels}


def decode_module(payload: Dict) -> ModulePresentation:
    motif = decode_motif(_field(payload, "motif"))
    alg = algebra_from_motif(motif)
    ngens = payload.get("ngens", 1)
    rels = []
    for r in payload.get("relations", []):
        entries = [r] if isinstance(r, str) else r
        if not isinstance(entries, list) or len(entries) != ngens:
            raise ValidationError(f"module relation {r!r} does not have {ngens} entries")
        rels.append(tuple(parse_element(e, alg) for e in entries))
    return ModulePresentation(alg, ngens, tuple(rels))


# ── dispatch ──────────────────────────────────────────────────────
def _field(payload: Dict, name: str):
    if not isinstance(payload, dict) or name not in payload:
        raise ParseError(f"missing field {name!r}")
    return payload[name]


def _rationals(values) -> Tuple[Fraction, ...]:
    if not isinstance(values, list):
        raise ParseError(f"expected a list of rationals, got {values!r}")
    return tuple(decode_rational(v) for v in values)


_DECODERS: Dict[str, Callable[[Dict], Any]] = {
    "motif": decode_motif,
    "morphism": decode_morphism,
    "module": decode_module,
    "element": lambda p: ElementJob(decode_motif(_field(p, "motif")), str(_field(p, "element"))),
    "pair": lambda p: PairJob(decode_morphism(_field(p, "f")), decode_morphism(_field(p, "g"))),
    "koszul": lambda p: KoszulJob(int(_field(p, "dim")), int(_field(p, "degree"))),
    "functor_job": lambda p: FunctorJob(decode_morphism(_field(p, "morphism")), decode_module(_field(p, "module"))),
    "exchange_job": lambda p: ExchangeJob(str(_field(p, "shape")), _rationals(_field(p, "a")), _rationals(_field(p, "b"))),
    "lattice_job": lambda p: LatticeJob(int(_field(p, "rank")), _rationals(p.get("scalars", []))),
}


def _infer_kind(payload: Dict):
    """Bare motif and morphism objects may omit "kind"."""
    if "fV" in payload or "source" in payload:
        return "morphism"
    if any(name in payload for name in MOTIF_DIMS):
        return "motif"
    return None


def decode(payload: Any) -> Any:
    """Object for a parsed JSON payload, dispatched on its "kind"."""
    if not isinstance(payload, dict):
        raise ParseError("top-level JSON value must be an object")
    kind = payload.get("kind")
    if kind is None:
        kind = _infer_kind(payload)
    if kind not in _DECODERS:
        raise ParseError(f"unknown or missing kind {kind!r}; expected one of {sorted(_DECODERS)}")
    try:
        return _DECODERS[kind](payload)
    except MotifError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed {kind} payload: {e}") from e


def encode(obj: Any) -> Dict:
    if isinstance(obj, LinearMotif):
        return encode_motif(obj)
    if isinstance(obj, MotifMorphism):
        return encode_morphism(obj)
    if isinstance(obj, ModulePresentation):
        return encode_module(obj)
    if isinstance(obj, ElementJob):
        return {"kind": "element", "motif": encode_motif(obj.motif), "element": obj.element}
    if isinstance(obj, PairJob):
        return {"kind": "pair", "f": encode_morphism(obj.f), "g": encode_morphism(obj.g)}
    if isinstance(obj, KoszulJob):
        return {"kind": "koszul", "dim": obj.dim, "degree": obj.degree}
    if isinstance(obj, FunctorJob):
        return {"kind": "functor_job", "morphism": encode_morphism(obj.morphism), "module": encode_module(obj.module)}
    if isinstance(obj, ExchangeJob):
        return {"kind": "exchange_job", "shape": obj.shape,
                "a": [encode_rational(v) for v in obj.a], "b": [encode_rational(v) for v in obj.b]}
    if isinstance(obj, LatticeJob):
        return {"kind": "lattice_job", "rank": obj.rank, "scalars": [encode_rational(v) for v in obj.scalars]}
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"no JSON encoding for {type(obj).__name__}")


# ── files and streams ─────────────────────────────────────────────
def loads(text: str) -> Any:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
    return decode(payload)


def dumps(obj: Any) -> str:
    """Deterministic text: sorted keys, two-space indent."""
    payload = obj if isinstance(obj, dict) else encode(obj)
    return json.dumps(payload, indent=2, sort_keys=True, default=str)


def load_file(path: Union[str, Path]) -> Any:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())


def save_file(obj: Any, path: Union[str, Path]) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj) + "\n")
    logger.debug(f"wrote {path}")
    return str(path)
