# src/pipeline.py
import logging
from enum import Enum
from typing import Any, Callable, Dict, List, Optional

from . import config
from .algebra.ore import algebra_from_motif
from .algebra.parser import format_element, parse_element
from .algebra.presentation import ModulePresentation, coherence_witness, induce
from .fourier.duality import dual_presentation, duality
from .fourier.oracles import (agreement_oracle, duality_oracles, exchange_oracle, exchange_pairs,
                              involutivity_oracle, settle)
from .fourier.transform import fourier_complex
from .functors.direct import pushforward
from .functors.harness import run_harness
from .functors.inverse import pullback
from .homology.complexes import koszul_complex, lattice_resolution
from .homology.homology import homology
from .motif.duality import cartier_dual, dual_morphism
from .motif.exact import cokernel, failing_blocks, is_exact, is_strict_epi, is_strict_mono, kernel
from .motif.motif import LinearMotif, MotifMorphism
from .utils.codec import (ElementJob, ExchangeJob, FunctorJob, KoszulJob, LatticeJob, PairJob,
                          encode_module, encode_morphism, encode_motif)
from .utils.errors import MotifError, OracleFailure, ParseError, UnsupportedModuleError, ValidationError
from .utils.shapes import ElementaryShape

logger = logging.getLogger(__name__)


class Command(str, Enum):
    DUAL = "dual"
    KERNEL = "kernel"
    COKERNEL = "cokernel"
    EXACT = "exact"
    ALGEBRA = "algebra"
    NF = "nf"
    INDUCE = "induce"
    KOSZUL = "koszul"
    PUSHFORWARD = "pushforward"
    PULLBACK = "pullback"
    FOURIER = "fourier"
    INVOLUTIVITY = "involutivity"
    EXCHANGE = "exchange"
    DUALITY = "duality"
    HARNESS = "harness"

    @classmethod
    def list(cls) -> List[str]:
        return [c.value for c in cls]

    @property
    def input_required(self) -> bool:
        return self not in (Command.EXCHANGE, Command.DUALITY, Command.HARNESS)


# Exit codes of the command-line front end.
EXIT_OK = 0
EXIT_ORACLE = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3


def exit_code(report: Dict) -> int:
    """0 unless the report carries an error or a failed check."""
    if "error" in report:
        return report.get("exit_code", EXIT_VALIDATION)
    return EXIT_ORACLE if report.get("passed") is False else EXIT_OK


def error_report(command: str, e: Exception) -> Dict:
    if isinstance(e, ParseError):
        code = EXIT_PARSE
    elif isinstance(e, MotifError) and not isinstance(e, OracleFailure):
        code = EXIT_VALIDATION
    else:
        code = EXIT_ORACLE
    report = {"kind": "error", "command": command, "error": str(e),
              "error_type": type(e).__name__, "exit_code": code}
    if isinstance(e, OracleFailure) and e.report:
        report["failed"] = e.report
    return report


def _expect(payload: Any, kinds: tuple, command: Command):
    if not isinstance(payload, kinds):
        names = ", ".join(k.__name__ for k in kinds)
        raise ParseError(f"'{command.value}' expects {names}, got {type(payload).__name__}")
    return payload


def _shape_of(mod: ModulePresentation) -> ElementaryShape:
    shape = ElementaryShape.detect(mod.motif)
    if shape is None:
        raise UnsupportedModuleError("module does not live on an elementary motif "
                                     f"(one of {ElementaryShape.list()})")
    return shape


class MotifPipeline:
    """
    Runs one command on a decoded payload and returns a JSON-ready report.
    Library errors become error reports carrying the exit code; oracle
    reports carry ``passed``.
    """

    def __init__(self, window: Optional[int] = None, trials: Optional[int] = None,
                 seed: Optional[int] = None, progress: bool = False, strict: bool = False):
        self.window = window
        self.strict = strict
        self.trials = trials
        self.seed = config.DEFAULT_SEED if seed is None else seed
        self.progress = progress
        self._handlers: Dict[Command, Callable[[Any], Dict]] = {
            Command.DUAL: self.dual,
            Command.KERNEL: self.kernel,
            Command.COKERNEL: self.cokernel,
            Command.EXACT: self.exact,
            Command.ALGEBRA: self.algebra,
            Command.NF: self.normal_form,
            Command.INDUCE: self.induce,
            Command.KOSZUL: self.koszul,
            Command.PUSHFORWARD: self.pushforward,
            Command.PULLBACK: self.pullback,
            Command.FOURIER: self.fourier,
            Command.INVOLUTIVITY: self.involutivity,
            Command.EXCHANGE: self.exchange,
            Command.DUALITY: self.duality,
            Command.HARNESS: self.harness,
        }
        logger.debug(f"MotifPipeline(window={window}, trials={self.trials}, seed={self.seed})")

    def run(self, command: str, payload: Any = None) -> Dict:
        try:
            cmd = Command(command)
        except ValueError:
            return error_report(command, ParseError(f"unknown command {command!r}; expected one of {Command.list()}"))
        if payload is None and cmd.input_required:
            return error_report(cmd.value, ParseError(f"'{cmd.value}' needs an input payload"))
        logger.info(f"Running '{cmd.value}'")
        try:
            return self._handlers[cmd](payload)
        except MotifError as e:
            logger.error(f"'{cmd.value}' failed: {e}")
            return error_report(cmd.value, e)
        except Exception as e:
            logger.error(f"'{cmd.value}' raised unexpectedly: {e}", exc_info=True)
            return error_report(cmd.value, e)

    # ── motif category ────────────────────────────────────────────
    def dual(self, payload) -> Dict:
        _expect(payload, (LinearMotif, MotifMorphism), Command.DUAL)
        if isinstance(payload, MotifMorphism):
            return encode_morphism(dual_morphism(payload))
        return encode_motif(cartier_dual(payload))

    def kernel(self, f) -> Dict:
        _expect(f, (MotifMorphism,), Command.KERNEL)
        k, inclusion = kernel(f)
        return {"kind": "kernel", "motif": encode_motif(k), "inclusion": encode_morphism(inclusion),
                "strict_mono": is_strict_mono(f), "strict_epi": is_strict_epi(f)}

    def cokernel(self, f) -> Dict:
        _expect(f, (MotifMorphism,), Command.COKERNEL)
        c, projection = cokernel(f)
        return {"kind": "cokernel", "motif": encode_motif(c), "projection": encode_morphism(projection),
                "strict_mono": is_strict_mono(f), "strict_epi": is_strict_epi(f)}

    def exact(self, pair) -> Dict:
        _expect(pair, (PairJob,), Command.EXACT)
        exact = is_exact(pair.f, pair.g)
        return {"kind": "exactness", "exact": exact,
                "failing_blocks": [] if exact else failing_blocks(pair.f, pair.g)}

    # ── algebras and modules ──────────────────────────────────────
    def algebra(self, m) -> Dict:
        _expect(m, (LinearMotif,), Command.ALGEBRA)
        alg = algebra_from_motif(m)
        keys = [k for k in alg.generator_keys() if len(k) == 2 or k[2] == 1]
        gens = [alg.gen(k) for k in keys]
        table = {}
        for i, a in enumerate(gens):
            for b in gens[i + 1:]:
                c = alg.commutator(a, b)
                if not c.is_zero():
                    table[f"[{format_element(a)}, {format_element(b)}]"] = format_element(c)
        return {"kind": "algebra", "motif": encode_motif(m),
                "generators": [format_element(g) for g in gens],
                "commutative": alg.is_commutative, "commutators": table}

    def normal_form(self, job) -> Dict:
        _expect(job, (ElementJob,), Command.NF)
        element = parse_element(job.element, algebra_from_motif(job.motif))
        return {"kind": "normal_form", "input": job.element, "normal_form": format_element(element),
                "degree": element.degree() if not element.is_zero() else None}

    def induce(self, mod) -> Dict:
        _expect(mod, (ModulePresentation,), Command.INDUCE)
        ind = induce(mod, mod.motif)
        return {"kind": "induced", "module": encode_module(ind), "coherence": coherence_witness(ind, mod)}

    # ── homological engine ────────────────────────────────────────
    def koszul(self, job) -> Dict:
        _expect(job, (KoszulJob, LatticeJob), Command.KOSZUL)
        if isinstance(job, LatticeJob):
            c = lattice_resolution(job.rank, list(job.scalars))
            slices = homology(c, self.window)
            return {"kind": "lattice_homology", "rank": job.rank,
                    "scalars": [str(v) for v in job.scalars],
                    "homology": [s.to_json() for s in slices],
                    "dims": {str(s.degree): s.homology_dim for s in slices}}
        slices = homology(koszul_complex(job.dim, job.degree), self.window)
        acyclic = all(s.homology_dim == 0 for s in slices)
        return {"kind": "koszul_homology", "dim": job.dim, "degree": job.degree,
                "homology": [s.to_json() for s in slices], "acyclic": acyclic,
                "passed": acyclic}

    def pushforward(self, job) -> Dict:
        _expect(job, (FunctorJob,), Command.PUSHFORWARD)
        report = pushforward(job.morphism, job.module).to_json(self.window)
        report["functor"] = "pushforward"
        return report

    def pullback(self, job) -> Dict:
        _expect(job, (FunctorJob,), Command.PULLBACK)
        report = pullback(job.morphism, job.module).to_json(self.window)
        report["functor"] = "pullback"
        return report

    # ── Fourier transform and duality ─────────────────────────────
    def fourier(self, mod) -> Dict:
        """General transform; on an elementary motif also the agreement with the closed form."""
        _expect(mod, (ModulePresentation,), Command.FOURIER)
        report = fourier_complex(mod.motif, mod).to_json(self.window)
        report["dual_motif"] = encode_motif(cartier_dual(mod.motif))
        shape = ElementaryShape.detect(mod.motif)
        if shape is not None:
            report["agreement"] = agreement_oracle(shape, mod, self.window, self.strict)
            report["passed"] = report["agreement"]["passed"]
        return report

    def involutivity(self, mod) -> Dict:
        _expect(mod, (ModulePresentation,), Command.INVOLUTIVITY)
        return involutivity_oracle(_shape_of(mod), mod, self.window, self.strict)

    def exchange(self, job) -> Dict:
        if job is not None:
            _expect(job, (ExchangeJob,), Command.EXCHANGE)
            try:
                shape = ElementaryShape.from_name(job.shape)
            except ValueError as e:
                raise ValidationError(str(e)) from e
            if len(job.a) != len(job.b):
                raise ValidationError("exchange: points a and b have different dimensions")
            return exchange_oracle(shape, job.a, job.b, self.window, self.strict)
        count = 10 if self.trials is None else self.trials
        cases = [exchange_oracle(ElementaryShape.WEYL, a, b, self.window)
                 for a, b in exchange_pairs(self.seed, count)]
        failures = sum(1 for c in cases if not c["passed"])
        return settle({"kind": "exchange_report", "seed": self.seed, "cases": cases,
                       "failures": failures, "passed": not failures}, self.strict)

    def duality(self, mod) -> Dict:
        if mod is None:
            return duality_oracles(self.seed, self.window, self.progress, self.strict)
        _expect(mod, (ModulePresentation,), Command.DUALITY)
        report = duality(mod).to_json(self.window)
        report["dual_module"] = encode_module(dual_presentation(mod))
        return report

    def harness(self, _payload=None) -> Dict:
        kwargs = {} if self.window is None else {"window": self.window}
        trials = config.DEFAULT_TRIALS if self.trials is None else self.trials
        return settle(run_harness(trials, self.seed, progress=self.progress, **kwargs), self.strict)

