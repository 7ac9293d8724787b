# src/config.py
"""
motifcalc – central configuration (windows, search bounds, random generation, conventions)
"""

import os
from pathlib import Path
from typing import Dict

# ──────────────────────────── Paths ──────────────────────────────
ROOT         = Path(__file__).resolve().parent.parent
FIXTURES_DIR = ROOT / "fixtures"
REPORTS_DIR  = ROOT / "reports"

# ─────────────────────────── Homology ────────────────────────────
# Filtration level of the top degree; lower degrees get HOMOLOGY_MARGIN more per step.
DEFAULT_WINDOW: int = int(os.environ.get("MOTIF_WINDOW", 6))
HOMOLOGY_MARGIN: int = 1
# A slice above this dimension aborts with HomologyError.
MAX_SLICE_DIM: int = int(os.environ.get("MOTIF_MAX_SLICE_DIM", 4000))

# ──────────────────────── Isomorphism search ─────────────────────
# Bounded search for explicit generator-level isomorphisms of rank-1 presentations.
ISO_SEARCH_DEGREE: int = 2
ISO_SEARCH_WINDOW: int = 4
# Depth bound for the one-variable division used by the duality functor.
RESOLUTION_DEPTH: int = 4

# ───────────────────────── Randomness ────────────────────────────
DEFAULT_SEED: int = 0
DEFAULT_TRIALS: int = 20
RANDOM_HEIGHT: int = 10
RANDOM_MAX_DIM: int = 3
RANDOM_PRIMES = (2, 3, 5, 7)

# ───────────────────────── Conventions ───────────────────────────
# Weyl relabeling x -> xi', xi -> FOURIER_SIGN * x'. Fixed so that the double
# transform returns the pullback along inversion.
FOURIER_SIGN: int = -1
SIGN_CONVENTIONS: Dict[str, str] = {
    "duality": "blocks transposed, no sign",
    "weyl": "x -> xi', xi -> -x'",
    "mellin": "t -> s', theta -> -x'",
    "koszul": "d(v1^...^vp (x) w) = sum_i (v^wi) (x) w/wi, coefficient +1",
    "kernel_module": "xi' acts as d/dy + x, xi acts as d/dx + y; sigma' by t, sigma by s'",
}

# ─────────────────────────── Logging ─────────────────────────────
LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s"

# ─────────────────────────── Exports ─────────────────────────────
__all__ = [
    # Paths
    "ROOT", "FIXTURES_DIR", "REPORTS_DIR",
    # Homology
    "DEFAULT_WINDOW", "HOMOLOGY_MARGIN", "MAX_SLICE_DIM",
    # Search
    "ISO_SEARCH_DEGREE", "ISO_SEARCH_WINDOW", "RESOLUTION_DEPTH",
    # Randomness
    "DEFAULT_SEED", "DEFAULT_TRIALS", "RANDOM_HEIGHT", "RANDOM_MAX_DIM", "RANDOM_PRIMES",
    # Conventions
    "FOURIER_SIGN", "SIGN_CONVENTIONS",
    # Logging
    "LOG_FORMAT",
]
