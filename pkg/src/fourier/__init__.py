"""The Poincare kernel, the Fourier transform, duality and their oracles."""

from .kernel import (dual_pair, kernel_automorphism, kernel_relations, kernel_module,
                     bi_extension_failures)
from .elementary import (resolve_shape, relabel_map, inversion_map, invert, elementary_presentation,
                         fourier_elementary)
from .transform import fourier_complex
from .duality import antipode, duality, dual_presentation, resolution_failures, normalized_relations
from .oracles import (agreement_oracle, involutivity_oracle, involution_ledger, exchange_oracle,
                      exchange_pairs, mellin_check, theorem_iv_oracle, duality_case, duality_fixtures,
                      duality_oracles, twist_identity_holds, settle)

__all__ = [
    "dual_pair", "kernel_automorphism", "kernel_relations", "kernel_module", "bi_extension_failures",
    "resolve_shape", "relabel_map", "inversion_map", "invert", "elementary_presentation",
    "fourier_elementary", "fourier_complex",
    "antipode", "duality", "dual_presentation", "resolution_failures", "normalized_relations",
    "agreement_oracle", "involutivity_oracle", "involution_ledger", "exchange_oracle", "exchange_pairs",
    "mellin_check", "theorem_iv_oracle", "duality_case", "duality_fixtures", "duality_oracles",
    "twist_identity_holds", "settle",
]
