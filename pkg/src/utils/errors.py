# src/utils/errors.py
"""Exception hierarchy shared by the library and the command-line front end."""


class MotifError(Exception):
    """Base class for every error raised by this package."""


class ParseError(MotifError):
    """Malformed JSON payload or element string."""


class ValidationError(MotifError):
    """Well-formed input that violates a structural invariant."""


class ShapeMismatchError(ValidationError):
    """A matrix block has the wrong shape for the motifs it connects."""


class CompatibilityError(ValidationError):
    """The blocks of a morphism do not commute with the structure maps."""


class AlgebraMismatchError(MotifError):
    """Elements or modules from different algebras were combined."""


class UnsupportedModuleError(MotifError):
    """A module presentation falls outside the shapes the windowed engine realizes."""


class ResolutionError(MotifError):
    """No finite free resolution found for the duality functor."""


class HomologyError(MotifError):
    """A graded slice is not finite or exceeds the configured bound."""


class OracleFailure(MotifError):
    """A verification oracle found a disagreement; ``report`` is the failed report."""

    def __init__(self, message: str, report: dict = None):
        super().__init__(message)
        self.report = report or {}


__all__ = [
    "MotifError", "ParseError", "ValidationError", "ShapeMismatchError",
    "CompatibilityError", "AlgebraMismatchError", "UnsupportedModuleError",
    "ResolutionError", "HomologyError", "OracleFailure",
]
