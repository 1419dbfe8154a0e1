"""Exceptions and exit statuses
===============================

Every error raised on purpose by troforge derives from :class:`TroforgeError`.
Mathematical verdicts (axiom violations, theorem checks) are never raised: they
are recorded in reports.

"""
from enum import Enum


class TroforgeError(Exception):
    pass


class ShapeMismatchError(TroforgeError, ValueError):
    pass


class EmptyGeneratorsError(TroforgeError, ValueError):
    pass


class NotInvariantError(TroforgeError):
    """A subspace is not invariant under a box operator."""


class PeirceSpectrumError(TroforgeError):
    """An eigenvalue of ``e□e`` lies away from 0, 1/2 and 1."""


class PeirceMembershipError(TroforgeError):
    pass


class GridFormatError(TroforgeError, ValueError):
    """Malformed grid: missing labels, mixed shapes or unknown kind."""


class InvalidGridError(TroforgeError):
    """A grid failed its axiom verification where a valid one is required."""


class WellDefinednessError(TroforgeError):
    """Two admissible index choices of a unit formula disagree."""


class WordCapError(TroforgeError):
    """The word length cap was reached before the closure became stable."""


class NotUniversalError(TroforgeError):
    """Word reversal does not extend to a linear map on the closure.

    Raised when the realization at hand is not the universal envelope of the
    generators.

    """

    def __init__(self, message, residual=float("nan")):
        super().__init__(message)
        self.residual = residual


class BlockCollisionError(TroforgeError):
    """Random central elements kept producing colliding eigenvalues."""


class ReassignedFactorError(TroforgeError, ValueError):
    pass


class RankOneRoutingError(TroforgeError, ValueError):
    pass


class NotSubtripleError(TroforgeError):
    pass


class NotAbelianError(TroforgeError):
    pass


class CharacterError(TroforgeError):
    pass


class HilbertBlockError(TroforgeError, ValueError):
    pass


class ExitStatus(Enum):
    """Exit status of the console script ``troforge``."""

    OK = (0, "OK: all checks passed.")
    VERDICT_FAILED = (1, "Verdict failed: a mathematical check did not pass.")
    USAGE_ERROR = (2, "Usage error: invalid input or arguments.")

    def __init__(self, code: int, message: str):
        self.code = code  #: exit code
        self.message = message  #: helpful description
