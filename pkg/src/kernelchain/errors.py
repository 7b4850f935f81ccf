"""Exception hierarchy shared across the package.

Every error raised by kernelchain derives from KernelChainError, so the
CLI can map any library failure to exit code 2 (input error) while
consistency violations keep their own exit code.
"""


class KernelChainError(Exception):
    """Base class for all kernelchain errors."""


# ---- measure_space -----------------------------------------------------

class DuplicatePoint(KernelChainError):
    """Two atoms share the same identifier."""


class NegativeWeight(KernelChainError):
    """An atom weight is negative."""


class LengthMismatch(KernelChainError):
    """points and weights have different lengths."""


class MissingPoint(KernelChainError):
    """A map assignment does not cover every atom (or names an unknown one)."""


class ImageOutOfSpace(KernelChainError):
    """A map sends an atom outside the space."""


class NonsingularityViolated(KernelChainError):
    """A null atom carries positive pushforward mass, so no density exists."""


class SpaceMismatch(KernelChainError):
    """Two values built over different spaces were combined."""


class UnknownPoint(KernelChainError):
    """A function value refers to an atom the space does not contain."""


# ---- orlicz ------------------------------------------------------------

class InvalidParameter(KernelChainError):
    """Orlicz family parameter outside its admissible range."""


class BracketFailure(KernelChainError):
    """No interior minimum could be bracketed for the Amemiya search."""


class NonpositiveMeasure(KernelChainError):
    """Indicator norm requested for a set of measure <= 0."""


# ---- operator_core / chain_analysis ------------------------------------

class DecompositionFailure(KernelChainError):
    """A kernel/range splitting check failed (indicates an arithmetic bug)."""


class PositiveWeightRequired(KernelChainError):
    """An operation assumed every singleton has positive measure."""


class CorollaryViolation(KernelChainError):
    """A corollary hypothesis held but its conclusion failed (bug signal)."""


class InconsistencyFound(KernelChainError):
    """Theorem-engine and oracle verdicts disagree."""


# ---- cli ---------------------------------------------------------------

class ParseError(KernelChainError):
    """Malformed input file or specifier string."""
