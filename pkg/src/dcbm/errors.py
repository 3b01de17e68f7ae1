"""Exception types shared across the package."""


class DcbmError(Exception):
    """Base class for all package-specific errors."""


class SelfLoopError(DcbmError, ValueError):
    """An edge list contained a self-loop."""


class IndexOutOfRangeError(DcbmError, IndexError):
    """A node index was outside [0, n)."""


class LengthMismatchError(DcbmError, ValueError):
    """Two sequences that must have equal length did not."""


class InvalidProbabilityError(DcbmError, ValueError):
    """An edge probability fell outside [0, 1]."""


class DomainError(DcbmError, ValueError):
    """An argument was outside the mathematical domain of the function."""


class KTooLargeError(DcbmError, ValueError):
    """Brute-force permutation enumeration requested with k too large."""


class TooLargeError(DcbmError, ValueError):
    """Exhaustive enumeration requested beyond the enforced size cap."""


class InfeasibleError(DcbmError, ValueError):
    """No label vector satisfies the parameter-space constraints."""


class NoConvergenceError(DcbmError, RuntimeError):
    """The eigensolver failed to converge."""


class EmptyInputError(DcbmError, ValueError):
    """An operation received no usable input points."""


class NoCommunitiesError(DcbmError, ValueError):
    """Every community of the provided labeling is empty."""


class DegenerateReferenceError(DcbmError, ValueError):
    """The consensus reference labeling has no assigned nodes."""


class DegenerateProbabilityError(DcbmError, ValueError):
    """A likelihood-ratio test probability was exactly 0 or 1."""


class DegenerateSpectrumError(DcbmError, RuntimeError):
    """Spectral decomposition failed for the baseline method."""


class EmptyResultsError(DcbmError, ValueError):
    """Summary statistics requested for an empty result set."""


class ConfigError(DcbmError, ValueError):
    """A configuration file or CLI flag combination is invalid."""
