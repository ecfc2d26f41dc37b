"""Exception types shared across the package."""


class SspsError(Exception):
    """Base class for all package-specific errors."""


class DomainError(SspsError):
    """An argument lies outside the mathematical domain of an operation."""


class NoSolutionError(SspsError):
    """No symmetric period-2 solution exists for the requested parameters."""


class OddnessError(SspsError):
    """An operation requiring an odd feedback function received a non-odd one."""


class StabilityError(SspsError):
    """A simulated trajectory exceeded the configured divergence bound."""


class MonotonicityWarning(UserWarning):
    """A monotonicity check that should always hold failed on a sample grid."""
