"""Exception hierarchy; each error knows the CLI exit status it maps to."""


class HeatboundError(Exception):
    """Base class for every error raised by this package."""
    exit_code = 3


class DomainError(HeatboundError, ValueError):
    """A numeric argument lies outside the domain of the operation."""
    exit_code = 2


class UsageError(HeatboundError):
    """Malformed spec strings, grids, point shapes, or inapplicable checks."""
    exit_code = 2


class PrecisionError(HeatboundError):
    """The requested value cannot be computed to the configured precision."""
    exit_code = 3


def require_positive(name: str, value: float):
    """Raise DomainError unless value > 0."""
    if not value > 0:
        raise DomainError(f"{name} must be positive, got {value}")


def require_nonnegative(name: str, value: float):
    """Raise DomainError unless value >= 0."""
    if not value >= 0:
        raise DomainError(f"{name} must be non-negative, got {value}")
