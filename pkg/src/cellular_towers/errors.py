"""Exception hierarchy shared across the package."""


class CellularTowersError(Exception):
    """Base class for all package errors."""


class CoefficientRingError(CellularTowersError):
    """Structural misuse of the coefficient rings (mismatched indeterminates, ...)."""


class SpecializationError(CellularTowersError):
    """A substitution produced a zero denominator / hit a pole."""


class DomainError(CellularTowersError):
    """Arguments outside an operation's domain (invalid edge, bad Garnir node, ...)."""


class BoundExceededError(CellularTowersError):
    """Requested level exceeds the configured bound for the algebra."""


class InternalInvariantError(CellularTowersError):
    """A 'cannot happen' condition; indicates a bug, not a caller error."""
