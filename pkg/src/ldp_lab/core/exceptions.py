"""Custom exceptions for ldp-lab."""


class LdpLabError(Exception):
    """Base exception for all ldp-lab errors."""


class ArgumentError(LdpLabError):
    """Sizes, dimensions or ranges passed to an operation are invalid."""


class DomainError(LdpLabError):
    """Input lies outside the mathematical domain of the operation."""


class BoundaryError(DomainError):
    """Tilt requested on or outside the boundary of the support hull."""


class NumericalError(LdpLabError):
    """An iterative numerical routine failed to converge."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class ConvergenceError(NumericalError):
    """No start of a multi-start solver reached its fixed point."""


class CertificationError(LdpLabError):
    """The explicit net was too coarse to certify the requested mesh."""


class ConstructionError(LdpLabError):
    """A net failed its coverage verification."""

    def __init__(self, message: str, worst_gap: float, worst_point=None):
        super().__init__(message)
        self.worst_gap = worst_gap
        self.worst_point = worst_point


class ResourceError(LdpLabError):
    """Enumeration or construction would exceed the desk-scale guard."""


class InfeasibleCandidateError(LdpLabError):
    """A candidate matrix cannot be built or no feasible matrix was found."""

    def __init__(self, message: str, violation: float | None = None):
        super().__init__(message)
        self.violation = violation


class RangeError(LdpLabError):
    """Exact integer result does not fit in a signed 64-bit integer."""
