"""Errors."""

from __future__ import annotations


class AiryBandsError(Exception):
    """Base error of the band spectrum toolkit."""


class DomainError(AiryBandsError, ValueError):
    """Input lies outside the domain of an operation."""


class PoleError(DomainError):
    """A ratio function was evaluated too close to one of its poles."""

    def __init__(self, message: str, family: str, index: int):
        super().__init__(message)
        self.family = family
        """Zero family of the vanishing denominator, `u` or `u'`."""
        self.index = index
        """Index of the nearest pole within its family."""


class RangeError(AiryBandsError, ValueError):
    """Band index outside the range where a bound or count applies."""


class InternalConsistencyError(AiryBandsError):
    """A bracket sign check or table invariant failed."""


class UnsupportedRangeError(AiryBandsError):
    """Requested edge lies above the potential range and cannot be localized."""


class BoundaryError(AiryBandsError):
    """Parameter sits exactly on a boundary between two counting cases."""

    def __init__(self, message: str, candidates: tuple[int, int]):
        super().__init__(message)
        self.candidates = candidates
        """The two indices between which the parameter is undecided."""


class ValidityError(AiryBandsError):
    """Semiclassical parameter outside the validity interval of a formula."""

    def __init__(self, message: str, bound: float):
        super().__init__(message)
        self.bound = bound
        """Largest admissible semiclassical parameter."""


class IntegrationError(AiryBandsError):
    """The ODE integrator failed."""

    def __init__(self, message: str, location: float):
        super().__init__(message)
        self.location = location
        """Position reached before the failure."""


class BracketError(AiryBandsError):
    """No sign change over a supplied bracket."""


class ConversionError(AiryBandsError):
    """Physical constants are missing for a unit conversion."""


class PreconditionError(AiryBandsError):
    """A comparison identity was requested outside its hypotheses."""


class UsageError(AiryBandsError):
    """Invalid combination of command line options."""
