"""Types."""

from math import exp
from typing import Literal, TypeAlias

from airy_bands import ContextModel

Quantity: TypeAlias = Literal["e_min", "e_max", "width", "gap"]
"""Spectral quantity approximated for small `h`."""


class SemiclassicalEstimate(ContextModel):
    """Small-`h` approximation `leading + sign exp(log_exponential)` of one quantity."""

    quantity: Quantity
    """Approximated quantity."""
    p: int
    """Band or gap index."""
    h: float
    """Semiclassical parameter."""
    leading: float
    """Value without the tunneling correction."""
    log_exponential: float
    """Logarithm of the magnitude of the tunneling correction."""
    sign: Literal[1, -1]
    """Sign of the correction."""
    validity_bound: float
    """Largest `h` for which the approximation is asserted."""
    validity_closed: bool
    """Whether `validity_bound` itself is admissible."""
    below_solver_resolution: bool = False
    """Correction is smaller than the resolution of the edge solver."""

    @property
    def correction(self) -> float:
        """Signed tunneling correction."""
        return self.sign * exp(self.log_exponential)

    @property
    def value(self) -> float:
        """Approximate value."""
        return self.leading + self.correction
