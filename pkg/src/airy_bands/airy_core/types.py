"""Types."""

from math import pi, sqrt
from typing import Self

from pydantic import model_validator

from airy_bands import ContextModel
from airy_bands.types import Regime, SolverContext, ValidationInfo

WRONSKIAN_CHECK_RANGE = 50.0
"""Largest `|x|` at which the Airy Wronskian is checked on validation."""

AUX_BOUNDS = {
    1: (1 / sqrt(26), 1 / sqrt(13), 5 / 36),
    2: (1 / sqrt(22), 1 / sqrt(11), 7 / 12),
}
"""Per `3 nu`: `xi` past which `p > 0`, `xi` past which `|q/p| < scale/xi`, and scale."""


class AiryQuartet(ContextModel):
    """Values of Ai, Ai', Bi and Bi' at one point."""

    x: float
    """Argument."""
    ai: float
    """Ai(x)."""
    aip: float
    """Ai'(x)."""
    bi: float
    """Bi(x)."""
    bip: float
    """Bi'(x)."""
    regime: Regime
    """Regime of the independent kernel covering this point."""
    underflow: bool = False
    """Ai and Ai' underflow to zero at this point."""

    @property
    def wronskian(self) -> float:
        """Wronskian `Ai Bi' - Ai' Bi`, equal to `1/pi`."""
        return self.ai * self.bip - self.aip * self.bi

    @model_validator(mode="after")
    def validate_wronskian(self, info: ValidationInfo[SolverContext]) -> Self:
        """Check the Wronskian where it is representable."""
        if abs(self.x) > WRONSKIAN_CHECK_RANGE:
            return self
        tol = info.context.get("wronskian_tol", 1e-12)
        if abs(pi * self.wronskian - 1) > tol:
            raise ValueError(f"Airy Wronskian off by {pi * self.wronskian - 1:.3e}.")
        return self


class AuxPQ(ContextModel):
    """Bessel auxiliary pair of order `nu` at `xi`."""

    nu: float
    """Order, one third or two thirds."""
    xi: float
    """Phase variable `(2/3) x^(3/2)`."""
    p: float
    """Non-oscillating amplitude part."""
    q: float
    """Non-oscillating phase part."""

    @property
    def phase_ratio(self) -> float:
        """Ratio `q/p`."""
        return self.q / self.p

    @model_validator(mode="after")
    def validate_pair(self) -> Self:
        """Check positivity of `p` and the bound on `|q/p|` past their thresholds."""
        order = round(3 * self.nu)
        if order not in AUX_BOUNDS or abs(3 * self.nu - order) > 1e-9:
            raise ValueError(f"Auxiliary order must be 1/3 or 2/3, got {self.nu}.")
        positive_from, ratio_from, ratio_scale = AUX_BOUNDS[order]
        if self.xi > positive_from and self.p <= 0:
            raise ValueError(f"Auxiliary p must be positive at xi={self.xi:.6g}, got {self.p:.6g}.")
        if self.xi > ratio_from and abs(self.q) >= ratio_scale / self.xi * self.p:
            raise ValueError(f"Auxiliary |q/p| exceeds {ratio_scale:.6g}/xi at xi={self.xi:.6g}.")
        return self
