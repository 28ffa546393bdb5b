"""Types."""

from typing import Self

from pydantic import model_validator

from airy_bands import ContextModel
from airy_bands.airy_core.types import WRONSKIAN_CHECK_RANGE
from airy_bands.types import SolverContext, ValidationInfo

GROWING_CHECK_MAX = 3.0
"""Largest positive argument at which the canonical Wronskian is checked directly."""


class CanonicalPair(ContextModel):
    """Canonical solutions `u`, `v` and their derivatives at one point."""

    x: float
    """Argument."""
    u: float
    """Solution with `u(0) = 1`, `u'(0) = 0`."""
    up: float
    """Derivative of `u`."""
    v: float
    """Solution with `v(0) = 0`, `v'(0) = 1`."""
    vp: float
    """Derivative of `v`."""

    @property
    def wronskian(self) -> float:
        """Wronskian `u v' - u' v`, equal to one."""
        return self.u * self.vp - self.up * self.v

    @model_validator(mode="after")
    def validate_wronskian(self, info: ValidationInfo[SolverContext]) -> Self:
        """Check the Wronskian where it is representable."""
        if not -WRONSKIAN_CHECK_RANGE <= self.x <= GROWING_CHECK_MAX:
            return self
        if abs(self.wronskian - 1) > info.context.get("wronskian_tol", 1e-12):
            raise ValueError(f"Canonical Wronskian off by {self.wronskian - 1:.3e}.")
        return self
