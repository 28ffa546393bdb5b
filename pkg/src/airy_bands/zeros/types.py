"""Types."""

from typing import Literal, Self, TypeAlias

import numpy as np
from pydantic import model_validator

from airy_bands import ContextModel
from airy_bands.types import Array, Interval, SolverContext, ValidationInfo

ZeroFamily: TypeAlias = Literal["u", "up", "v", "vp"]
"""Canonical function whose zeros on the negative axis form a family."""


class ZeroTables(ContextModel):
    """Zero magnitudes of Ai, Ai', u, u', v and v' on the negative axis.

    Airy zeros are stored from `j = 1`, so `a[0]` is `a_1`. The canonical families
    `c` and `c_tilde` are stored from `p = 0`.
    """

    a: tuple[float, ...]
    """Magnitudes of the zeros of Ai."""
    a_tilde: tuple[float, ...]
    """Magnitudes of the zeros of Ai'."""
    c: tuple[float, ...]
    """`c_(2j)` zero `v'`, `c_(2j+1)` zero `v`."""
    c_tilde: tuple[float, ...]
    """`c~_(2j)` zero `u`, `c~_(2j+1)` zero `u'`."""
    xi: tuple[float, ...]
    """Phases `(2/3) c_p^(3/2)`."""
    xi_tilde: tuple[float, ...]
    """Phases `(2/3) c~_p^(3/2)`."""
    frak_a: tuple[float, ...]
    """Merged Airy zeros, `a~_(j+1)` at `2j` and `a_(j+1)` at `2j + 1`."""
    max_index: int
    """Largest tabulated `p`."""

    def a_at(self, j: int) -> float:
        """Airy zero magnitude `a_j` for `j >= 1`."""
        return self.a[j - 1]

    def a_tilde_at(self, j: int) -> float:
        """Airy derivative zero magnitude `a~_j` for `j >= 1`."""
        return self.a_tilde[j - 1]

    def arrays(self) -> dict[str, Array]:
        """Tables as float arrays."""
        return {
            name: np.asarray(getattr(self, name), dtype=np.float64)
            for name in ("a", "a_tilde", "c", "c_tilde", "xi", "xi_tilde", "frak_a")
        }

    @model_validator(mode="after")
    def validate_tables(self, info: ValidationInfo[SolverContext]) -> Self:
        """Check sizes, ordering and interlacing with the Airy zeros."""
        if not info.context.get("check_tables", True):
            return self
        n = self.max_index + 1
        if len(self.c) != n or len(self.c_tilde) != n:
            raise ValueError("Canonical zero families must cover `p = 0..max_index`.")
        arr = self.arrays()
        c, ct, a, at = arr["c"], arr["c_tilde"], arr["a"], arr["a_tilde"]
        p = np.arange(n)
        j = p // 2
        even = p % 2 == 0
        below = np.where(even, at[j], a[j])
        above = np.where(even, a[j], at[j + 1])
        if not np.all((below < c) & (c < ct) & (ct < above)):
            bad = int(np.flatnonzero(~((below < c) & (c < ct) & (ct < above)))[0])
            raise ValueError(f"Zero ordering fails at p = {bad}.")
        if not np.all(np.diff(arr["frak_a"]) > 0):
            raise ValueError("Merged Airy zeros must increase strictly.")
        return self


class ZeroAsymptotics(ContextModel):
    """Large-index approximations of the canonical zeros."""

    p: int
    """Index."""
    c_est: float
    """Estimate `(3 p pi / 4)^(2/3)` of both `c_p` and `c~_p`."""
    gap_est: float
    """Leading term of `c~_p - c_p`."""
    xi_interval: Interval
    """Enclosure of `xi_p`."""
    xi_tilde_interval: Interval
    """Enclosure of `xi~_p`."""
