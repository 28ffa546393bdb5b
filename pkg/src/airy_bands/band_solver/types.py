"""Types."""

from __future__ import annotations

from typing import Self

from pydantic import Field, model_validator

from airy_bands import ContextModel
from airy_bands.types import (
    EdgeEquation,
    EdgeKind,
    Interval,
    SolverContext,
    ValidationInfo,
)


class PhysicalConstants(ContextModel):
    """Physical constants of the triangular-well lattice."""

    hbar: float = Field(gt=0)
    """Reduced Planck constant."""
    m: float = Field(gt=0)
    """Particle mass."""
    v0: float = Field(gt=0)
    """Potential depth."""
    l0: float = Field(gt=0)
    """Half period."""


class ScaleParams(ContextModel):
    """Semiclassical parameter `h`, well depth `c = h^(-2/3)` and energy scale `theta`."""

    h: float = Field(gt=0)
    """Semiclassical parameter."""
    c: float = Field(gt=0)
    """Rescaled well depth and half period."""
    theta: float = Field(gt=0)
    """Factor turning physical energies into rescaled ones, `E = theta E_phys`."""
    physical: PhysicalConstants | None = None
    """Physical constants, when the parameters came from them."""

    @classmethod
    def from_h(cls, h: float) -> ScaleParams:
        """Parameters from `h`, in units where `V0 = 1`."""
        c = h ** (-2 / 3)
        return cls(h=h, c=c, theta=c)

    @classmethod
    def from_c(cls, c: float) -> ScaleParams:
        """Parameters from `c`, in units where `V0 = 1`."""
        return cls(h=c ** (-3 / 2), c=c, theta=c)

    @classmethod
    def from_physical(cls, hbar: float, m: float, v0: float, l0: float) -> ScaleParams:
        """Parameters from physical constants."""
        physical = PhysicalConstants(hbar=hbar, m=m, v0=v0, l0=l0)
        theta = (2 * m * l0**2 / (hbar**2 * v0**2)) ** (1 / 3)
        h = hbar / (l0 * (2 * m * v0) ** 0.5)
        return cls(h=h, c=theta * v0, theta=theta, physical=physical)

    @model_validator(mode="after")
    def validate_scale(self, info: ValidationInfo[SolverContext]) -> Self:
        """Check `c = h^(-2/3)` and, with physical constants, `c = theta V0`."""
        rel = info.context.get("scale_rel", 1e-13)
        if abs(self.c - self.h ** (-2 / 3)) > rel * self.c:
            raise ValueError(f"Inconsistent scale: c = {self.c}, h = {self.h}.")
        if self.physical and abs(self.c - self.theta * self.physical.v0) > rel * self.c:
            raise ValueError("Inconsistent scale: c differs from theta V0.")
        return self


class BandEdge(ContextModel):
    """One band edge in rescaled units."""

    p: int = Field(ge=0)
    """Band index."""
    kind: EdgeKind
    """Lower or upper edge."""
    energy: float
    """Rescaled energy."""
    equation: EdgeEquation
    """Barrier-top quantity that vanishes at this edge."""
    bracket: Interval
    """Certified interval containing the edge."""
    residual: float
    """Relative residual of the vanishing quantity."""
    above_range: bool = False
    """Edge lies above the top of the potential."""

    @model_validator(mode="after")
    def validate_edge(self, info: ValidationInfo[SolverContext]) -> Self:
        """Check the edge lies in its bracket and solves its equation."""
        slack = info.context.get("edge_slack", 1e-12) * max(1.0, abs(self.energy))
        lo, hi = self.bracket
        if not lo - slack <= self.energy <= hi + slack:
            raise ValueError(
                f"Edge {self.kind}^{self.p} = {self.energy} is outside [{lo}, {hi}]."
            )
        if self.residual > info.context.get("residual_tol", 1e-9):
            raise ValueError(
                f"Edge {self.kind}^{self.p} has residual {self.residual:.3e}."
            )
        return self


class Band(ContextModel):
    """One spectral band and the gap above it."""

    p: int = Field(ge=0)
    """Band index."""
    e_min: BandEdge
    """Lower edge."""
    e_max: BandEdge
    """Upper edge."""
    width: float
    """Width, or for collapsed bands its semiclassical estimate when that lies below the collapse scale."""
    gap_after: float | None = None
    """Gap to the next band, when its lower edge was computed."""
    collapsed_at_precision: bool = False
    """Width below double-precision resolution of the edges."""

    @model_validator(mode="after")
    def validate_band(self) -> Self:
        """Check edge order."""
        if self.e_max.energy < self.e_min.energy:
            raise ValueError(f"Band {self.p} has its edges out of order.")
        if not self.collapsed_at_precision and self.e_max.energy == self.e_min.energy:
            raise ValueError(f"Band {self.p} has zero width but is not collapsed.")
        return self


class BandStructure(ContextModel):
    """Band edges, widths, gaps and counts at one well depth."""

    params: ScaleParams
    """Scale parameters."""
    edges: tuple[BandEdge, ...]
    """All computed edges in increasing order."""
    bands: tuple[Band, ...]
    """Bands `0..max_band`."""
    widths: tuple[float, ...]
    """Band widths."""
    gaps: tuple[float, ...]
    """Gaps between consecutive computed bands."""
    k0: int | None
    """Index of the last band ending at or below zero, for `c > c_0`."""
    p0: int | None
    """Small-`c` counting index, for `c < c_0`."""
    density: float | None
    """Spectral density in the potential range, for `c > c_0`."""
    near_excluded_set: bool = False
    """`c` is close to a difference of two `c~` zeros."""

    @model_validator(mode="after")
    def validate_structure(self) -> Self:
        """Check ordering across gaps and the bottom of the spectrum."""
        if self.edges and self.edges[0].energy <= -self.params.c:
            raise ValueError("The bottom edge must lie above -c.")
        for band, following in zip(self.bands, self.bands[1:], strict=False):
            if not band.e_max.energy < following.e_min.energy:
                raise ValueError(f"Gap {band.p} is not open.")
        return self


class WidthGapReport(ContextModel):
    """Explicit bounds on one band width and the gap above it."""

    p: int
    """Band index."""
    width: float
    """Computed width."""
    width_upper: float
    """Explicit upper bound on the width."""
    width_ok: bool
    """Width lies strictly between zero and its bound."""
    gap: float | None = None
    """Computed gap, for `p <= k0 - 1`."""
    gap_lower: float | None = None
    """Explicit lower bound on the gap."""
    gap_upper: float | None = None
    """Explicit upper bound on the gap."""
    gap_sandwich: Interval | None = None
    """Zero-table sandwich `[c~_p - c_p, frak_a_(p+1) - frak_a_p]`."""
    gap_ok: bool | None = None
    """Gap satisfies both explicit bounds and the sandwich."""


class PhysicalBand(ContextModel):
    """One band in physical energy units."""

    p: int
    """Band index."""
    e_min: float
    """Lower edge."""
    e_max: float
    """Upper edge."""
    width: float
    """Width."""
    gap_after: float | None = None
    """Gap to the next band."""
