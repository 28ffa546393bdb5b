"""Types."""

from pathlib import Path
from typing import Literal, Self, TypeAlias

from pydantic import Field, model_validator

from airy_bands import ContextModel

Command: TypeAlias = Literal[
    "zeros", "bands", "density", "discriminant", "verify", "sturm", "convert", "plotdata"
]
"""Command line operation."""
OutputFormat: TypeAlias = Literal["json", "csv"]
"""Output format."""
PlotData: TypeAlias = Literal["ratios", "bands", "discriminant"]
"""Artifact exported by `plotdata`."""
Verdict: TypeAlias = Literal["pass", "fail"]
"""Outcome of one claim."""


class RunConfig(ContextModel):
    """Validated command line invocation."""

    command: Command
    """Operation to run."""
    h: float | None = Field(default=None, gt=0)
    """Semiclassical parameter."""
    c: float | None = Field(default=None, gt=0)
    """Well depth."""
    max_index: int = Field(default=10, ge=0)
    """Largest zero index for `zeros`, largest `z_k` index for `sturm`."""
    max_band: int | None = Field(default=None, ge=0)
    """Last band for `bands`, `k0` by default."""
    tol: float = Field(default=1e-10, ge=1e-13, le=1e-6)
    """Tolerance of the oracle and of claim checks."""
    output_format: OutputFormat = "json"
    """Output format."""
    output_path: Path | None = None
    """Output file, standard output when omitted."""
    physical: tuple[float, float, float, float] | None = None
    """Physical constants `hbar, m, V0, L0`."""
    claims: str | None = None
    """Substring filter on claim ids for `verify`."""
    x: float = Field(default=1.0, ge=0)
    """Parameter of `f_x`, `g_x` for `sturm`."""
    plot: PlotData = "ratios"
    """Artifact exported by `plotdata`."""
    samples: int = Field(default=400, ge=16)
    """Samples of discriminant scans and ratio exports."""

    @model_validator(mode="after")
    def validate_parameters(self) -> Self:
        """Require exactly one of `h`, `c` and physical constants, except where none is needed."""
        given = [v is not None for v in (self.h, self.c, self.physical)]
        if sum(given) > 1:
            raise ValueError("Give exactly one of h, c and physical constants.")
        needs = self.command not in {"zeros", "sturm", "verify"} and not (
            self.command == "plotdata" and self.plot == "ratios"
        )
        if needs and not any(given):
            raise ValueError(f"The {self.command} command needs h, c or physical constants.")
        return self


class ClaimResult(ContextModel):
    """Outcome of one quantitative check of the verification suite."""

    claim_id: str
    """Descriptive claim name."""
    reference: str
    """What is being compared."""
    h_or_c: str
    """Parameter at which the claim was checked."""
    lhs: float | str
    """Computed value."""
    rhs: float | str
    """Bound or reference value."""
    verdict: Verdict
    """Outcome."""
    residual: float | None = None
    """Deviation from the reference, when meaningful."""
