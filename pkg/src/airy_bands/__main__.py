"""Command line interface."""

import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Annotated, Any

from cyclopts import App, Parameter
from cyclopts.exceptions import CycloptsError
from dotenv import load_dotenv
from loguru import logger
from pydantic import ValidationError

from airy_bands.cli import report_error, run
from airy_bands.cli.types import OutputFormat, PlotData, RunConfig
from airy_bands.errors import UsageError
from airy_bands.settings import get_settings

APP = App(help_format="markdown")
"""CLI."""

Format = Annotated[OutputFormat, Parameter(name="--format")]
"""Output format flag."""
Out = Annotated[Path | None, Parameter(name="--out")]
"""Output file flag."""


def main(tokens: Sequence[str] | None = None) -> int:
    """Run the command line and return its exit status."""
    load_dotenv()
    logger.remove()
    logger.add(sys.stderr, level=get_settings().log_level)
    logger.enable("airy_bands")
    try:
        return APP(tokens, exit_on_error=False) or 0
    except CycloptsError:
        return 2


def parse_physical(physical: str | None) -> tuple[float, ...] | None:
    """Parse `hbar,m,V0,L0`.

    Raises
    ------
    UsageError
        If there are not four comma-separated numbers.
    """
    if physical is None:
        return None
    try:
        values = tuple(float(v) for v in physical.split(","))
    except ValueError as err:
        raise UsageError(f"Physical constants must be numbers, got {physical!r}.") from err
    if len(values) != 4:
        raise UsageError(f"Expected hbar,m,V0,L0, got {physical!r}.")
    return values


def invoke(physical: str | None = None, **kwargs: Any) -> int:
    """Validate an invocation and run it."""
    try:
        config = RunConfig(physical=parse_physical(physical), **kwargs)
    except (UsageError, ValidationError) as err:
        return report_error(err, 2)
    return run(config)


@APP.command
def zeros(max_index: int = 10, output_format: Format = "json", out: Out = None) -> int:
    """Tabulate `c_p`, `c~_p` and their phases for `p = 0..max_index`.

    Parameters
    ----------
    max_index
        Largest zero index.
    output_format
        CSV columns are `p,c_p,c_tilde_p,xi_p,xi_tilde_p`.
    out
        Output file.
    """
    return invoke(
        command="zeros", max_index=max_index, output_format=output_format, output_path=out
    )


@APP.command
def bands(
    h: float | None = None,
    c: float | None = None,
    physical: str | None = None,
    max_band: int | None = None,
    output_format: Format = "json",
    out: Out = None,
) -> int:
    """Solve band edges, widths and gaps.

    Parameters
    ----------
    h
        Semiclassical parameter.
    c
        Well depth, `h^(-2/3)`.
    physical
        Physical constants `hbar,m,V0,L0`, reporting energies in physical units.
    max_band
        Last band, `k0` by default.
    output_format
        CSV has one row per band.
    out
        Output file.
    """
    return invoke(
        command="bands",
        h=h,
        c=c,
        physical=physical,
        max_band=max_band,
        output_format=output_format,
        output_path=out,
    )


@APP.command
def density(
    h: float | None = None,
    c: float | None = None,
    physical: str | None = None,
    output_format: Format = "json",
    out: Out = None,
) -> int:
    """Spectral density, the summed widths of bands `0..k0` over `c`, and the band count.

    Parameters
    ----------
    h
        Semiclassical parameter.
    c
        Well depth.
    physical
        Physical constants `hbar,m,V0,L0`.
    output_format
        Output format.
    out
        Output file.
    """
    return invoke(
        command="density",
        h=h,
        c=c,
        physical=physical,
        output_format=output_format,
        output_path=out,
    )


@APP.command
def discriminant(
    h: float | None = None,
    c: float | None = None,
    samples: int = 400,
    tol: float | None = None,
    output_format: Format = "json",
    out: Out = None,
) -> int:
    """Scan the Floquet discriminant over `[-c, 0]` with the ODE oracle.

    Parameters
    ----------
    h
        Semiclassical parameter.
    c
        Well depth.
    samples
        Scanned energies.
    tol
        Integration tolerance.
    output_format
        CSV columns are `E,delta`, JSON adds the refined edge list.
    out
        Output file.
    """
    return invoke(
        command="discriminant",
        h=h,
        c=c,
        samples=samples,
        tol=get_settings().tol if tol is None else tol,
        output_format=output_format,
        output_path=out,
    )


@APP.command
def verify(
    h: float | None = None,
    c: float | None = None,
    tol: float | None = None,
    claims: str | None = None,
    output_format: Format = "json",
    out: Out = None,
) -> int:
    """Run the claim suite, exiting with `1` if any claim fails.

    Parameters
    ----------
    h
        Accepted for symmetry with other commands, claims fix their own parameters.
    c
        Accepted for symmetry with other commands.
    tol
        Oracle tolerance.
    claims
        Substring filter on claim ids.
    output_format
        Output format.
    out
        Output file.
    """
    return invoke(
        command="verify",
        h=h,
        c=c,
        tol=get_settings().tol if tol is None else tol,
        claims=claims,
        output_format=output_format,
        output_path=out,
    )


@APP.command
def sturm(
    x: float = 1.0, max_index: int = 6, output_format: Format = "json", out: Out = None
) -> int:
    """Zero curves `z_k(x)` with residuals and the sign pattern of `f_x`, `g_x`.

    Parameters
    ----------
    x
        Parameter of `f_x` and `g_x`.
    max_index
        Largest `k`.
    output_format
        Output format.
    out
        Output file.
    """
    return invoke(
        command="sturm",
        x=x,
        max_index=max_index,
        output_format=output_format,
        output_path=out,
    )


@APP.command
def convert(
    h: float | None = None,
    c: float | None = None,
    physical: str | None = None,
    output_format: Format = "json",
    out: Out = None,
) -> int:
    """Convert between `h`, `c` and physical constants.

    Parameters
    ----------
    h
        Semiclassical parameter.
    c
        Well depth.
    physical
        Physical constants `hbar,m,V0,L0`.
    output_format
        Output format.
    out
        Output file.
    """
    return invoke(
        command="convert",
        h=h,
        c=c,
        physical=physical,
        output_format=output_format,
        output_path=out,
    )


@APP.command
def plotdata(
    plot: PlotData = "ratios",
    h: float | None = None,
    c: float | None = None,
    max_band: int | None = None,
    samples: int = 400,
    out: Out = None,
) -> int:
    """Export plotting data as CSV.

    Ratios have columns `x,v/u,v'/u'` on `[-10, 5]` with empty values at poles. Bands
    have one row per edge. The discriminant has columns `E,delta`.

    Parameters
    ----------
    plot
        Exported artifact.
    h
        Semiclassical parameter.
    c
        Well depth.
    max_band
        Last band of a band export.
    samples
        Samples of ratio and discriminant exports.
    out
        Output file.
    """
    return invoke(
        command="plotdata",
        plot=plot,
        h=h,
        c=c,
        max_band=max_band,
        samples=samples,
        output_format="csv",
        output_path=out,
    )


if __name__ == "__main__":
    sys.exit(main())
