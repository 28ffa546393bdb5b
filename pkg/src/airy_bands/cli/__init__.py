"""Command line orchestration and machine-readable outputs.

Energies are rescaled unless physical constants are given. Every float is printed with
15 significant digits so that JSON outputs reparse to the printed values.
"""

from __future__ import annotations

import sys
from collections.abc import Callable, Collection
from csv import DictWriter
from io import StringIO
from json import dumps
from pathlib import Path
from typing import Any

import numpy as np
from loguru import logger
from pydantic import BaseModel, ValidationError

from airy_bands.band_solver import solve_band_structure, to_physical
from airy_bands.band_solver.types import BandStructure, ScaleParams
from airy_bands.canonical import (
    canonical_scaled_arrays,
    ratio_vpup_array,
    ratio_vu_array,
)
from airy_bands.cli.claims import run_claims
from airy_bands.cli.types import OutputFormat, RunConfig
from airy_bands.errors import AiryBandsError, UsageError
from airy_bands.floquet_oracle import oracle_band_edges, scan_discriminant
from airy_bands.floquet_oracle.types import DiscriminantScan
from airy_bands.records import columns, format_row, to_record
from airy_bands.records.types import Row
from airy_bands.sturm_lab import sign_pattern, sturm_probe
from airy_bands.zeros import zero_tables

RATIO_X = (-10.0, 5.0)
"""Sampled range of the ratio functions."""

Artifact = DiscriminantScan | BandStructure | list[Row]
"""Exportable artifact, ratio samples being plain rows."""


def log(obj: Any):
    """Send object to `stdout`."""
    match obj:
        case str():
            print(obj)
        case Collection():
            for o in obj:
                log(o)
        case _:
            print(obj)


def scale_params(config: RunConfig) -> ScaleParams:
    """Scale parameters from `h`, `c` or physical constants.

    Raises
    ------
    UsageError
        If none of them was given.
    """
    if config.h is not None:
        return ScaleParams.from_h(config.h)
    if config.c is not None:
        return ScaleParams.from_c(config.c)
    if config.physical is not None:
        return ScaleParams.from_physical(*config.physical)
    raise UsageError(f"The {config.command} command needs h, c or physical constants.")


def to_csv(rows: list[Row]) -> str:
    """Render rows as CSV with a header row."""
    buffer = StringIO()
    writer = DictWriter(buffer, fieldnames=columns(rows))
    writer.writeheader()
    writer.writerows(format_row(row) for row in rows)
    return buffer.getvalue()


def to_json(obj: BaseModel | list[Row] | Row) -> str:
    """Render a model, a row or a list of rows as JSON."""
    if isinstance(obj, list):
        return dumps([to_record(row) for row in obj], indent=2)
    return dumps(to_record(obj), indent=2)


def emit(text: str, path: Path | None):
    """Write output to a file or to `stdout`."""
    if path is None:
        log(text.rstrip("\n"))
        return
    path.write_text(encoding="utf-8", data=text)
    logger.info(f"Wrote {path}")


def render(record: BaseModel | Row, rows: list[Row], output_format: OutputFormat) -> str:
    """JSON of the full record, or CSV of its flat rows."""
    return to_json(record) if output_format == "json" else to_csv(rows)


def zeros_output(config: RunConfig) -> str:
    tables = zero_tables(config.max_index)
    rows: list[Row] = [
        {
            "p": p,
            "c_p": tables.c[p],
            "c_tilde_p": tables.c_tilde[p],
            "xi_p": tables.xi[p],
            "xi_tilde_p": tables.xi_tilde[p],
        }
        for p in range(config.max_index + 1)
    ]
    return to_json(rows) if config.output_format == "json" else to_csv(rows)


def band_rows(structure: BandStructure) -> list[Row]:
    """One row per band."""
    return [
        {
            "p": band.p,
            "Emin": band.e_min.energy,
            "Emax": band.e_max.energy,
            "width": band.width,
            "gap_after": band.gap_after,
        }
        for band in structure.bands
    ]


def bands_record(structure: BandStructure) -> Row:
    """Scale parameters, band count, bands and density."""
    return {
        "h": structure.params.h,
        "c": structure.params.c,
        "k0": structure.k0,
        "bands": band_rows(structure),
        "density": structure.density,
    }


def bands_output(config: RunConfig) -> str:
    structure = solve_band_structure(scale_params(config), config.max_band)
    if config.physical is None:
        return render(bands_record(structure), band_rows(structure), config.output_format)
    physical = [band.model_dump() for band in to_physical(structure)]
    record = {**bands_record(structure), "physical_bands": physical}
    return render(record, physical, config.output_format)


def density_output(config: RunConfig) -> str:
    params = scale_params(config)
    structure = solve_band_structure(params)
    row: Row = {
        "h": params.h,
        "c": params.c,
        "k0": structure.k0,
        "density": structure.density,
    }
    return render(row, [row], config.output_format)


def discriminant_output(config: RunConfig) -> str:
    c = scale_params(config).c
    scan = scan_discriminant(c, (-c, 0.0), config.samples, config.tol)
    if config.output_format == "csv":
        return to_csv(discriminant_rows(scan))
    edges = oracle_band_edges(c, (-c, 0.0), config.samples, config.tol)
    return dumps(
        to_record({
            "c": c,
            "edges": [edge.model_dump() for edge in edges],
            "scan": discriminant_rows(scan),
        }),
        indent=2,
    )


def verify_output(config: RunConfig) -> tuple[str, bool]:
    results = run_claims(config.tol, config.claims)
    failed = [r.claim_id for r in results if r.verdict == "fail"]
    if failed:
        logger.error(f"Failed claims: {', '.join(sorted(set(failed)))}")
    rows = [r.model_dump() for r in results]
    return (
        to_json(rows) if config.output_format == "json" else to_csv(rows),
        not failed,
    )


def sturm_output(config: RunConfig) -> str:
    probe = sturm_probe(config.x, config.max_index)
    pattern = sign_pattern(config.x, config.max_index)
    rows: list[Row] = [
        {"k": k, "z": z, "residual": residual}
        for k, (z, residual) in enumerate(zip(probe.z, probe.residuals, strict=True))
    ]
    record = {"probe": probe.model_dump(), "sign_pattern": pattern.model_dump()}
    return render(record, rows, config.output_format)


def convert_output(config: RunConfig) -> str:
    params = scale_params(config)
    row: Row = {"h": params.h, "c": params.c, "theta": params.theta}
    return render(row, [row], config.output_format)


def ratio_rows(
    lo: float = RATIO_X[0], hi: float = RATIO_X[1], samples: int = 400
) -> list[Row]:
    """Samples of `v/u` and `v'/u'`, with an empty value inserted at every pole."""
    x = np.linspace(lo, hi, samples)
    u, up, *_ = canonical_scaled_arrays(x)
    poles_u = 0.5 * (x[:-1] + x[1:])[np.sign(u[:-1]) * np.sign(u[1:]) < 0]
    poles_up = 0.5 * (x[:-1] + x[1:])[np.sign(up[:-1]) * np.sign(up[1:]) < 0]
    if lo < 0 < hi:
        poles_up = np.append(poles_up, 0.0)
    points = np.unique(np.concatenate([x, poles_u, poles_up]))
    vu, vpup = ratio_vu_array(points), ratio_vpup_array(points)
    vu[np.isin(points, poles_u)] = np.nan
    vpup[np.isin(points, poles_up)] = np.nan
    return [
        {"x": xi, "v/u": a, "v'/u'": b}
        for xi, a, b in zip(points.tolist(), vu.tolist(), vpup.tolist(), strict=True)
    ]


def discriminant_rows(scan: DiscriminantScan) -> list[Row]:
    return [
        {"E": energy, "delta": value}
        for energy, value in zip(scan.grid, scan.values, strict=True)
    ]


def edge_rows(structure: BandStructure) -> list[Row]:
    return [
        {
            "p": edge.p,
            "kind": edge.kind,
            "energy": edge.energy,
            "equation": edge.equation,
            "residual": edge.residual,
            "above_range": edge.above_range,
        }
        for edge in structure.edges
    ]


def export_plotdata(artifact: Artifact, path: Path | None = None):
    """Write an artifact as CSV with a header row.

    Parameters
    ----------
    artifact
        Discriminant scan exported as `E,delta`, band structure exported as one row per
        edge, or ratio samples exported as `x,v/u,v'/u'`.
    path
        Output file, `stdout` when omitted.
    """
    match artifact:
        case DiscriminantScan():
            rows = discriminant_rows(artifact)
        case BandStructure():
            rows = edge_rows(artifact)
        case _:
            rows = artifact
    emit(to_csv(rows), path)


def plotdata(config: RunConfig):
    match config.plot:
        case "ratios":
            export_plotdata(ratio_rows(samples=config.samples), config.output_path)
        case "bands":
            export_plotdata(
                solve_band_structure(scale_params(config), config.max_band),
                config.output_path,
            )
        case "discriminant":
            c = scale_params(config).c
            export_plotdata(
                scan_discriminant(c, (-c, 0.0), config.samples, config.tol),
                config.output_path,
            )


OUTPUTS: dict[str, Callable[[RunConfig], str]] = {
    "zeros": zeros_output,
    "bands": bands_output,
    "density": density_output,
    "discriminant": discriminant_output,
    "sturm": sturm_output,
    "convert": convert_output,
}
"""Commands producing one rendered output."""


def report_error(err: Exception, status: int) -> int:
    """Print a structured error to `stderr` and return the exit status."""
    logger.error(str(err))
    print(dumps({"error": type(err).__name__, "message": str(err)}), file=sys.stderr)
    return status


def run(config: RunConfig) -> int:
    """Run a command and return its exit status.

    Returns
    -------
    int
        `0` on success, `1` on a computation error or a failed claim, `2` on a usage
        error.
    """
    try:
        if config.command == "plotdata":
            plotdata(config)
            return 0
        if config.command == "verify":
            text, ok = verify_output(config)
            emit(text, config.output_path)
            return 0 if ok else 1
        emit(OUTPUTS[config.command](config), config.output_path)
    except UsageError as err:
        return report_error(err, 2)
    except (AiryBandsError, ValidationError, OSError) as err:
        return report_error(err, 1)
    return 0
