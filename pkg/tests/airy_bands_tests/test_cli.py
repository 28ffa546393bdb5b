"""Command line front end."""

from csv import DictReader
from io import StringIO
from json import dumps, loads

import numpy as np
import pytest

from airy_bands.__main__ import main
from airy_bands.band_solver import solve_band_structure
from airy_bands.band_solver.types import ScaleParams
from airy_bands.cli import export_plotdata, ratio_rows, run
from airy_bands.cli.claims import CLAIMS, pair_edges, result, run_claims
from airy_bands.cli.types import RunConfig
from airy_bands.floquet_oracle import scan_discriminant


def invoke(capsys, *tokens: str) -> tuple[int, str]:
    status = main(list(tokens))
    return status, capsys.readouterr().out


def test_convert(capsys):
    """Conversion gives `c = h^(-2/3)`."""
    status, out = invoke(capsys, "convert", "--h", "0.973")
    assert status == 0
    assert loads(out)["c"] == pytest.approx(0.973 ** (-2 / 3), rel=1e-14)


def test_bands(capsys):
    """Two bands lie in the range at `c = 3`."""
    status, out = invoke(capsys, "bands", "--c", "3.0", "--format", "json")
    record = loads(out)
    assert status == 0
    assert record["k0"] == 1
    assert len(record["bands"]) == 2


def test_bands_shape(capsys):
    """Band records carry the scale, the count, one entry per band and the density."""
    _, out = invoke(capsys, "bands", "--c", "10")
    record = loads(out)
    structure = solve_band_structure(ScaleParams.from_c(10.0))
    assert list(record) == ["h", "c", "k0", "bands", "density"]
    assert list(record["bands"][0]) == ["p", "Emin", "Emax", "width", "gap_after"]
    assert record["density"] == pytest.approx(structure.density, rel=1e-14)
    assert [b["Emax"] for b in record["bands"]] == pytest.approx(
        [b.e_max.energy for b in structure.bands], rel=1e-14, abs=1e-300
    )
    _, out = invoke(capsys, "bands", "--c", "10", "--format", "csv")
    rows = list(DictReader(StringIO(out)))
    assert list(rows[0]) == ["p", "Emin", "Emax", "width", "gap_after"]
    assert len(rows) == len(structure.bands)


def test_round_trip(capsys):
    """JSON output reparses to the printed 15-digit values."""
    _, out = invoke(capsys, "bands", "--c", "3.0")
    record = loads(out)
    assert dumps(record, indent=2) == out.rstrip("\n")
    energy = record["bands"][0]["Emin"]
    assert float(format(energy, ".15g")) == energy


def test_zeros_csv(capsys):
    """Zero tables are exported with a header row."""
    status, out = invoke(capsys, "zeros", "--max-index", "3", "--format", "csv")
    rows = list(DictReader(StringIO(out)))
    assert status == 0
    assert list(rows[0]) == ["p", "c_p", "c_tilde_p", "xi_p", "xi_tilde_p"]
    assert len(rows) == 4
    assert float(rows[0]["c_p"]) == pytest.approx(1.515, abs=0.005)


def test_verify_selection(capsys):
    """Selected claims pass and are reported by id."""
    status, out = invoke(capsys, "verify", "--claims", "zero-table-values")
    results = loads(out)
    assert status == 0
    assert {r["claim_id"] for r in results} == {"zero-table-values"}
    assert all(r["verdict"] == "pass" for r in results)


@pytest.mark.parametrize(
    "tokens",
    [
        ("bands",),
        ("bands", "--h", "1", "--c", "1"),
        ("bands", "--c", "abc"),
        ("discriminant", "--c", "2", "--tol", "1e-3"),
        ("bands", "--physical", "1,2,3"),
    ],
)
def test_usage_errors(capsys, tokens):
    """Invalid invocations exit with status 2."""
    assert main(list(tokens)) == 2


def test_computation_error(capsys):
    """Computation errors exit with status 1 and a structured message."""
    assert main(["bands", "--c", "1.7", "--max-band", "2"]) == 1
    assert "UnsupportedRangeError" in capsys.readouterr().err


def test_physical_bands(capsys):
    """Physical constants add bands in physical units."""
    status, out = invoke(capsys, "bands", "--physical", "1,0.5,27,1")
    record = loads(out)
    assert status == 0
    assert record["c"] == pytest.approx(3.0)
    assert len(record["physical_bands"]) == 2


def test_sturm(capsys):
    """Zero curves are reported with their residuals."""
    status, out = invoke(capsys, "sturm", "--x", "1.0", "--max-index", "3")
    record = loads(out)
    assert status == 0
    assert len(record["probe"]["z"]) == 4
    assert record["sign_pattern"]["consistent"]


def test_density(capsys):
    """Density output is the summed width of bands `0..k0` over `c`, with the band count."""
    status, out = invoke(capsys, "density", "--c", "10")
    record = loads(out)
    structure = solve_band_structure(ScaleParams.from_c(10.0))
    assert status == 0
    assert record["k0"] == structure.k0
    widths = sum(band.width for band in structure.bands[: structure.k0 + 1])
    assert record["density"] == pytest.approx(widths / 10.0, rel=1e-14)


def test_discriminant_export(tmp_path):
    """Discriminant exports have a monotone energy column."""
    path = tmp_path / "delta.csv"
    export_plotdata(scan_discriminant(2.0, (-2.0, 0.0), n=50), path)
    rows = list(DictReader(StringIO(path.read_text(encoding="utf-8"))))
    assert list(rows[0]) == ["E", "delta"]
    assert np.all(np.diff([float(r["E"]) for r in rows]) > 0)


def test_band_export(tmp_path):
    """Band exports have one row per edge."""
    path = tmp_path / "bands.csv"
    structure = solve_band_structure(ScaleParams.from_c(5.0))
    export_plotdata(structure, path)
    rows = list(DictReader(StringIO(path.read_text(encoding="utf-8"))))
    assert len(rows) == len(structure.edges)


def test_ratio_export(tmp_path, capsys):
    """Ratio exports leave values empty at poles."""
    path = tmp_path / "ratios.csv"
    assert main(["plotdata", "--plot", "ratios", "--out", str(path)]) == 0
    rows = list(DictReader(StringIO(path.read_text(encoding="utf-8"))))
    assert list(rows[0]) == ["x", "v/u", "v'/u'"]
    assert any(r["v/u"] == "" for r in rows)
    assert any(r["v'/u'"] == "" for r in rows)


def test_ratio_rows_poles():
    """Pole rows sit between samples of opposite sign."""
    rows = ratio_rows(samples=100)
    gaps = [i for i, r in enumerate(rows) if np.isnan(r["v/u"])]
    assert gaps
    for i in gaps:
        assert rows[i - 1]["v/u"] * rows[i + 1]["v/u"] < 0


def test_run_verify_failure_status(monkeypatch):
    """A failing claim makes `verify` exit with status 1."""
    failing = result("zero-table-values", "forced", "c = 1", 1.0, 0.0, ok=False)
    monkeypatch.setitem(CLAIMS, "zero-table-values", lambda _: [failing])
    assert run(RunConfig(command="verify", claims="zero-table-values")) == 1


def test_pair_edges():
    """Degenerate oracle edges absorb two solver edges."""
    assert pair_edges([-1.0, -0.5, -0.5], [(-1.0, False), (-0.5, True)]) == 0.0
    assert pair_edges([-1.0], [(-1.0, False), (-0.5, False)]) == float("inf")


def test_claim_ids():
    """Every claim id is descriptive and selectable."""
    assert all("-" in claim_id for claim_id in CLAIMS)
    assert {r.claim_id for r in run_claims(1e-10, "kernel")} == {"kernel-invariants"}


@pytest.mark.slow
def test_full_suite():
    """Every claim passes."""
    failed = [r for r in run_claims(1e-10) if r.verdict == "fail"]
    assert not failed, failed
