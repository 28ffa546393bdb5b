"""Verification suite comparing computed spectra against the stated estimates."""

from __future__ import annotations

from collections.abc import Callable
from math import pi

import numpy as np
from loguru import logger

from airy_bands.airy_core import (
    AI0,
    AIP0,
    BI0,
    BIP0,
    airy_arrays,
    airy_asymptotic,
    airy_scaled,
    airy_series,
)
from airy_bands.band_solver import (
    count_k0,
    density,
    floor_index,
    psi_lower,
    small_c_window,
    solve_band_structure,
    width_and_gap_bounds,
)
from airy_bands.band_solver.types import BandStructure, ScaleParams
from airy_bands.canonical import ALPHA, canonical_arrays
from airy_bands.cli.types import ClaimResult
from airy_bands.floquet_oracle import oracle_band_edges
from airy_bands.semiclassics import (
    DENSITY_LIMIT,
    estimate_edge,
    estimate_gap,
    estimate_width,
    large_h_residual,
    residual_ratio,
)
from airy_bands.sturm_lab import (
    f_solution,
    g_solution,
    sign_pattern,
    sturm_identity_check,
    sturm_picone_check,
    sturm_probe,
    z_curve,
)
from airy_bands.zeros import GAP_CONSTANT, family_brackets, xi_enclosures, zero_tables

TABLE_C = (1.515, 2.66, 3.53, 4.34, 5.06, 5.74, 6.37, 6.98, 7.56, 8.13, 8.67)
"""Tabulated `c_0..c_10`, to two or three decimals."""
NAMED_ZEROS = {"c_0": 1.515, "c~_0": 1.986, "c_1": 2.666, "c~_1": 2.948}
"""Quoted values of the first zeros."""
ORACLE_DEPTHS = (2.0, 3.0, 5.0, 10.0)
"""Well depths compared against the Floquet oracle."""
ORACLE_MATCH = 1e-7
"""Largest distance between paired solver and oracle edges."""
RATIO_RANGE = (0.3, 3.0)
"""Accepted ratios of solved to estimated tunneling corrections."""
EDGE_H = (0.5, 0.35, 0.25)
"""Semiclassical parameters for the lower edge and width of band 0."""
GAP_H = (0.1, 0.08)
"""Semiclassical parameters for the first gap, where its correction is below its leading part."""

Claim = Callable[[float], list[ClaimResult]]


def result(
    claim_id: str,
    reference: str,
    h_or_c: str,
    lhs: float | str,
    rhs: float | str,
    ok: bool,
    residual: float | None = None,
) -> ClaimResult:
    """Build one claim result."""
    return ClaimResult(
        claim_id=claim_id,
        reference=reference,
        h_or_c=h_or_c,
        lhs=lhs,
        rhs=rhs,
        verdict="pass" if ok else "fail",
        residual=residual,
    )


def zero_table_values(_: float) -> list[ClaimResult]:
    """First canonical zeros and `alpha` against their quoted values."""
    tables = zero_tables()
    results = []
    for p, expected in enumerate(TABLE_C):
        deviation = abs(tables.c[p] - expected)
        results.append(
            result(
                "zero-table-values",
                f"c_{p} against tabulated value",
                "-",
                tables.c[p],
                expected,
                deviation <= 0.01,
                deviation,
            )
        )
    computed = {
        "c_0": tables.c[0],
        "c~_0": tables.c_tilde[0],
        "c_1": tables.c[1],
        "c~_1": tables.c_tilde[1],
    }
    for name, expected in NAMED_ZEROS.items():
        deviation = abs(computed[name] - expected)
        results.append(
            result(
                "zero-table-values",
                f"{name} against quoted value",
                "-",
                computed[name],
                expected,
                deviation <= 0.005,
                deviation,
            )
        )
    results.append(
        result(
            "zero-table-values",
            "alpha against quoted value",
            "-",
            ALPHA,
            1.372,
            abs(ALPHA - 1.372) <= 0.001,
            abs(ALPHA - 1.372),
        )
    )
    return results


def zero_brackets(_: float) -> list[ClaimResult]:
    """Ordering and localization of the canonical zeros up to `p = 200`."""
    max_index = 200
    arr = zero_tables(max_index).arrays()
    c, ct = arr["c"][: max_index + 1], arr["c_tilde"][: max_index + 1]
    order_failures = int(np.count_nonzero(c >= ct))
    bracket_failures = 0
    for values, families in ((c, ("vp", "v")), (ct, ("u", "up"))):
        for parity, family in enumerate(families):
            lo, hi = family_brackets(family, np.arange(values[parity::2].size, dtype=float))
            bracket_failures += int(
                np.count_nonzero((values[parity::2] < lo) | (values[parity::2] > hi))
            )
    xi, xi_t = arr["xi"], arr["xi_tilde"]
    enclosure_failures = 0
    for p in range(max_index + 1):
        (lo, hi), (lo_t, hi_t) = xi_enclosures(p)
        enclosure_failures += int(not lo <= xi[p] <= hi) + int(not lo_t <= xi_t[p] <= hi_t)
    return [
        result(
            "zero-brackets", "violations of c_p < c~_p", "p <= 200", order_failures, 0, order_failures == 0
        ),
        result(
            "zero-brackets",
            "zeros outside their phase brackets",
            "p <= 200",
            bracket_failures,
            0,
            bracket_failures == 0,
        ),
        result(
            "zero-brackets",
            "phases outside their enclosures",
            "p <= 200",
            enclosure_failures,
            0,
            enclosure_failures == 0,
        ),
    ]


def zero_gap_asymptotics(_: float) -> list[ClaimResult]:
    """Scaled zero gap at `p = 200` against its limit."""
    p = 200
    tables = zero_tables(p)
    scaled = p ** (1 / 3) * (tables.c_tilde[p] - tables.c[p])
    deviation = abs(scaled / GAP_CONSTANT - 1)
    return [
        result(
            "zero-gap-asymptotics",
            "p^(1/3) (c~_p - c_p) against its limit",
            f"p = {p}",
            scaled,
            GAP_CONSTANT,
            deviation <= 0.05,
            deviation,
        )
    ]


def pair_edges(solver: list[float], oracle: list[tuple[float, bool]]) -> float:
    """Largest distance of a one-to-one pairing, degenerate oracle edges taking two partners."""
    capacity = [2 if degenerate else 1 for _, degenerate in oracle]
    worst = 0.0
    for energy in solver:
        free = [i for i, cap in enumerate(capacity) if cap > 0]
        if not free:
            return float("inf")
        best = min(free, key=lambda i: abs(oracle[i][0] - energy))
        capacity[best] -= 1
        worst = max(worst, abs(oracle[best][0] - energy))
    return worst if not any(capacity) else float("inf")


def oracle_equivalence(tol: float) -> list[ClaimResult]:
    """Solver edges in the potential range against refined discriminant crossings."""
    results = []
    for c in ORACLE_DEPTHS:
        structure = solve_band_structure(ScaleParams.from_c(c))
        solver = [e.energy for e in structure.edges if -c <= e.energy <= 0]
        oracle = oracle_band_edges(c, (-c, 0.0), tol=tol)
        distance = pair_edges(solver, [(e.energy, e.degenerate) for e in oracle])
        results.append(
            result(
                "oracle-equivalence",
                "largest distance between paired edges",
                f"c = {c}",
                distance,
                ORACLE_MATCH,
                distance <= ORACLE_MATCH,
                distance,
            )
        )
        oracle_count = sum(2 if e.degenerate else 1 for e in oracle)
        k0 = structure.k0 if structure.k0 is not None else -1
        results.append(
            result(
                "oracle-equivalence",
                "bands in the range from the oracle against k0 + 1",
                f"c = {c}",
                oracle_count // 2,
                k0 + 1,
                oracle_count // 2 == k0 + 1,
            )
        )
    return results


def first_band_bounds(_: float) -> list[ClaimResult]:
    """Enclosures of both edges of band 0 across well depths."""
    tables = zero_tables()
    at1, c0 = tables.a_tilde[0], tables.c[0]
    failures: list[str] = []
    for c in np.linspace(0.1, 20.0, 51)[1:].tolist():
        structure = solve_band_structure(ScaleParams.from_c(c), max_band=0)
        band = structure.bands[0]
        e_min, e_max = band.e_min.energy, band.e_max.energy
        if not -c < e_min < min(-c / 2, -c + at1):
            failures.append(f"lower edge at c = {c}")
        if c <= c0 and e_max < 0:
            failures.append(f"upper edge below zero at c = {c}")
        if c > c0 and not -c + at1 < e_max < -c + c0:
            failures.append(f"upper edge at c = {c}")
    for c in (1.2, 0.5, 0.3):
        lo, hi = small_c_window(c)
        e_max = solve_band_structure(ScaleParams.from_c(c), max_band=0).bands[0].e_max.energy
        if not lo <= e_max <= hi:
            failures.append(f"small-c window at c = {c}")
    return [
        result(
            "first-band-bounds",
            "edges of band 0 outside their enclosures",
            "c in (0.1, 20]",
            ", ".join(failures) or "none",
            "none",
            not failures,
        )
    ]


def zero_edge_characterization(_: float) -> list[ClaimResult]:
    """Edges reaching zero exactly when the depth is a canonical zero."""
    tables = zero_tables()
    results = []
    for p in range(11):
        upper = solve_band_structure(ScaleParams.from_c(tables.c[p]), max_band=p).bands[p].e_max
        following = next(
            e
            for e in solve_band_structure(ScaleParams.from_c(tables.c_tilde[p]), max_band=p).edges
            if e.kind == "min" and e.p == p + 1
        )
        results.extend([
            result(
                "zero-edge-characterization",
                f"upper edge of band {p} at c = c_{p}",
                f"c = {tables.c[p]}",
                upper.energy,
                0.0,
                abs(upper.energy) <= 1e-9 and upper.residual <= 1e-9,
                upper.residual,
            ),
            result(
                "zero-edge-characterization",
                f"lower edge of band {p + 1} at c = c~_{p}",
                f"c = {tables.c_tilde[p]}",
                following.energy,
                0.0,
                abs(following.energy) <= 1e-9 and following.residual <= 1e-9,
                following.residual,
            ),
        ])
    return results


def width_gap_bounds(_: float) -> list[ClaimResult]:
    """Explicit width and gap bounds for every band contained in the range."""
    c = 50.0
    structure = solve_band_structure(ScaleParams.from_c(c))
    k0 = structure.k0 or 0
    width_failures, gap_failures = [], []
    for p in range(2, k0 + 1):
        report = width_and_gap_bounds(p, structure)
        if not report.width_ok:
            width_failures.append(p)
        if report.gap_ok is False:
            gap_failures.append(p)
    return [
        result(
            "width-gap-bounds",
            "bands 2..k0 violating the width bound",
            f"c = {c}",
            str(width_failures or "none"),
            "none",
            not width_failures,
        ),
        result(
            "width-gap-bounds",
            "gaps 2..k0-1 violating their bounds",
            f"c = {c}",
            str(gap_failures or "none"),
            "none",
            not gap_failures,
        ),
    ]


def correction_ratios(structure_at: Callable[[float], BandStructure]) -> dict[str, dict[float, float | None]]:
    """Ratios of solved to estimated corrections for band 0 and the first gap.

    The gap correction uses the full barrier action.
    """
    ratios: dict[str, dict[float, float | None]] = {"e_min": {}, "width": {}, "gap": {}}
    for h in EDGE_H:
        band = structure_at(h).bands[0]
        ratios["e_min"][h] = residual_ratio(estimate_edge(0, "min", h), band.e_min.energy)
        ratios["width"][h] = residual_ratio(estimate_width(0, h), band.width)
    for h in GAP_H:
        gap = structure_at(h).bands[0].gap_after
        ratios["gap"][h] = residual_ratio(estimate_gap(0, h, refined=True), gap) if gap is not None else None
    return ratios


def semiclassical_trend(_: float) -> list[ClaimResult]:
    """Solved tunneling corrections against their estimates."""
    ratios = correction_ratios(
        lambda h: solve_band_structure(ScaleParams.from_h(h), max_band=0)
    )
    results = []
    for quantity, by_h in ratios.items():
        for h, ratio in by_h.items():
            ok = ratio is not None and RATIO_RANGE[0] <= ratio <= RATIO_RANGE[1]
            results.append(
                result(
                    "semiclassical-trend",
                    f"{quantity} correction ratio",
                    f"h = {h}",
                    "unresolved" if ratio is None else ratio,
                    f"{RATIO_RANGE}",
                    ok,
                )
            )
    for quantity in ("e_min", "width"):
        first, last = ratios[quantity][EDGE_H[0]], ratios[quantity][EDGE_H[-1]]
        if first is None or last is None:
            continue
        start, end = abs(first - 1), abs(last - 1)
        results.append(
            result(
                "semiclassical-trend",
                f"{quantity} ratio deviation does not grow as h decreases",
                f"h = {EDGE_H[0]} to {EDGE_H[-1]}",
                end,
                start,
                end <= max(1.5 * start, 0.05),
            )
        )
    return results


def large_h_expansion(_: float) -> list[ClaimResult]:
    """Bottom edge expansion for large `h` and growth of the upper edge of band 0."""

    def band_zero(h: float):
        return solve_band_structure(ScaleParams.from_h(h), max_band=0).bands[0]

    residuals = {h: abs(large_h_residual(h, band_zero(h).e_min.energy)) for h in (10.0, 20.0)}
    decay = residuals[10.0] / residuals[20.0] if residuals[20.0] else float("inf")
    upper = {h: band_zero(h).e_max.energy for h in (10.0, 100.0)}
    return [
        result(
            "large-h-expansion",
            "residual decay from h = 10 to h = 20",
            "h = 10, 20",
            decay,
            ">= 8",
            decay >= 8,
        ),
        result(
            "large-h-expansion",
            "upper edge of band 0 at h = 100 above its value at h = 10",
            "h = 10, 100",
            upper[100.0],
            upper[10.0],
            upper[100.0] > upper[10.0],
        ),
    ]


def density_trend(_: float) -> list[ClaimResult]:
    """Spectral density increasing with depth and below its limit."""
    depths = (10.0, 30.0, 100.0)
    values = [density(c) for c in depths]
    counts = [(count_k0(c), floor_index(c)) for c in depths]
    return [
        result(
            "density-trend",
            "density increasing with depth",
            "c = 10, 30, 100",
            str([round(v, 6) for v in values]),
            "increasing",
            bool(np.all(np.diff(values) > 0)),
        ),
        result(
            "density-trend",
            "density at c = 100 below its limit",
            "c = 100",
            values[-1],
            DENSITY_LIMIT + 0.02,
            0 < values[-1] <= DENSITY_LIMIT + 0.02,
        ),
        result(
            "density-trend",
            "k0 equal to floor(4 c^(3/2) / (3 pi)) or one less",
            "c = 10, 30, 100",
            str([k for k, _ in counts]),
            str([f for _, f in counts]),
            all(f - 1 <= k <= f for k, f in counts),
        ),
    ]


def sturm_lab(_: float) -> list[ClaimResult]:
    """Zero curves, derivative relations, comparison identities and sign patterns."""
    tables = zero_tables()
    k_max = 6
    start = max(abs(z_curve(k, 0.0) - tables.c[k]) for k in range(k_max + 1))
    grid = np.arange(0.0, 5.01, 0.25)
    curves = np.array([[z_curve(k, x) for x in grid.tolist()] for k in range(k_max + 1)])
    consistency = max(abs(z_curve(k, 2.0) - (2.0 - psi_lower(k, 2.0))) for k in range(k_max + 1))
    probe = sturm_probe(1.0, k_max)
    x1, x2 = 1.0, 2.0
    identity = sturm_identity_check(
        lambda s: x2 - s,
        lambda s: x1 - s,
        g_solution(x1),
        g_solution(x2),
        (z_curve(1, x2), z_curve(3, x2)),
    )
    picone = sturm_picone_check(
        lambda s: 1 / (x1 - s),
        lambda s: 1 / (x2 - s),
        np.ones_like,
        f_solution(x2),
        f_solution(x1),
        (-2.0, x1 - 0.25),
    )
    pattern = sign_pattern(1.0, k_max)
    return [
        result("sturm-lab", "z_k(0) against c_k", "k <= 6", start, 1e-10, start <= 1e-10, start),
        result(
            "sturm-lab",
            "z_k increasing on x = 0..5",
            "k <= 6",
            str(bool(np.all(np.diff(curves, axis=1) > 0))),
            "True",
            bool(np.all(np.diff(curves, axis=1) > 0)),
        ),
        result(
            "sturm-lab",
            "z_k(x) against x - psi_k(x)",
            "x = 2",
            consistency,
            1e-10,
            consistency <= 1e-10,
            consistency,
        ),
        result(
            "sturm-lab",
            "derivative relations against central differences",
            "x = 1",
            probe.derivative_residual,
            1e-7,
            probe.derivative_residual <= 1e-7,
            probe.derivative_residual,
        ),
        result(
            "sturm-lab",
            "Wronskian identity for g_1, g_2",
            "x = 1, 2",
            identity.residual,
            1e-6,
            identity.residual <= 1e-6 and identity.agreement <= 1e-6,
            identity.residual,
        ),
        result(
            "sturm-lab",
            "Picone identity for f_1, f_2",
            "x = 1, 2",
            picone.residual,
            1e-6,
            picone.residual <= 1e-6
            and picone.rhs_nonnegative
            and picone.dominance is not None
            and picone.dominance > 0,
            picone.residual,
        ),
        result(
            "sturm-lab",
            "sign pattern of f, f', g, g'",
            "x = 1",
            str(pattern.consistent),
            "True",
            pattern.consistent,
        ),
    ]


def kernel_invariants(_: float) -> list[ClaimResult]:
    """Wronskians and agreement of the independent Airy kernels."""
    x = np.linspace(-50.0, 50.0, 1001)
    ai, aip, bi, bip = airy_arrays(x)
    airy_w = float(np.max(np.abs(pi * (ai * bip - aip * bi) - 1)))
    xc = np.linspace(-50.0, 3.0, 1001)
    u, up, v, vp = canonical_arrays(xc)
    canonical_w = float(np.max(np.abs(u * vp - up * v - 1)))
    coefficient_w = abs(pi * (AI0 * BIP0 - AIP0 * BI0) - 1)
    xs = np.linspace(-2.0, 2.0, 401)
    series = np.array(airy_series(xs))
    reference = np.array(airy_arrays(xs))
    series_dev = float(np.max(np.abs(series - reference) / np.maximum(1.0, np.abs(reference))))
    xn = -np.linspace(12.0, 60.0, 401)
    asym_n, ref_n = np.array(airy_asymptotic(xn)), np.array(airy_arrays(xn))
    moduli = np.array([np.hypot(ref_n[0], ref_n[2])] * 2 + [np.hypot(ref_n[1], ref_n[3])] * 2)
    moduli = moduli[[0, 2, 1, 3]]
    xp = np.linspace(12.0, 60.0, 401)
    asym_p, ref_p = np.array(airy_asymptotic(xp, scaled=True)), np.array(airy_scaled(xp))
    asymptotic_dev = max(
        float(np.max(np.abs(asym_n - ref_n) / moduli)),
        float(np.max(np.abs(asym_p - ref_p) / np.abs(ref_p))),
    )
    checks = (
        ("Airy Wronskian times pi", "|x| <= 50", airy_w),
        ("canonical Wronskian", "-50 <= x <= 3", canonical_w),
        ("canonical Wronskian from the origin values", "all x", coefficient_w),
        ("series kernel against scipy", "|x| <= 2", series_dev),
        ("asymptotic kernel against scipy", "|x| >= 12", asymptotic_dev),
    )
    return [
        result("kernel-invariants", reference, where, value, 1e-12, value <= 1e-12, value)
        for reference, where, value in checks
    ]


CLAIMS: dict[str, Claim] = {
    "zero-table-values": zero_table_values,
    "zero-brackets": zero_brackets,
    "zero-gap-asymptotics": zero_gap_asymptotics,
    "oracle-equivalence": oracle_equivalence,
    "first-band-bounds": first_band_bounds,
    "zero-edge-characterization": zero_edge_characterization,
    "width-gap-bounds": width_gap_bounds,
    "semiclassical-trend": semiclassical_trend,
    "large-h-expansion": large_h_expansion,
    "density-trend": density_trend,
    "sturm-lab": sturm_lab,
    "kernel-invariants": kernel_invariants,
}
"""Claim suite by id."""


def run_claims(tol: float, selection: str | None = None) -> list[ClaimResult]:
    """Run every claim whose id contains `selection`."""
    results: list[ClaimResult] = []
    for claim_id, claim in CLAIMS.items():
        if selection and selection not in claim_id:
            continue
        logger.info(f"Checking {claim_id}")
        results.extend(claim(tol))
    return results
