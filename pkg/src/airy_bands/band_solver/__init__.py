"""Band edges, counts and densities from the ratio equations of the canonical solutions.

With `x = -E` and `y = -c - E`, every edge in the potential range solves one monotone
equation `A(y) = B(x)` between the ratios `v/u` and `v'/u'`:

- lower edge of band 0, `v'/u'(y) = v'/u'(x)` with `y` in `(-a~_1, 0)`
- upper edge of band `2j`, `v'/u'(y) = v/u(x)` with `y` in `[-c_2j, -a~_(j+1))`
- upper edge of band `2j + 1`, `v/u(y) = v/u(x)` with `y` in `[-c_(2j+1), -a_(j+1))`
- lower edge of band `2j + 1`, `v/u(y) = v'/u'(x)` with `y` in `(-a_(j+1), -c~_2j]`
- lower edge of band `2j + 2`, `v'/u'(y) = v'/u'(x)` with `y` in `(-a~_(j+2), -c~_(2j+1)]`

On each bracket `A - B` changes sign once, from negative to positive, so all edges of a
kind are bisected together.
"""

from __future__ import annotations

from collections.abc import Callable
from math import exp, floor, inf, log, pi
from typing import NamedTuple

import numpy as np
from loguru import logger
from scipy.optimize import brentq

from airy_bands.band_solver.types import (
    Band,
    BandEdge,
    BandStructure,
    PhysicalBand,
    ScaleParams,
    WidthGapReport,
)
from airy_bands.canonical import (
    canonical_arrays,
    canonical_scaled_arrays,
    ratio_vpup_array,
    ratio_vu_array,
)
from airy_bands.errors import (
    BoundaryError,
    ConversionError,
    DomainError,
    RangeError,
    UnsupportedRangeError,
    ValidityError,
)
from airy_bands.roots import EPS, bisect, midpoint
from airy_bands.semiclassics import density_bound_terms, estimate_width
from airy_bands.settings import Settings, get_settings
from airy_bands.types import Array, ArrayLike, EdgeEquation, EdgeKind, Interval
from airy_bands.zeros import zero_tables
from airy_bands.zeros.types import ZeroTables

K0_SLOPE = 4 / (3 * pi)
"""Slope of `k0` against `c^(3/2)`."""
P0_CONSTANT = 1.25
"""Upper estimate of `p^(1/3) (c~_p - c~_(p-1))`, sizing tables for small `c`."""
TOUCH_REL = 1e-14
"""Relative distance to a zero at which an edge is reported exactly at zero."""
XTOL = 1e-15
"""Absolute bisection tolerance in `x = -E`."""
BOUND_REL = 1e-13
"""Relative slack, in units of `c`, granted to solved widths and gaps in bound checks."""
GAP_LOWER_FACTOR = (
    (3 / 2) ** (1 / 3)
    * ((7 / 6) + 1)
    / ((7 / 6) ** (4 / 3) + (7 / 6) ** (2 / 3) + 1)
    * 2 ** (1 / 3)
    * pi ** (2 / 3)
    / 9
)
"""Constant of the explicit lower gap bound, before the `(p + 1)^(-1/3)` decay."""

Ratio = Callable[[Array], Array]


class EdgeFamily(NamedTuple):
    """Vectorized in-range edges of one kind."""

    ratio_a: Ratio
    """Ratio at `y = x - c`."""
    ratio_b: Ratio
    """Ratio at `x`."""
    equation: EdgeEquation
    """Barrier-top quantity vanishing at these edges."""


FAMILIES: dict[str, EdgeFamily] = {
    "ground": EdgeFamily(ratio_vpup_array, ratio_vpup_array, "U_prime"),
    "max_even": EdgeFamily(ratio_vpup_array, ratio_vu_array, "U"),
    "max_odd": EdgeFamily(ratio_vu_array, ratio_vu_array, "V"),
    "min_odd": EdgeFamily(ratio_vu_array, ratio_vpup_array, "V_prime"),
    "min_even": EdgeFamily(ratio_vpup_array, ratio_vpup_array, "U_prime"),
}
"""Ratio equations of the in-range edge kinds."""


def product_terms(
    equation: EdgeEquation, c: float, energy: ArrayLike
) -> tuple[Array, Array, Array]:
    """Two terms of a barrier-top quantity and their scale, all times `exp(-zeta(x))`.

    The quantity vanishes when the terms agree. The scale is the product of the norms
    of the two solution vectors involved.
    """
    energy = np.asarray(energy, dtype=np.float64)
    ux, upx, vx, vpx, _ = canonical_scaled_arrays(-energy)
    uy, upy, vy, vpy = canonical_arrays(-c - energy)
    match equation:
        case "U_prime":
            terms = (upy * vpx, vpy * upx)
            scale = np.hypot(upx, vpx) * np.hypot(upy, vpy)
        case "V":
            terms = (ux * vy, vx * uy)
            scale = np.hypot(ux, vx) * np.hypot(uy, vy)
        case "U":
            terms = (vx * upy, ux * vpy)
            scale = np.hypot(ux, vx) * np.hypot(upy, vpy)
        case "V_prime":
            terms = (vpx * uy, upx * vy)
            scale = np.hypot(upx, vpx) * np.hypot(uy, vy)
    return terms[0], terms[1], scale


def edge_quantity(equation: EdgeEquation, c: float, energy: ArrayLike) -> Array:
    """Barrier-top quantity, up to a positive factor, as a function of energy."""
    first, second, _ = product_terms(equation, c, energy)
    return first - second


def edge_residuals(
    c: float, energies: ArrayLike, equations: list[EdgeEquation]
) -> Array:
    """Residuals of edge equations relative to the size of their terms."""
    energies = np.atleast_1d(np.asarray(energies, dtype=np.float64))
    residuals = np.empty_like(energies)
    for equation in set(equations):
        mask = np.array([e == equation for e in equations])
        first, second, scale = product_terms(equation, c, energies[mask])
        residuals[mask] = np.abs(first - second) / np.where(scale > 0, scale, 1.0)
    return residuals


def required_index(c: float, max_band: int | None = None) -> int:
    """Zero table size needed to count and solve at `c`."""
    index = int(K0_SLOPE * c**1.5) + 4
    if max_band is not None:
        index = max(index, max_band + 3)
    if c < 1:
        index = max(index, int((P0_CONSTANT / c) ** 3) + 8)
    return index


def count_k0(c: float, tables: ZeroTables | None = None) -> int:
    """Index of the last band contained in the potential range, the largest `k` with `c_k <= c`.

    Raises
    ------
    DomainError
        If `c <= c_0`.
    """
    tables = tables or zero_tables(required_index(c))
    if c <= tables.c[0]:
        raise DomainError(f"Band counting needs c > c_0 = {tables.c[0]}, got {c}.")
    if tables.c[-1] <= c:
        tables = zero_tables(required_index(c))
    return int(np.count_nonzero(np.asarray(tables.c) <= c)) - 1


def count_p0(c: float, tables: ZeroTables | None = None) -> int:
    """Small-`c` index with `c~_(p0+1) - c~_p0 < c <= c~_p0 - c~_(p0-1)`, zero above `c~_1 - c~_0`.

    Raises
    ------
    DomainError
        If `c` is not in `(0, c_0)`.
    BoundaryError
        If `c` equals a difference of consecutive `c~` zeros.
    """
    tables = tables or zero_tables(required_index(c))
    if not 0 < c < tables.c[0]:
        raise DomainError(f"p0 is defined for 0 < c < c_0 = {tables.c[0]}, got {c}.")
    steps = np.diff(np.asarray(tables.c_tilde))
    if steps[-1] >= c:
        tables = zero_tables(required_index(c))
        steps = np.diff(np.asarray(tables.c_tilde))
    near = np.flatnonzero(np.abs(steps - c) <= TOUCH_REL * c)
    if near.size:
        p = int(near[0]) + 1
        raise BoundaryError(f"c = {c} equals c~_{p} - c~_{p - 1}.", (p - 1, p))
    return int(np.count_nonzero(steps >= c))


def excluded_set_distance(c: float, tables: ZeroTables) -> float:
    """Distance from `c` to the nearest tabulated difference `c~_q - c~_r`."""
    ct = np.asarray(tables.c_tilde)
    targets = ct + c
    covered = targets <= ct[-1]
    if not np.any(covered):
        return inf
    idx = np.clip(np.searchsorted(ct, targets[covered]), 1, ct.size - 1)
    return float(
        np.min(
            np.minimum(
                np.abs(ct[idx] - targets[covered]), np.abs(ct[idx - 1] - targets[covered])
            )
        )
    )


def solve_family(family: EdgeFamily, c: float, lo: Array, hi: Array) -> Array:
    """Solve `A(x - c) = B(x)` for `x` on brackets where `A - B` goes from negative to positive."""
    if lo.size == 0:
        return lo
    lo, hi = bisect(
        lambda x: family.ratio_a(x - c) - family.ratio_b(x), lo, hi, sign_lo=-1.0, xtol=XTOL
    )
    return midpoint(lo, hi)


def in_range_edges(
    c: float, tables: ZeroTables, max_band: int
) -> dict[tuple[EdgeKind, int], tuple[float, Interval, EdgeEquation]]:
    """All edges of bands `0..max_band`, plus the next lower edge, that lie in `[-c, 0]`."""
    arr = tables.arrays()
    ct, cc, a, at = arr["c_tilde"], arr["c"], arr["a"], arr["a_tilde"]
    found: dict[tuple[EdgeKind, int], tuple[float, Interval, EdgeEquation]] = {}

    def add(kind: EdgeKind, ks: Array, lo: Array, hi: Array, family: str, threshold: Array):
        x = solve_family(FAMILIES[family], c, lo, hi)
        touch = np.abs(threshold - c) <= TOUCH_REL * c
        energy = np.where(touch, 0.0, -x) + 0.0
        for k, e, l, h in zip(ks.tolist(), energy.tolist(), lo.tolist(), hi.tolist(), strict=True):
            found[kind, k] = (e, (-h, -l), FAMILIES[family].equation)

    add(
        "min",
        np.array([0]),
        np.array([max(0.0, c - at[0])]),
        np.array([c]),
        "ground",
        np.array([np.inf]),
    )
    ks = np.arange(max_band + 1)
    upper = ks[cc[ks] <= c]
    for parity, family, zero in ((0, "max_even", at), (1, "max_odd", a)):
        k = upper[upper % 2 == parity]
        j = k // 2
        add("max", k, c - cc[k], c - zero[j], family, cc[k])
    lower = np.arange(1, max_band + 2)
    lower = lower[ct[lower - 1] <= c]
    for parity, family in ((1, "min_odd"), (0, "min_even")):
        k = lower[lower % 2 == parity]
        j = (k - 1) // 2
        bound = a[j] if parity == 1 else at[j + 1]
        add("min", k, np.maximum(0.0, c - bound), c - ct[k - 1], family, ct[k - 1])
    logger.debug(f"Solved {len(found)} in-range edges at c = {c}")
    return found


def above_range_roots(
    c: float, count: int, tables: ZeroTables, settings: Settings
) -> list[tuple[float, Interval, EdgeEquation]]:
    """First `count` antiperiodic eigenvalues above zero, from a scan of `U` and `V'`.

    Raises
    ------
    UnsupportedRangeError
        If the search window cannot be widened enough to find them.
    """
    if count <= 0:
        return []
    try:
        p0 = count_p0(c, tables) if c < tables.c[0] else 0
    except BoundaryError as err:
        p0 = err.candidates[1]
    top = tables.c_tilde[min(p0 + 3, tables.max_index)] + 1.0
    floor_ = 1e-12 * max(1.0, c)
    for _ in range(settings.max_window_doublings + 1):
        grid = np.linspace(0.0, top, settings.scan_points)
        roots: list[tuple[float, Interval, EdgeEquation]] = []
        equation: EdgeEquation
        for equation in ("U", "V_prime"):
            values = edge_quantity(equation, c, grid)
            for i in np.flatnonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0):
                lo, hi = float(grid[i]), float(grid[i + 1])
                root = brentq(
                    lambda e, eq=equation: float(edge_quantity(eq, c, e)),
                    lo,
                    hi,
                    xtol=1e-14,
                    rtol=4 * EPS,
                )
                if root > floor_:
                    roots.append((float(root), (lo, hi), equation))
        roots.sort()
        if len(roots) >= count:
            logger.debug(f"Found {count} above-range edges below {top} at c = {c}")
            return roots[:count]
        top *= 2
    raise UnsupportedRangeError(
        f"Could not localize {count} edges above the potential range at c = {c}."
    )


def make_edge(
    c: float,
    kind: EdgeKind,
    p: int,
    solved: tuple[float, Interval, EdgeEquation],
    above_range: bool = False,
) -> BandEdge:
    """Assemble an edge record with its residual."""
    energy, bracket, equation = solved
    residual = float(edge_residuals(c, [energy], [equation])[0])
    return BandEdge(
        p=p,
        kind=kind,
        energy=energy,
        equation=equation,
        bracket=bracket,
        residual=residual,
        above_range=above_range,
    )


def solve_band_structure(
    params: ScaleParams, max_band: int | None = None, settings: Settings | None = None
) -> BandStructure:
    """Solve band edges, widths, gaps, counts and density at one well depth.

    Parameters
    ----------
    params
        Scale parameters.
    max_band
        Last band to solve. Defaults to `k0`, or to the first band when `c <= c_0`.
    settings
        Numerical settings, the shared ones by default.

    Returns
    -------
    BandStructure
        Bands `0..max_band` with the lower edge of the next band when available.

    Raises
    ------
    UnsupportedRangeError
        If a requested edge lies above zero and is neither the upper edge of band 0
        nor the lower edge of band 1.
    """
    settings = settings or get_settings()
    c = params.c
    tables = zero_tables(required_index(c, max_band))
    c0 = tables.c[0]
    k0 = count_k0(c, tables) if c > c0 else None
    p0 = None
    if c < c0:
        try:
            p0 = count_p0(c, tables)
        except BoundaryError as err:
            logger.warning(str(err))
    if max_band is None:
        max_band = k0 if k0 is not None else 0
    if max_band < 0:
        raise DomainError(f"max_band must be non-negative, got {max_band}.")
    tables = zero_tables(required_index(c, max_band))
    if (distance := excluded_set_distance(c, tables)) <= settings.excluded_set_rel:
        logger.warning(f"c = {c} lies within {distance:.2e} of a difference of c~ zeros")
    for p in range(1, max_band + 1):
        if c < tables.c[p]:
            raise UnsupportedRangeError(
                f"Upper edge of band {p} lies above the potential range at c = {c}."
            )
        if c < tables.c_tilde[p - 1] and p >= 2:
            raise UnsupportedRangeError(
                f"Lower edge of band {p} lies above the potential range at c = {c}."
            )
    solved = in_range_edges(c, tables, max_band)
    edges: dict[tuple[EdgeKind, int], BandEdge] = {
        key: make_edge(c, key[0], key[1], value) for key, value in solved.items()
    }
    above: list[tuple[EdgeKind, int]] = []
    if c < c0:
        above.append(("max", 0))
    if c < tables.c_tilde[0]:
        above.append(("min", 1))
    for key, value in zip(
        above, above_range_roots(c, len(above), tables, settings), strict=True
    ):
        edges[key] = make_edge(c, key[0], key[1], value, above_range=True)
    return assemble(params, edges, max_band, k0, p0, settings, distance)


def assemble(
    params: ScaleParams,
    edges: dict[tuple[EdgeKind, int], BandEdge],
    max_band: int,
    k0: int | None,
    p0: int | None,
    settings: Settings,
    distance: float,
) -> BandStructure:
    """Pair edges into bands, handle collapsed bands and compute the density."""
    c = params.c
    bands: list[Band] = []
    for p in range(max_band + 1):
        e_min, e_max = edges["min", p], edges["max", p]
        width = e_max.energy - e_min.energy
        collapsed = width < settings.collapse_rel * c
        if collapsed:
            if width < 0:
                mean = 0.5 * (e_min.energy + e_max.energy)
                e_min = e_min.model_copy(update={"energy": mean})
                e_max = e_max.model_copy(update={"energy": mean})
                edges["min", p], edges["max", p] = e_min, e_max
            width = max(width, 0.0)
            try:
                log_estimate = estimate_width(p, params.h).log_exponential
            except ValidityError:
                log_estimate = inf
            # Only an estimate below the collapse scale can refine an unresolved width
            if log_estimate < log(settings.collapse_rel * c):
                width = exp(log_estimate)
            logger.info(f"Band {p} collapsed at c = {c}, width {width:.3e}")
        following = edges.get(("min", p + 1))
        bands.append(
            Band(
                p=p,
                e_min=e_min,
                e_max=e_max,
                width=width,
                gap_after=following.energy - e_max.energy if following else None,
                collapsed_at_precision=collapsed,
            )
        )
    widths = tuple(band.width for band in bands)
    gaps = tuple(band.gap_after for band in bands if band.gap_after is not None)
    density = sum(widths[: k0 + 1]) / c if k0 is not None and k0 <= max_band else None
    return BandStructure(
        params=params,
        edges=tuple(sorted(edges.values(), key=lambda e: (e.energy, e.kind == "max"))),
        bands=tuple(bands),
        widths=widths,
        gaps=gaps,
        k0=k0,
        p0=p0,
        density=density,
        near_excluded_set=distance <= settings.excluded_set_rel,
    )


def psi_solve(ratio_a: Ratio, target: float, lo: float, hi: float) -> float:
    """Solve `A(z) = target` for `z` in a bracket where `A - target` goes from negative to positive."""
    lo_, hi_ = bisect(
        lambda z: ratio_a(z) - target, np.array([lo]), np.array([hi]), sign_lo=-1.0, xtol=XTOL
    )
    return float(midpoint(lo_, hi_)[0])


def psi_lower(k: int, x: float) -> float:
    """Solution `z = psi_k(x)` of the upper-edge equation at `x >= 0`.

    Solves `v'/u'(z) = v/u(x)` for even `k` and `v/u(z) = v/u(x)` for odd `k`, with
    `z` in `[-c_k, -frak_a_k)`.

    Raises
    ------
    DomainError
        If `k < 0` or `x < 0`.
    """
    if k < 0 or x < 0:
        raise DomainError(f"psi_k needs k >= 0 and x >= 0, got k = {k}, x = {x}.")
    tables = zero_tables(k + 2)
    if x == 0:
        return -tables.c[k]
    ratio = ratio_vpup_array if k % 2 == 0 else ratio_vu_array
    target = float(ratio_vu_array(x))
    return psi_solve(ratio, target, -tables.c[k], -tables.frak_a[k])


def psi_upper(k: int, x: float) -> float:
    """Solution `z = psi^k(x)` of the lower-edge equation at `x >= 0`.

    Solves `v/u(z) = v'/u'(x)` for even `k` and `v'/u'(z) = v'/u'(x)` for odd `k`,
    with `z` in `(-frak_a_(k+1), -c~_k]`.

    Raises
    ------
    DomainError
        If `k < 0` or `x < 0`.
    """
    if k < 0 or x < 0:
        raise DomainError(f"psi^k needs k >= 0 and x >= 0, got k = {k}, x = {x}.")
    tables = zero_tables(k + 2)
    if x == 0:
        return -tables.c_tilde[k]
    ratio = ratio_vu_array if k % 2 == 0 else ratio_vpup_array
    target = float(ratio_vpup_array(x))
    return psi_solve(ratio, target, -tables.frak_a[k + 1], -tables.c_tilde[k])


def psi_ground(x: float) -> float:
    """Solution `z = psi(x)` of `v'/u'(z) = v'/u'(x)` with `z` in `(-a~_1, 0)`.

    Raises
    ------
    DomainError
        If `x <= 0`.
    """
    if x <= 0:
        raise DomainError(f"psi is defined for x > 0, got {x}.")
    tables = zero_tables()
    return psi_solve(ratio_vpup_array, float(ratio_vpup_array(x)), -tables.a_tilde[0], 0.0)


def density(c: float, settings: Settings | None = None) -> float:
    """Integrated density of states in the potential range divided by `c`.

    Raises
    ------
    DomainError
        If `c <= c_0`.
    """
    structure = solve_band_structure(ScaleParams.from_c(c), settings=settings)
    if structure.density is None:
        raise DomainError(f"The density needs c > c_0, got {c}.")
    return structure.density


def gap_bounds(p: int) -> Interval:
    """Explicit lower and upper bounds on gap `p >= 2` inside the range."""
    lower = GAP_LOWER_FACTOR * (p + 1) ** (-1 / 3)
    upper = (pi + 7 / (3 * pi) * p / (p**2 - 1)) * (3 / pi) ** (1 / 3) * (p - 1) ** (-1 / 3)
    return lower, upper


def width_and_gap_bounds(p: int, structure: BandStructure) -> WidthGapReport:
    """Check band `p` and the gap above it against their explicit bounds.

    Raises
    ------
    RangeError
        If `k0` is undefined or `p` is not in `2..k0` or not solved.
    """
    k0 = structure.k0
    if k0 is None or not 2 <= p <= k0 or p >= len(structure.bands):
        raise RangeError(f"Width bounds hold for 2 <= p <= k0, got p = {p}, k0 = {k0}.")
    band = structure.bands[p]
    width_upper = density_bound_terms(p)
    slack = BOUND_REL * structure.params.c
    report = {
        "p": p,
        "width": band.width,
        "width_upper": width_upper,
        "width_ok": (0 < band.width or band.collapsed_at_precision)
        and band.width <= width_upper + slack,
    }
    if p <= k0 - 1 and band.gap_after is not None:
        tables = zero_tables(p + 2)
        lower, upper = gap_bounds(p)
        sandwich = (
            tables.c_tilde[p] - tables.c[p],
            tables.frak_a[p + 1] - tables.frak_a[p],
        )
        gap = band.gap_after
        report |= {
            "gap": gap,
            "gap_lower": lower,
            "gap_upper": upper,
            "gap_sandwich": sandwich,
            "gap_ok": lower - slack < gap <= upper + slack
            and sandwich[0] - slack <= gap <= sandwich[1] + slack,
        }
    return WidthGapReport.model_validate(report)


def small_c_window(c: float) -> Interval:
    """Enclosure of the upper edge of band 0 for `c <= c_0`.

    Raises
    ------
    DomainError
        If `c` is not in `(0, c_0]`.
    """
    tables = zero_tables(required_index(c))
    if not 0 < c <= tables.c[0]:
        raise DomainError(f"The small-c window needs 0 < c <= c_0, got {c}.")
    if c == tables.c[0] or c > tables.c_tilde[1] - tables.c_tilde[0]:
        return 0.0, tables.c_tilde[1]
    p0 = count_p0(c, tables)
    return tables.c_tilde[p0 - 1] - c, tables.c_tilde[p0 + 1]


def to_physical(structure: BandStructure) -> tuple[PhysicalBand, ...]:
    """Bands in physical energy units, `E = E_rescaled / theta`.

    Raises
    ------
    ConversionError
        If the structure was not built from physical constants.
    """
    params = structure.params
    if params.physical is None:
        raise ConversionError("Physical units need hbar, m, V0 and L0.")
    theta = params.theta
    return tuple(
        PhysicalBand(
            p=band.p,
            e_min=band.e_min.energy / theta,
            e_max=band.e_max.energy / theta,
            width=band.width / theta,
            gap_after=None if band.gap_after is None else band.gap_after / theta,
        )
        for band in structure.bands
    )


def floor_index(c: float) -> int:
    """Leading estimate `floor(4 c^(3/2) / (3 pi))` of `k0 + 1`."""
    return floor(K0_SLOPE * c**1.5)
