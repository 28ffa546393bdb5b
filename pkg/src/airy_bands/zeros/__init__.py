"""Zero families of the Airy functions and of the canonical solutions."""

from __future__ import annotations

from collections.abc import Callable
from math import pi, sqrt
from threading import Lock

import numpy as np
from loguru import logger
from pydantic import ValidationError
from scipy import special

from airy_bands.airy_core import airy_arrays
from airy_bands.canonical import canonical_arrays
from airy_bands.errors import DomainError, InternalConsistencyError, RangeError
from airy_bands.roots import bisect, midpoint
from airy_bands.settings import get_settings
from airy_bands.types import AiryKind, Array, Interval
from airy_bands.zeros.types import ZeroAsymptotics, ZeroFamily, ZeroTables

GAP_CONSTANT = (pi / (9 * sqrt(2))) ** (2 / 3)
"""Limit of `p^(1/3) (c~_p - c_p)`."""
NEWTON_STEPS = 2
"""Newton steps polishing each bisected zero."""

_LOCK = Lock()
_TABLES: ZeroTables | None = None


def turning_point(s: Array | float) -> Array:
    """Magnitude `x` whose phase `(2/3) x^(3/2)` equals `s`."""
    return (1.5 * np.asarray(s, dtype=np.float64)) ** (2 / 3)


def family_brackets(family: ZeroFamily, j: Array) -> tuple[Array, Array]:
    """Localization brackets of the `j`-th zero magnitude of a canonical family."""
    lo, hi = {
        "vp": (pi / 3, pi / 2),
        "u": (pi / 2, 2 * pi / 3),
        "v": (5 * pi / 6, pi),
        "up": (pi, 7 * pi / 6),
    }[family]
    return turning_point(j * pi + lo), turning_point(j * pi + hi)


def family_function(family: ZeroFamily) -> Callable[[Array], Array]:
    """Canonical function of a family, evaluated at the negated magnitude."""
    index = {"u": 0, "up": 1, "v": 2, "vp": 3}[family]
    return lambda x: canonical_arrays(-x)[index]


NEWTON_STEP: dict[ZeroFamily, Callable[[Array, Array, Array, Array, Array], Array]] = {
    "u": lambda t, u, up, v, vp: u / up,
    "up": lambda t, u, up, v, vp: up / (t * u),
    "v": lambda t, u, up, v, vp: v / vp,
    "vp": lambda t, u, up, v, vp: vp / (t * v),
}
"""Newton step of each family from `t` and the canonical quartet at `t`."""


def newton_polish(family: ZeroFamily, x: Array) -> Array:
    """Polish zero magnitudes with Newton steps, using `y'' = t y` at `t = -x`."""
    step = NEWTON_STEP[family]
    t = -x
    for _ in range(NEWTON_STEPS):
        t = t - step(t, *canonical_arrays(t))
    return -t


def family_zeros(family: ZeroFamily, count: int) -> Array:
    """First `count` zero magnitudes of a canonical family."""
    if count <= 0:
        return np.empty(0)
    lo, hi = family_brackets(family, np.arange(count, dtype=np.float64))
    try:
        lo, hi = bisect(family_function(family), lo, hi, xtol=1e-13)
    except InternalConsistencyError as err:
        raise InternalConsistencyError(f"Family {family}: {err}") from err
    return newton_polish(family, midpoint(lo, hi))


def airy_zero_magnitudes(count: int) -> tuple[Array, Array]:
    """First `count` zero magnitudes of Ai and Ai', polished by one Newton step."""
    a, ap, *_ = special.ai_zeros(count)
    ai_a, aip_a, _, _ = airy_arrays(a)
    ai_ap, aip_ap, _, _ = airy_arrays(ap)
    a = a - ai_a / aip_a
    ap = ap - aip_ap / (ap * ai_ap)
    return -a, -ap


def build_zero_tables(max_index: int) -> ZeroTables:
    """Build zero tables covering `p = 0..max_index`.

    Parameters
    ----------
    max_index
        Largest canonical zero index.

    Raises
    ------
    DomainError
        If `max_index` is negative.
    InternalConsistencyError
        If a bracket has no sign change or the tables violate their ordering.
    """
    if max_index < 0:
        raise DomainError(f"Zero tables need a non-negative index, got {max_index}.")
    n_airy = max_index // 2 + 3
    a, a_tilde = airy_zero_magnitudes(n_airy)
    n_even, n_odd = max_index // 2 + 1, (max_index + 1) // 2
    c = np.empty(max_index + 1)
    c_tilde = np.empty(max_index + 1)
    c[0::2], c[1::2] = family_zeros("vp", n_even), family_zeros("v", n_odd)
    c_tilde[0::2], c_tilde[1::2] = family_zeros("u", n_even), family_zeros("up", n_odd)
    frak_a = np.empty(2 * n_airy)
    frak_a[0::2], frak_a[1::2] = a_tilde, a
    frak_a = frak_a[: max_index + 2]
    try:
        return ZeroTables(
            a=tuple(a.tolist()),
            a_tilde=tuple(a_tilde.tolist()),
            c=tuple(c.tolist()),
            c_tilde=tuple(c_tilde.tolist()),
            xi=tuple((2 / 3 * c**1.5).tolist()),
            xi_tilde=tuple((2 / 3 * c_tilde**1.5).tolist()),
            frak_a=tuple(frak_a.tolist()),
            max_index=max_index,
        )
    except ValidationError as err:
        raise InternalConsistencyError(f"Zero tables are inconsistent: {err}") from err


def zero_tables(min_index: int = 32) -> ZeroTables:
    """Shared zero tables covering at least `p = 0..min_index`, grown on demand.

    Raises
    ------
    RangeError
        If `min_index` exceeds the configured table limit.
    """
    global _TABLES  # noqa: PLW0603
    limit = get_settings().max_table_index
    if min_index > limit:
        raise RangeError(f"Zero index {min_index} exceeds the table limit {limit}.")
    with _LOCK:
        if _TABLES is None or _TABLES.max_index < min_index:
            size = max(min_index, 2 * _TABLES.max_index if _TABLES else 32)
            size = min(size, limit)
            logger.debug(f"Growing zero tables to p = {size}")
            _TABLES = build_zero_tables(size)
        return _TABLES


def airy_zero(kind: AiryKind, j: int) -> float:
    """The `j`-th zero of Ai or Ai', a negative number.

    Raises
    ------
    DomainError
        If `j < 1`.
    """
    if j < 1:
        raise DomainError(f"Airy zeros are numbered from one, got {j}.")
    tables = zero_tables(2 * j)
    return -(tables.a_at(j) if kind == "Ai" else tables.a_tilde_at(j))


def xi_enclosures(p: int) -> tuple[Interval, Interval]:
    """Enclosures of the phases `xi_p` and `xi~_p`."""
    j = p // 2
    if p % 2 == 0:
        center, radius = 5 * pi / 12 + j * pi, 7 / (12 * (j * pi + pi / 3))
        center_t, radius_t = 7 * pi / 12 + j * pi, 5 / (36 * (j * pi + pi / 2))
    else:
        center, radius = 11 * pi / 12 + j * pi, 5 / (36 * (j * pi + 5 * pi / 6))
        center_t, radius_t = 13 * pi / 12 + j * pi, 7 / (12 * (j + 1) * pi)
    return (center - radius, center + radius), (center_t - radius_t, center_t + radius_t)


def zero_asymptotics(p: int) -> ZeroAsymptotics:
    """Large-index estimates of `c_p`, `c~_p - c_p` and the phase enclosures.

    Raises
    ------
    DomainError
        If `p < 0`.
    """
    if p < 0:
        raise DomainError(f"Zero index must be non-negative, got {p}.")
    xi_interval, xi_tilde_interval = xi_enclosures(p)
    return ZeroAsymptotics(
        p=p,
        c_est=(3 * p * pi / 4) ** (2 / 3),
        gap_est=GAP_CONSTANT * p ** (-1 / 3) if p else float("inf"),
        xi_interval=xi_interval,
        xi_tilde_interval=xi_tilde_interval,
    )


def zero_series(p: int) -> tuple[float, float]:
    """First-order expansions of `c_p` and `c~_p` for `p >= 2`.

    Raises
    ------
    DomainError
        If `p < 2`.
    """
    if p < 2:
        raise DomainError(f"Zero expansions start at p = 2, got {p}.")
    j = p // 2
    base = (3 * j * pi / 2) ** (2 / 3)
    shift, shift_t = (5, 7) if p % 2 == 0 else (11, 13)
    return base * (1 + shift / (18 * j)), base * (1 + shift_t / (18 * j))


def spurious_zero_scan(
    family: ZeroFamily, max_j: int, step: float = 1e-3
) -> tuple[Interval, ...]:
    """Sign changes of a family outside its localization brackets.

    Scans magnitudes up to the end of bracket `max_j` and returns every grid cell with
    a sign change that no bracket covers. An empty result means every zero is the
    bracketed one.
    """
    lo, hi = family_brackets(family, np.arange(max_j + 1, dtype=np.float64))
    grid = np.arange(step, float(hi[-1]) + step, step)
    values = np.sign(family_function(family)(grid))
    cells = np.flatnonzero(values[:-1] * values[1:] <= 0)
    uncovered: list[Interval] = []
    for cell in cells:
        left, right = float(grid[cell]), float(grid[cell + 1])
        if not np.any((left <= hi) & (right >= lo)):
            uncovered.append((left, right))
    return tuple(uncovered)
