"""Record functions for machine-readable outputs."""

from collections.abc import Callable, Iterable, Mapping, Sequence
from copy import copy
from math import isfinite
from typing import Any

from pydantic import BaseModel

from airy_bands import SIGNIFICANT_DIGITS
from airy_bands.records.types import K, Leaf, MutableNode_T, Row, V


def is_node(value: Any) -> bool:
    """Check whether a value is a mapping or a non-string sequence."""
    return isinstance(value, Mapping) or (
        isinstance(value, Sequence) and not isinstance(value, str | bytes)
    )


def apply(
    mapping: Mapping[K, V], leaf_fun: Callable[[Leaf], Any] = lambda v: v
) -> dict[K, V]:
    """Apply a function to leaves of a nested record."""
    return update(
        mapping=dict(copy(mapping)),  # pyright: ignore[reportArgumentType]
        leaf_fun=leaf_fun,
    )


def update(
    mapping: MutableNode_T, leaf_fun: Callable[[Leaf], Any] = lambda v: v
) -> MutableNode_T:
    """Update in-place by applying a function to leaves of mappings and lists."""
    # ? Copy nodes on entry, tuples become lists so they can be updated in place
    items = (
        list(mapping.items()) if isinstance(mapping, Mapping) else enumerate(mapping)
    )
    for key, value in items:
        if is_node(value):
            node = dict(value) if isinstance(value, Mapping) else list(value)
            mapping[key] = update(mapping=node, leaf_fun=leaf_fun)  # pyright: ignore[reportIndexIssue, reportArgumentType]
            continue
        mapping[key] = leaf_fun(value)  # pyright: ignore[reportIndexIssue, reportArgumentType]
    return mapping


def round_significant(value: Leaf, digits: int = SIGNIFICANT_DIGITS) -> Leaf:
    """Round floats to significant digits, leaving other leaves untouched."""
    if isinstance(value, bool) or not isinstance(value, float):
        return value
    if not isfinite(value):
        return None
    return float(format(value, f".{digits}g"))


def to_record(model: BaseModel | Mapping[str, Any]) -> dict[str, Any]:
    """Dump a model or mapping with floats rounded for printing."""
    data = model.model_dump(mode="python") if isinstance(model, BaseModel) else model
    return apply(data, leaf_fun=round_significant)


def format_float(value: float | None) -> str:
    """Format a float for CSV output, empty for missing or non-finite values."""
    if value is None or not isfinite(value):
        return ""
    return format(value, f".{SIGNIFICANT_DIGITS}g")


def format_row(row: Row) -> dict[str, str]:
    """Format one CSV row."""
    return {
        k: format_float(v) if isinstance(v, float) or v is None else str(v)
        for k, v in row.items()
    }


def columns(rows: Iterable[Row]) -> list[str]:
    """Ordered union of row keys."""
    keys: dict[str, None] = {}
    for row in rows:
        keys.update(dict.fromkeys(row))
    return list(keys)
