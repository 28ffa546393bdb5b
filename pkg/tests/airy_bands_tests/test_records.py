"""Records."""

from math import inf, nan

import pytest

from airy_bands.records import (
    apply,
    columns,
    format_float,
    format_row,
    round_significant,
    to_record,
)


@pytest.mark.parametrize(
    ("value", "expected"),
    [(1 / 3, 0.333333333333333), (True, True), ("a", "a"), (inf, None), (nan, None), (2, 2)],
)
def test_round_significant(value, expected):
    """Floats are rounded to 15 significant digits and other leaves pass through."""
    assert round_significant(value) == expected


def test_to_record_nested():
    """Nested leaves are rounded and tuples become lists."""
    record = to_record({"a": (1 / 3, {"b": 2 / 3}), "c": "x"})
    assert record == {"a": [0.333333333333333, {"b": 0.666666666666667}], "c": "x"}


def test_apply_keeps_every_leaf():
    """Every leaf is mapped and none is dropped."""
    record = apply({"a": 1, "b": None, "c": [None, 2]}, leaf_fun=lambda v: v and v + 1)
    assert record == {"a": 2, "b": None, "c": [None, 3]}


def test_apply_does_not_mutate():
    """Applying to a record leaves the original untouched."""
    original = {"a": [1.0, 2.0]}
    apply(original, leaf_fun=lambda v: v * 2)
    assert original == {"a": [1.0, 2.0]}


def test_format_row():
    """CSV cells are empty for missing values."""
    assert format_row({"x": 0.1, "y": None, "z": nan, "k": 3}) == {
        "x": "0.1",
        "y": "",
        "z": "",
        "k": "3",
    }
    assert format_float(1 / 3) == "0.333333333333333"


def test_columns():
    """Columns are the ordered union of row keys."""
    assert columns([{"a": 1}, {"b": 2, "a": 3}]) == ["a", "b"]
