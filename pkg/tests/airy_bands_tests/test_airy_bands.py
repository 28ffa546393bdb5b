"""Tests."""


def test_import():
    """Trivial test that the package is importable."""
    import airy_bands  # noqa: F401, PLC0415
