"""Types."""

from typing import Self

import numpy as np
from pydantic import Field, model_validator

from airy_bands import ContextModel
from airy_bands.types import EdgeEquation, FloquetSign

MODERATE_ENTRY = 1e3
"""Largest monodromy entry for which the determinant is checked."""


class Monodromy(ContextModel):
    """Transfer matrix over one period, from barrier top to barrier top."""

    energy: float
    """Rescaled energy."""
    matrix: tuple[tuple[float, float], tuple[float, float]]
    """Monodromy matrix acting on `(phi, phi')`."""
    discriminant: float
    """Trace of the matrix."""
    step_count: int
    """Integrator steps over the half period."""
    error_estimate: float
    """Deviation of the determinant from one."""
    tol: float = 1e-10
    """Integration tolerance."""

    @property
    def determinant(self) -> float:
        """Determinant, one up to integration error."""
        return float(np.linalg.det(np.asarray(self.matrix)))

    @model_validator(mode="after")
    def validate_determinant(self) -> Self:
        """Check the determinant when the entries are moderate."""
        size = float(np.max(np.abs(self.matrix)))
        if size <= MODERATE_ENTRY and self.error_estimate > 1e3 * self.tol * max(1.0, size) ** 2:
            raise ValueError(f"Monodromy determinant off by {self.error_estimate:.3e}.")
        return self


class EdgeBracket(ContextModel):
    """Energy interval containing one zero of a factor of `Delta - 2` or `Delta + 2`."""

    lo: float
    """Lower end."""
    hi: float
    """Upper end."""
    sign: FloquetSign
    """Value of the discriminant at the edge."""
    factor: EdgeEquation
    """Vanishing factor, named by the barrier-top quantity it is proportional to."""
    degenerate: bool = False
    """Two crossings fall within the bracket resolution."""


class OracleEdge(ContextModel):
    """Refined band edge from the Floquet discriminant."""

    energy: float
    """Rescaled energy."""
    sign: FloquetSign
    """Value of the discriminant at the edge."""
    factor: EdgeEquation
    """Vanishing factor."""
    degenerate: bool = False
    """Edge came from a merged pair of crossings."""


class DiscriminantScan(ContextModel):
    """Discriminant sampled on an energy grid with bracketed edges."""

    c: float = Field(gt=0)
    """Well depth."""
    grid: tuple[float, ...]
    """Sampled energies."""
    values: tuple[float, ...]
    """Discriminant at each energy."""
    edge_brackets: tuple[EdgeBracket, ...]
    """Brackets of all edges in the grid range, in increasing order."""
