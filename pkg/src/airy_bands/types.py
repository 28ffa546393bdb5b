"""Types."""

from typing import Any, Literal, Protocol, TypeAlias, TypeVar

import numpy as np
import pydantic
from numpy.typing import NDArray
from typing_extensions import TypedDict

Array: TypeAlias = NDArray[np.float64]
"""Float array."""
ArrayLike: TypeAlias = float | Array | list[float] | tuple[float, ...]
"""Anything `numpy.asarray` turns into a float array."""
Interval: TypeAlias = tuple[float, float]
"""Closed interval `(lo, hi)`."""

Regime: TypeAlias = Literal["series", "negative_asymptotic", "positive_asymptotic"]
"""Evaluation regime of the Airy kernel."""
AiryKind: TypeAlias = Literal["Ai", "Aip"]
"""Airy function whose zeros are requested."""
EdgeKind: TypeAlias = Literal["min", "max"]
"""Lower or upper edge of a band."""
EdgeEquation: TypeAlias = Literal["U_prime", "V", "U", "V_prime"]
"""Barrier-top quantity that vanishes at a band edge."""
FloquetSign: TypeAlias = Literal[2, -2]
"""Value of the discriminant at a band edge."""
OracleMethod: TypeAlias = Literal["DOP853", "RK45"]
"""Embedded Runge-Kutta pair used by the Floquet oracle."""


class AnyTypedDict(TypedDict):
    """Base class representing any typed dictionary."""


class Context(AnyTypedDict, total=False):
    """Context."""


class SolverContext(Context, total=False):
    """Tolerances available to validators of solver records."""

    edge_slack: float
    """Absolute slack when checking an edge against its certified bracket."""
    residual_tol: float
    """Largest accepted relative residual of an edge equation."""
    scale_rel: float
    """Relative tolerance of the `c = h^(-2/3)` consistency check."""
    wronskian_tol: float
    """Relative tolerance of Wronskian checks."""
    check_tables: bool
    """Whether zero tables verify ordering and interlacing on validation."""


Context_T_out = TypeVar("Context_T_out", bound=Context, covariant=True)
"""Covariant context type for use when returned from a function."""


class ValidationInfo(pydantic.ValidationInfo, Protocol[Context_T_out]):
    """Pydantic validation info with a guaranteed context."""

    @property
    def context(self) -> Context_T_out | Any: ...  # noqa: D102
