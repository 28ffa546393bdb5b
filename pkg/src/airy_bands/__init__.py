"""Band spectrum of the periodic Airy-Schrödinger operator."""

from __future__ import annotations

from typing import Any, ClassVar, Self

from loguru import logger
from pydantic import BaseModel, ConfigDict

from airy_bands.settings import get_settings
from airy_bands.types import SolverContext

logger.disable("airy_bands")

SIGNIFICANT_DIGITS = 15
"""Significant digits of every printed float."""


def default_context() -> SolverContext:
    """Validation context built from the current settings."""
    settings = get_settings()
    return SolverContext(
        edge_slack=1e-12,
        residual_tol=settings.residual_tol,
        scale_rel=1e-13,
        wronskian_tol=1e-12,
        check_tables=True,
    )


class ContextModel(BaseModel):
    """Frozen model that guarantees a solver context is available during validation."""

    model_config: ClassVar[ConfigDict] = ConfigDict(  # pyright: ignore[reportIncompatibleVariableOverride]
        frozen=True, protected_namespaces=(), arbitrary_types_allowed=True
    )

    def __init__(self, /, **data: Any):
        self.__context_init__(data=data)

    def __context_init__(self, data: dict[str, Any], context: SolverContext | None = None):  # noqa: PLW3201
        self.__pydantic_validator__.validate_python(
            input=data, self_instance=self, context=self.context_get(context)
        )

    @classmethod
    def context_get(cls, context: SolverContext | None = None) -> SolverContext:
        """Merge a caller context over the defaults."""
        return SolverContext(**{**default_context(), **(context or SolverContext())})

    @classmethod
    def model_validate(
        cls,
        obj: Any,
        *,
        strict: bool | None = None,
        from_attributes: bool | None = None,
        context: Any | None = None,
    ) -> Self:
        """Contextualizable model validate."""
        return cls.__pydantic_validator__.validate_python(
            input=obj,
            strict=strict,
            from_attributes=from_attributes,
            context=cls.context_get(context),
        )
