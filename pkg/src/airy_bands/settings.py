"""Settings."""

from functools import cache

from pydantic import Field
from pydantic_settings import (
    BaseSettings,
    PyprojectTomlConfigSettingsSource,
    SettingsConfigDict,
)

from airy_bands.types import OracleMethod


class Settings(BaseSettings):
    """Numerical settings from init, `AIRY_BANDS_*`, `.env` and `[tool.airy_bands]`."""

    model_config = SettingsConfigDict(
        env_prefix="AIRY_BANDS_",
        env_file=".env",
        extra="ignore",
        frozen=True,
        pyproject_toml_table_header=("tool", "airy_bands"),
    )

    tol: float = Field(default=1e-10, ge=1e-13, le=1e-6)
    """Default tolerance of the command line and the Floquet oracle."""
    oracle_method: OracleMethod = "DOP853"
    """Embedded Runge-Kutta pair of the Floquet oracle."""
    oracle_samples: int = Field(default=400, ge=16)
    """Default number of energies in a discriminant scan."""
    tau: float = Field(default=0.01, gt=0)
    """Slack added to Airy zeros in semiclassical validity bounds."""
    pole_guard: float = Field(default=1e-12, gt=0)
    """Distance to a pole below which ratio functions refuse to evaluate."""
    collapse_rel: float = Field(default=1e-14, gt=0)
    """Relative width, in units of `c`, below which a band counts as collapsed."""
    excluded_set_rel: float = Field(default=1e-9, gt=0)
    """Distance to a difference of `c~` zeros that triggers a diagnostic."""
    residual_tol: float = Field(default=1e-9, gt=0)
    """Largest accepted relative residual of an edge equation."""
    scan_points: int = Field(default=4096, ge=64)
    """Grid size used to localize edges above the potential range."""
    max_window_doublings: int = Field(default=8, ge=0)
    """How often the above-range search window may be doubled."""
    max_table_index: int = Field(default=200_000, ge=16)
    """Largest zero index a table may be grown to."""
    log_level: str = "WARNING"
    """Level of the command line log sink."""

    @classmethod
    def settings_customise_sources(  # pyright: ignore[reportIncompatibleMethodOverride]
        cls, settings_cls, init_settings, env_settings, dotenv_settings, **_
    ):
        """Add `pyproject.toml` as the lowest-priority source."""
        return (
            init_settings,
            env_settings,
            dotenv_settings,
            PyprojectTomlConfigSettingsSource(settings_cls),
        )


@cache
def get_settings() -> Settings:
    """Get the process-wide settings."""
    return Settings()
