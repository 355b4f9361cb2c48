"""Run configuration: tolerances and execution options.

Values come from keyword arguments (the CLI flags) and, optionally, a TOML
file passed with ``--config``. Environment variables are deliberately not
consulted. Numerical services never see ``Settings``; they receive the
frozen :class:`Tolerances` record built from it.
"""

from enum import StrEnum
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
    TomlConfigSettingsSource,
)


class Mode(StrEnum):
    EXACT = "exact"
    FLOAT = "float"
    HYBRID = "hybrid"


class OutputFormat(StrEnum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


class Tolerances(BaseModel):
    """Every numerical threshold used by the spectra/theorem/search services."""

    model_config = ConfigDict(frozen=True)

    # Eigenvalues closer than this are the same eigenvalue.
    group_tol: float = Field(1e-7, gt=0)
    interlace_tol: float = Field(1e-8, gt=0)
    # Reconstruction / orthonormality bound for the eigensolver output.
    residual_tol: float = Field(1e-9, gt=0)
    # Slack at the 1/2 end of the eigenvalue-free interval.
    gap_edge_tol: float = Field(1e-9, gt=0)
    # |x(v)| below this (unit x) counts as a zero component.
    zero_tol: float = Field(1e-7, gt=0)
    ambiguity_factor: float = Field(3.0, gt=1)
    jacobi_tol: float = Field(1e-12, gt=0)
    max_sweeps: int = Field(100, ge=1)


class Settings(BaseSettings):
    """chainlab run settings."""

    group_tol: float = Field(1e-7, gt=0)
    interlace_tol: float = Field(1e-8, gt=0)
    residual_tol: float = Field(1e-9, gt=0)
    gap_edge_tol: float = Field(1e-9, gt=0)
    zero_tol: float = Field(1e-7, gt=0)
    ambiguity_factor: float = Field(3.0, gt=1)
    jacobi_tol: float = Field(1e-12, gt=0)
    max_sweeps: int = Field(100, ge=1)

    workers: int = Field(1, ge=1)
    mode: Mode = Mode.HYBRID
    output_format: OutputFormat = OutputFormat.JSON

    model_config = SettingsConfigDict(extra="ignore")

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        # Keyword values only; see load_settings for the TOML layer.
        return (init_settings,)

    def tolerances(self) -> Tolerances:
        return Tolerances(**self.model_dump(include=set(Tolerances.model_fields)))


def load_settings(config_file: Path | None = None, **overrides) -> Settings:
    """Build settings from an optional TOML file plus explicit overrides.

    ``None`` overrides are dropped so unset CLI flags fall through to the
    file value, then to the field default.
    """
    values: dict = {}
    if config_file is not None:
        values.update(TomlConfigSettingsSource(Settings, toml_file=config_file)())
    values.update({key: value for key, value in overrides.items() if value is not None})
    return Settings(**values)
