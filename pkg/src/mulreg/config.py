"""Configuration via environment variables, JSON run configs and CLI flags.

Settings are loaded with this priority: CLI flags > config file > env vars > .env file > defaults.
The out_dir prefix determines the storage backend: s3://, gs://, or local filesystem.
"""

from __future__ import annotations

import json
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):  # type: ignore[no-redef]
        def __str__(self) -> str:
            return str(self.value)
from typing import Any, Literal

import fsspec
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from mulreg.errors import ConfigError, NonCubicSampleSize
from mulreg.model import integer_root


class StorageBackendType(StrEnum):
    LOCAL = "local"
    S3 = "s3"
    GCS = "gcs"


class Settings(BaseSettings):
    """Process-level defaults for mulreg.

    Optional:
        out_dir: Root path for all written artifacts (default ".").
            - Local: ./runs or /abs/path
            - S3: s3://bucket-name/prefix
            - GCS: gs://bucket-name/prefix
        workers: Replication worker processes (default 1).
        log_level: Logging verbosity (default INFO).
        nodes_per_axis: Quadrature nodes per coefficient axis (default 64).
        proposal_count: Proposals for the sampling integrator (default 200000).
        refine_passes: Upper bound on zoom passes around the posterior bulk (default 12).
    """

    model_config = SettingsConfigDict(
        env_prefix="MULREG_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )

    out_dir: str = "."
    workers: int = Field(default=1, ge=1)
    log_level: str = "INFO"
    nodes_per_axis: int = Field(default=64, ge=4)
    proposal_count: int = Field(default=200_000, ge=1000)
    refine_passes: int = Field(default=12, ge=1)

    @field_validator("out_dir")
    @classmethod
    def validate_out_dir(cls, v: str) -> str:
        v = v.rstrip("/") or "."
        return v

    @property
    def backend_type(self) -> StorageBackendType:
        return backend_for(self.out_dir)

    def integrator_defaults(self) -> dict[str, Any]:
        return {
            "nodes_per_axis": self.nodes_per_axis,
            "proposal_count": self.proposal_count,
            "refine_passes": self.refine_passes,
        }


def backend_for(path: str) -> StorageBackendType:
    if path.startswith("s3://"):
        return StorageBackendType.S3
    if path.startswith(("gs://", "gcs://")):
        return StorageBackendType.GCS
    return StorageBackendType.LOCAL


class IntegratorConfig(BaseModel):
    """How the local posterior is integrated.

    ``auto`` uses the tensor grid when the coefficient vector has at most
    three entries and self-normalized sampling above that.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    method: Literal["auto", "grid", "sample"] = "auto"
    nodes_per_axis: int = Field(default=64, ge=4)
    proposal_count: int = Field(default=200_000, ge=1000)
    refine_passes: int = Field(default=12, ge=1)
    seed: int = Field(default=0, ge=0)

    def resolve(self, n_coeffs: int) -> Literal["grid", "sample"]:
        if self.method == "auto":
            return "grid" if n_coeffs <= 3 else "sample"
        return self.method


class RunConfig(BaseModel):
    """Validated parameters of one CLI run.

    Every command reads the fields it needs; the rest keep their defaults and
    are still recorded in the run manifest.
    """

    model_config = ConfigDict(extra="forbid")

    function_id: str = "f1"
    n: int = Field(default=100, ge=2)
    d: int = Field(default=1, ge=1)
    b: int = Field(default=1, ge=0)
    q: float = Field(default=1.0, ge=1.0)
    y: tuple[float, ...] = (0.5,)
    h: float | None = Field(default=None, gt=0.0, lt=1.0)
    h_max: float | None = Field(default=None, gt=0.0, lt=1.0)
    mode: Literal["theory", "practical"] = "practical"
    c_thr: float = Field(default=0.12, gt=0.0)
    beta: float | None = Field(default=None, gt=0.0)
    lipschitz: float | None = Field(default=None, gt=0.0)
    a_low: float | None = Field(default=None, gt=0.0)
    m_up: float | None = Field(default=None, gt=0.0)
    integrator: IntegratorConfig = Field(default_factory=IntegratorConfig)
    reps: int = Field(default=1000, ge=2)
    seed: int = Field(default=0, ge=0)
    noise: Literal["uniform", "none"] = "uniform"
    workers: int = Field(default=1, ge=1)
    functions: tuple[str, ...] = ("f1", "f2", "f3")
    ns: tuple[int, ...] | None = None
    n_points: int = Field(default=100, ge=1)
    h_candidates: tuple[float, ...] | None = None
    eps_grid: tuple[float, ...] | None = None
    beta_nominal: float | None = Field(default=None, gt=0.0)
    out_dir: str = "."
    out: str | None = None

    @field_validator("y", mode="before")
    @classmethod
    def parse_point(cls, v: Any) -> Any:
        if isinstance(v, int | float):
            return (float(v),)
        if isinstance(v, str):
            return tuple(float(part) for part in v.split(",") if part.strip())
        return v

    @field_validator("functions", "ns", "h_candidates", "eps_grid", mode="before")
    @classmethod
    def parse_list(cls, v: Any) -> Any:
        if isinstance(v, str):
            return tuple(part.strip() for part in v.split(",") if part.strip())
        return v

    @model_validator(mode="after")
    def check_preconditions(self) -> RunConfig:
        for size in (self.n, *(self.ns or ())):
            try:
                integer_root(size, self.d)
            except NonCubicSampleSize as exc:
                raise ValueError(str(exc)) from exc
        if len(self.y) == 1 and self.d > 1:
            self.y = self.y * self.d
        if len(self.y) != self.d:
            raise ValueError(f"y has {len(self.y)} coordinates but d={self.d}")
        if not all(0.0 < v < 1.0 for v in self.y):
            raise ValueError(f"y={self.y} must lie in the open unit cube")
        if self.a_low is not None and self.m_up is not None and self.a_low >= self.m_up:
            raise ValueError(f"a_low={self.a_low} must be below m_up={self.m_up}")
        return self


def _merge(base: dict[str, Any], layer: dict[str, Any]) -> dict[str, Any]:
    merged = dict(base)
    for key, value in layer.items():
        if value is None:
            continue
        if key == "integrator" and isinstance(value, dict):
            nested = merged.get("integrator") or {}
            if not isinstance(nested, dict):
                raise ConfigError("integrator must be a JSON object")
            merged["integrator"] = {**nested, **{k: v for k, v in value.items() if v is not None}}
        else:
            merged[key] = value
    return merged


def load_config(
    path: str | None,
    overrides: dict[str, Any] | None = None,
    defaults: dict[str, Any] | None = None,
) -> RunConfig:
    """Read a JSON run config, merge CLI flags over it and validate.

    Layers, lowest first: ``defaults`` (environment settings), the file,
    ``overrides`` (CLI flags). Entries that are None mean "not given".
    Nested ``integrator`` mappings are merged key by key.
    """
    data: dict[str, Any] = {}
    if path is not None:
        try:
            with fsspec.open(path, "rb") as f:
                data = json.loads(f.read())
        except FileNotFoundError as exc:
            raise ConfigError(f"config file not found: {path}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"config file {path} must hold a JSON object")

    merged = _merge(_merge(defaults or {}, data), overrides or {})
    try:
        return RunConfig.model_validate(merged)
    except ValidationError as exc:
        raise ConfigError(str(exc)) from exc
