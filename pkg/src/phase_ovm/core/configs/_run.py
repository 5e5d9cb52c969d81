# -*- coding: utf-8 -*-

import os
import math
from typing import Optional
from typing_extensions import Self

from pydantic import Field, constr, model_validator
from pydantic_settings import SettingsConfigDict

from phase_ovm.core.constants import (
    ENV_PREFIX,
    OutputFormatEnum,
    QuadratureRuleEnum,
)
from ._base import BaseConfig, FrozenBaseConfig


class GridConfig(FrozenBaseConfig):
    x_min: float = Field(default=-6.0)
    x_max: float = Field(default=6.0)
    p_min: float = Field(default=-6.0)
    p_max: float = Field(default=6.0)
    n_x: int = Field(default=241, ge=3, le=20001)
    n_p: int = Field(default=241, ge=3, le=20001)

    @model_validator(mode="after")
    def _check_bounds(self) -> Self:
        if (self.x_max <= self.x_min) or (self.p_max <= self.p_min):
            raise ValueError("Grid bounds must satisfy min < max on both axes!")

        return self

    model_config = SettingsConfigDict(env_prefix=f"{ENV_PREFIX}GRID_")


class QuadratureConfig(FrozenBaseConfig):
    rule: QuadratureRuleEnum = Field(default=QuadratureRuleEnum.gauss_legendre)
    nodes: int = Field(default=200, ge=2, le=100000)
    r_max: Optional[float] = Field(default=None, gt=0.0)

    model_config = SettingsConfigDict(env_prefix=f"{ENV_PREFIX}QUAD_")


class RunConfig(BaseConfig):
    dim: int = Field(default=64, ge=2, le=1024)
    grid: GridConfig = Field(default_factory=GridConfig)
    quadrature: QuadratureConfig = Field(default_factory=QuadratureConfig)
    theta_nodes: int = Field(default=720, ge=4, le=1000000)
    output_dir: constr(strip_whitespace=True) = Field(  # type: ignore
        default="./outputs", min_length=1, max_length=1024
    )
    format: OutputFormatEnum = Field(default=OutputFormatEnum.csv)
    threads: Optional[int] = Field(default=None, ge=1, le=512)

    def resolved_r_max(self) -> float:
        """Radial cutoff, `√(2·dim) + 4` unless configured explicitly."""

        if self.quadrature.r_max is not None:
            return self.quadrature.r_max

        return math.sqrt(2.0 * self.dim) + 4.0

    def resolved_threads(self) -> int:
        """Worker count, capped by the `PHASE_OVM_THREADS` environment variable."""

        _cap_env = f"{ENV_PREFIX}THREADS"
        if _cap_env not in os.environ:
            return self.threads or 1

        _cap = max(1, int(os.getenv(_cap_env)))
        return min(self.threads or _cap, _cap)

    model_config = SettingsConfigDict(env_prefix=f"{ENV_PREFIX}RUN_")


class FrozenRunConfig(RunConfig):
    model_config = SettingsConfigDict(frozen=True)


__all__ = [
    "GridConfig",
    "QuadratureConfig",
    "RunConfig",
    "FrozenRunConfig",
]
