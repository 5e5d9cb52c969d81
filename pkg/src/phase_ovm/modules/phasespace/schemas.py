# -*- coding: utf-8 -*-

from functools import cached_property
from typing import Optional, Tuple
from typing_extensions import Self

import numpy as np
from scipy import special
from pydantic import Field, model_validator

from phase_ovm.core.constants import QuadratureRuleEnum
from phase_ovm.core.schemas import FrozenArrayPM


class PhaseSpaceGrid(FrozenArrayPM):
    """Uniform (x, p) grid; distribution values are densities with respect to dx·dp."""

    x_min: float = Field(...)
    x_max: float = Field(...)
    p_min: float = Field(...)
    p_max: float = Field(...)
    n_x: int = Field(..., ge=3)
    n_p: int = Field(..., ge=3)
    values: Optional[np.ndarray] = Field(default=None)
    leakage: float = Field(default=0.0, ge=0.0)

    @model_validator(mode="after")
    def _check_grid(self) -> Self:
        if (self.x_max <= self.x_min) or (self.p_max <= self.p_min):
            raise ValueError("Grid bounds must satisfy min < max on both axes!")

        if (self.values is not None) and (self.values.shape != (self.n_x, self.n_p)):
            raise ValueError(
                f"`values` shape {self.values.shape} doesn't match ({self.n_x}, {self.n_p})!"
            )

        return self

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_x)

    @property
    def ps(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.n_p)

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.n_x - 1)

    @property
    def dp(self) -> float:
        return (self.p_max - self.p_min) / (self.n_p - 1)

    @property
    def cell_area(self) -> float:
        return self.dx * self.dp

    def mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.xs, self.ps, indexing="ij")

    def mass(self) -> float:
        """Riemann sum of the values times the cell area."""

        if self.values is None:
            raise ValueError("Grid carries no values!")

        return float(np.sum(self.values.real) * self.cell_area)

    def with_values(self, values: np.ndarray, leakage: float = 0.0) -> "PhaseSpaceGrid":
        return self.model_copy(update={"values": values, "leakage": leakage})

    def alpha_density(self) -> np.ndarray:
        """Values as densities with respect to d²α, using dx·dp = 2·d²α."""

        return 2.0 * self.values


class PhaseDistribution(FrozenArrayPM):
    thetas: np.ndarray = Field(...)
    values: np.ndarray = Field(...)
    weights: np.ndarray = Field(...)

    @model_validator(mode="after")
    def _check_lengths(self) -> Self:
        if not (self.thetas.shape == self.values.shape == self.weights.shape):
            raise ValueError("`thetas`, `values` and `weights` must have equal length!")

        return self

    def total(self) -> float:
        """∫P(θ)dθ by the stored quadrature weights."""

        return float(np.sum(self.values * self.weights))

    def min(self) -> float:
        return float(np.min(self.values))

    def argmax(self) -> float:
        return float(self.thetas[int(np.argmax(self.values))])


class QuadratureSpec(FrozenArrayPM):
    rule: QuadratureRuleEnum = Field(default=QuadratureRuleEnum.gauss_legendre)
    nodes: int = Field(default=200, ge=2)
    r_max: float = Field(..., gt=0.0)

    @cached_property
    def nodes_weights(self) -> Tuple[np.ndarray, np.ndarray]:
        """Radial nodes on [0, r_max] and their weights."""

        if self.rule == QuadratureRuleEnum.gauss_legendre:
            _t, _w = special.roots_legendre(self.nodes)
            _r = 0.5 * self.r_max * (_t + 1.0)
            _w = 0.5 * self.r_max * _w
        else:
            _r = np.linspace(0.0, self.r_max, self.nodes)
            _w = np.full(self.nodes, _r[1] - _r[0])
            _w[0] *= 0.5
            _w[-1] *= 0.5

        return _r, _w


__all__ = [
    "PhaseSpaceGrid",
    "PhaseDistribution",
    "QuadratureSpec",
]
