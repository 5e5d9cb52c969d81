# -*- coding: utf-8 -*-

import math
from typing_extensions import Self

import numpy as np
from pydantic import ConfigDict, Field, model_validator

from phase_ovm.core.constants import ParityEnum
from phase_ovm.core.schemas import FrozenArrayPM
from phase_ovm.modules.fock import OperatorMatrix


class WignerPhaseMatrix(FrozenArrayPM):
    theta: float = Field(...)
    dim: int = Field(..., ge=2)
    matrix: OperatorMatrix = Field(...)

    @property
    def entries(self) -> np.ndarray:
        return self.matrix.entries


class KernelFit(FrozenArrayPM):
    constant: float = Field(..., description="Fitted c in K(a,b) = c·(a+b)·Θ(a+b).")
    residual: float = Field(..., ge=0.0)
    spread: float = Field(..., ge=0.0, description="Max relative deviation of entrywise ratios.")
    n_max: int = Field(..., ge=0)
    eigen_constant: float = Field(
        ..., description="Constant of the eigen-equation implied by the fit, 1/c."
    )


class PositionKernel(FrozenArrayPM):
    axis: np.ndarray = Field(...)
    kernel: np.ndarray = Field(...)
    fit: KernelFit = Field(...)

    @model_validator(mode="after")
    def _check_shape(self) -> Self:
        _n = self.axis.shape[0]
        if self.kernel.shape != (_n, _n):
            raise ValueError("Kernel must be square over the axis nodes!")

        return self


class WignerEigenstate(FrozenArrayPM):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True, populate_by_name=True)

    lambda_: float = Field(..., alias="lambda")
    p: float = Field(..., gt=0.0)
    parity: ParityEnum = Field(...)

    @model_validator(mode="after")
    def _check_parity(self) -> Self:
        if self.lambda_ == 0.0:
            raise ValueError("Eigenvalue must be nonzero!")

        _expected = ParityEnum.even if self.lambda_ < 0.0 else ParityEnum.odd
        if self.parity != _expected:
            raise ValueError(f"λ={self.lambda_} requires {_expected.value} parity!")

        return self

    @classmethod
    def from_lambda(cls, lambda_: float) -> "WignerEigenstate":
        return cls(
            **{
                "lambda": lambda_,
                "p": 1.0 / math.sqrt(4.0 * math.pi * abs(lambda_)),
                "parity": ParityEnum.even if lambda_ < 0.0 else ParityEnum.odd,
            }
        )


class EigenfunctionCheck(FrozenArrayPM):
    eigenstate: WignerEigenstate = Field(...)
    de_residual: float = Field(..., ge=0.0)
    kernel_eigenvalue: float = Field(...)
    ratio: float = Field(..., description="Kernel eigenvalue over λ.")
    kernel_residual: float = Field(..., ge=0.0)
    samples: np.ndarray = Field(...)


class CommutatorRow(FrozenArrayPM):
    dim: int = Field(..., ge=8)
    block: int = Field(..., ge=1)
    deviation: float = Field(..., ge=0.0)


class SpectrumParityProfile(FrozenArrayPM):
    eigenvalues: np.ndarray = Field(...)
    parities: np.ndarray = Field(..., description="⟨v|P|v⟩ for each eigenvector.")

    @property
    def agreement(self) -> float:
        """Fraction of eigenvectors with even (odd) support on negative (positive) eigenvalues."""

        _matches = np.sign(self.eigenvalues) == -np.sign(self.parities)
        return float(np.mean(_matches))


__all__ = [
    "WignerPhaseMatrix",
    "KernelFit",
    "PositionKernel",
    "WignerEigenstate",
    "EigenfunctionCheck",
    "CommutatorRow",
    "SpectrumParityProfile",
]
