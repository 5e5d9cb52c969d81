# -*- coding: utf-8 -*-

from typing import Optional
from typing_extensions import Self

import numpy as np
from pydantic import Field, model_validator

from phase_ovm.core.schemas import FrozenArrayPM


class StateVector(FrozenArrayPM):
    dim: int = Field(..., ge=1)
    amps: np.ndarray = Field(...)
    normalized: bool = Field(default=True)
    tail_mass: float = Field(default=0.0, ge=0.0)
    raw_norm2: Optional[float] = Field(
        default=None,
        description="Squared norm of the amplitudes before numerical normalization.",
    )

    @model_validator(mode="after")
    def _check_amps(self) -> Self:
        if self.amps.shape != (self.dim,):
            raise ValueError(
                f"`amps` shape {self.amps.shape} doesn't match dim={self.dim}!"
            )

        return self

    @property
    def norm2(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)


class OperatorMatrix(FrozenArrayPM):
    dim: int = Field(..., ge=1)
    entries: np.ndarray = Field(...)

    @model_validator(mode="after")
    def _check_entries(self) -> Self:
        if self.entries.shape != (self.dim, self.dim):
            raise ValueError(
                f"`entries` shape {self.entries.shape} doesn't match dim={self.dim}!"
            )

        return self

    @classmethod
    def from_array(cls, entries: np.ndarray) -> "OperatorMatrix":
        _entries = np.asarray(entries, dtype=np.complex128)
        return cls(dim=_entries.shape[0], entries=_entries)


class Spectrum(FrozenArrayPM):
    eigenvalues: np.ndarray = Field(...)
    eigenvectors: np.ndarray = Field(...)

    @model_validator(mode="after")
    def _check_pairs(self) -> Self:
        if self.eigenvectors.shape[1] != self.eigenvalues.shape[0]:
            raise ValueError("Each eigenvalue needs exactly one eigenvector column!")

        return self

    @property
    def min(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def max(self) -> float:
        return float(self.eigenvalues[-1])


__all__ = [
    "StateVector",
    "OperatorMatrix",
    "Spectrum",
]
