# -*- coding: utf-8 -*-

import math

from pydantic import Field, computed_field

from phase_ovm.core.schemas import FrozenArrayPM
from phase_ovm.modules.fock import OperatorMatrix


class BeamSplitterSpec(FrozenArrayPM):
    tau: float = Field(..., description="Coupling angle of exp[iτ(a†b + ab†)].")

    @computed_field  # type: ignore[prop-decorator]
    @property
    def transmissivity(self) -> float:
        return math.cos(2.0 * self.tau) ** 2


class DilationResult(FrozenArrayPM):
    theta: float = Field(...)
    tau: float = Field(...)
    beta: complex = Field(...)
    matrix: OperatorMatrix = Field(...)
    distance_to_q: float = Field(..., ge=0.0)

    @property
    def beta_sin_tau(self) -> float:
        return abs(self.beta) * abs(math.sin(self.tau))


class ConvergenceRow(FrozenArrayPM):
    theta: float = Field(...)
    tau: float = Field(...)
    beta_re: float = Field(...)
    beta_im: float = Field(...)
    distance: float = Field(..., ge=0.0)
    beta_sin_tau: float = Field(..., ge=0.0)


class TwoModeCheck(FrozenArrayPM):
    dim_a: int = Field(..., ge=1)
    dim_b: int = Field(..., ge=1)
    tau: float = Field(...)
    fidelity: float = Field(...)
    number_commutator: float = Field(..., ge=0.0)
    unitarity_defect: float = Field(..., ge=0.0)


__all__ = [
    "BeamSplitterSpec",
    "DilationResult",
    "ConvergenceRow",
    "TwoModeCheck",
]
