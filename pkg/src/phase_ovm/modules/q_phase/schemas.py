# -*- coding: utf-8 -*-

import numpy as np
from pydantic import Field

from phase_ovm.core.schemas import FrozenArrayPM
from phase_ovm.modules.fock import OperatorMatrix


class QPhaseMatrix(FrozenArrayPM):
    theta: float = Field(...)
    dim: int = Field(..., ge=1)
    matrix: OperatorMatrix = Field(...)

    @property
    def entries(self) -> np.ndarray:
        return self.matrix.entries


class CoherentDiscrepancyRow(FrozenArrayPM):
    theta: float = Field(...)
    corrected: float = Field(...)
    printed_re: float = Field(...)
    printed_im: float = Field(...)
    quadrature: float = Field(...)


__all__ = ["QPhaseMatrix", "CoherentDiscrepancyRow"]
