# -*- coding: utf-8 -*-

from typing import Union

import numpy as np
from pydantic import validate_call


@validate_call
def is_truthy(val: Union[str, bool, int, float, None]) -> bool:
    """Check if the value is truthy.

    Args:
        val (Union[str, bool, int, float, None], required): Value to check.

    Raises:
        ValueError: If `val` argument type is string and value is invalid.

    Returns:
        bool: True if the value is truthy, False otherwise.
    """

    if isinstance(val, str):
        val = val.strip().lower()

        if val in ["0", "false", "f", "no", "n", "off"]:
            return False
        elif val in ["1", "true", "t", "yes", "y", "on"]:
            return True
        else:
            raise ValueError(f"`val` argument value is invalid: '{val}'!")

    return bool(val)


def hermitian_defect(matrix: np.ndarray) -> float:
    """Max-norm distance between a square matrix and its conjugate transpose."""

    if matrix.size == 0:
        return 0.0
    return float(np.max(np.abs(matrix - matrix.conj().T)))


def is_square(matrix: np.ndarray) -> bool:
    return (matrix.ndim == 2) and (matrix.shape[0] == matrix.shape[1])


def is_uniform(axis: np.ndarray, rtol: float = 1e-9) -> bool:
    """Check that a 1-D axis is strictly increasing with constant spacing."""

    if axis.ndim != 1 or axis.size < 2:
        return False

    _steps = np.diff(axis)
    if np.any(_steps <= 0.0):
        return False

    return bool(np.max(np.abs(_steps - _steps[0])) <= rtol * max(1.0, abs(_steps[0])))


__all__ = [
    "is_truthy",
    "hermitian_defect",
    "is_square",
    "is_uniform",
]
