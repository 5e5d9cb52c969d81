# -*- coding: utf-8 -*-

import re
import math
from typing import Union, List

import numpy as np
from scipy import linalg, special
from pydantic import validate_call, conint

from phase_ovm.core.constants import HERMITIAN_TOL, OperatorKindEnum
from phase_ovm.core.exceptions import (
    ContractViolationError,
    IndexOutOfRangeError,
    UsageError,
)
from phase_ovm.core.utils import validator
from phase_ovm.logger import logger

from .schemas import StateVector, OperatorMatrix, Spectrum


_STATE_SPEC_REGEX = re.compile(
    r"^(?P<kind>fock|coherent|cat):(?P<args>[^:]+)$", flags=re.IGNORECASE
)

MatrixLike = Union[OperatorMatrix, np.ndarray]


def as_array(matrix: MatrixLike) -> np.ndarray:
    """Complex square ndarray view of an operator matrix or array."""

    if isinstance(matrix, OperatorMatrix):
        return matrix.entries

    _array = np.asarray(matrix, dtype=np.complex128)
    if not validator.is_square(_array):
        raise ContractViolationError(f"Expected a square matrix, got shape {_array.shape}!")

    return _array


def _check_index(n: int, dim: int) -> None:
    if n >= dim:
        raise IndexOutOfRangeError(
            f"Number-state index {n} is out of range for dim={dim}!", detail=n
        )


@validate_call
def fock_state(n: conint(ge=0), dim: conint(ge=1)) -> StateVector:  # type: ignore
    """Number state |n⟩ truncated to `dim` levels.

    Args:
        n   (int, required): Photon number.
        dim (int, required): Truncation dimension.

    Raises:
        IndexOutOfRangeError: If `n >= dim`.

    Returns:
        StateVector: Unit vector with 1 at index `n`.
    """

    _check_index(n, dim)
    _amps = np.zeros(dim, dtype=np.complex128)
    _amps[n] = 1.0
    return StateVector(dim=dim, amps=_amps)


@validate_call(config={"arbitrary_types_allowed": True})
def coherent_amplitudes(alphas: Union[np.ndarray, List[complex], complex], dim: conint(ge=1)) -> np.ndarray:  # type: ignore
    """Truncated overlaps ⟨n|α⟩ for a batch of amplitudes, without renormalization.

    Magnitudes are built in log space, log|⟨n|α⟩| = −|α|²/2 + n·log|α| − ½·log n!,
    so large |α| doesn't underflow the vacuum factor.

    Args:
        alphas (ndarray, required): Coherent amplitudes, any shape.
        dim    (int    , required): Truncation dimension.

    Returns:
        ndarray: Array of shape `alphas.shape + (dim,)`.
    """

    _alphas = np.asarray(alphas, dtype=np.complex128)
    _shape = _alphas.shape
    _alphas = _alphas.reshape(-1)

    _n = np.arange(dim, dtype=np.float64)
    _abs = np.abs(_alphas)
    _zero = _abs == 0.0
    _log_abs = np.log(np.where(_zero, 1.0, _abs))

    _log_mag = (
        -0.5 * _abs[:, None] ** 2
        + _n[None, :] * _log_abs[:, None]
        - 0.5 * special.gammaln(_n + 1.0)[None, :]
    )
    ## Powers of the unit phasor, exact for real and imaginary α:
    _phases = np.ones((_alphas.size, dim), dtype=np.complex128)
    if dim > 1:
        _phases[:, 1:] = (_alphas / np.where(_zero, 1.0, _abs))[:, None]
    _phases = np.cumprod(_phases, axis=1)

    _amps = np.exp(_log_mag) * _phases

    return _amps.reshape(_shape + (dim,))


def coherent_tail_mass(alpha_abs: float, dim: int) -> float:
    """Probability mass of |α⟩ on number states n ≥ dim (Poisson upper tail)."""

    return float(special.gammainc(dim, alpha_abs**2))


@validate_call
def coherent_state(alpha: complex, dim: conint(ge=1)) -> StateVector:  # type: ignore
    """Coherent state |α⟩, renormalized after truncation.

    Args:
        alpha (complex, required): Coherent amplitude.
        dim   (int    , required): Truncation dimension.

    Returns:
        StateVector: Normalized state carrying the pre-normalization tail mass.
    """

    _raw = coherent_amplitudes(np.array([alpha]), dim)[0]
    _norm2 = float(np.vdot(_raw, _raw).real)
    _tail_mass = coherent_tail_mass(abs(alpha), dim)
    if _tail_mass > 1e-10:
        logger.debug(
            f"Coherent state α={alpha} loses {_tail_mass:.3e} of its mass at dim={dim}."
        )

    return StateVector(
        dim=dim,
        amps=_raw / math.sqrt(_norm2),
        tail_mass=_tail_mass,
        raw_norm2=_norm2,
    )


@validate_call
def even_cat_state(gamma: complex, dim: conint(ge=1)) -> StateVector:  # type: ignore
    """Even cat state ∝ |γ⟩ + |−γ⟩, normalized from its actual inner product.

    The unnormalized norm² equals 2(1 + e^{−2|γ|²}) up to truncation.
    """

    _pair = coherent_amplitudes(np.array([gamma, -gamma]), dim)
    _raw = _pair[0] + _pair[1]
    _norm2 = float(np.vdot(_raw, _raw).real)

    return StateVector(
        dim=dim,
        amps=_raw / math.sqrt(_norm2),
        tail_mass=coherent_tail_mass(abs(gamma), dim),
        raw_norm2=_norm2,
    )


@validate_call
def excited_coherent(z: complex, m: conint(ge=0), dim: conint(ge=1)) -> StateVector:  # type: ignore
    """Unnormalized state exp(z·a†)|m⟩.

    Amplitudes are √(n!/m!)·z^{n−m}/(n−m)! for n ≥ m and zero below `m`.
    """

    _check_index(m, dim)
    _amps = np.zeros(dim, dtype=np.complex128)
    _factors = np.ones(dim - m, dtype=np.complex128)
    _n = np.arange(m + 1, dim, dtype=np.float64)
    _factors[1:] = z * np.sqrt(_n) / (_n - m)
    _amps[m:] = np.cumprod(_factors)

    _norm2 = float(np.vdot(_amps, _amps).real)
    return StateVector(dim=dim, amps=_amps, normalized=False, raw_norm2=_norm2)


@validate_call
def build_operator(kind: OperatorKindEnum, dim: conint(ge=2)) -> OperatorMatrix:  # type: ignore
    """Truncated number-basis matrix of a single-mode operator.

    Conventions: x = (a + a†)/√2, p = (a − a†)/(i√2), parity = diag((−1)^n).

    Args:
        kind (OperatorKindEnum, required): One of lower, raise, number, parity, x, p.
        dim  (int             , required): Truncation dimension.

    Returns:
        OperatorMatrix: Dense complex matrix.
    """

    _n = np.arange(dim, dtype=np.float64)
    _lower = np.diag(np.sqrt(_n[1:]), k=1).astype(np.complex128)

    if kind == OperatorKindEnum.lower:
        _entries = _lower
    elif kind == OperatorKindEnum.raise_:
        _entries = _lower.T.copy()
    elif kind == OperatorKindEnum.number:
        _entries = np.diag(_n).astype(np.complex128)
    elif kind == OperatorKindEnum.parity:
        _entries = np.diag((-1.0) ** _n).astype(np.complex128)
    elif kind == OperatorKindEnum.x:
        _entries = (_lower + _lower.T) / math.sqrt(2.0)
    elif kind == OperatorKindEnum.p:
        _entries = (_lower - _lower.T) / (1j * math.sqrt(2.0))
    else:
        raise ValueError(f"Unsupported operator kind: '{kind}'!")

    return OperatorMatrix(dim=dim, entries=_entries)


def number_phase_factors(dim: int, theta: float) -> np.ndarray:
    _n = np.arange(dim)
    return np.exp(1j * (_n[:, None] - _n[None, :]) * theta)


@validate_call(config={"arbitrary_types_allowed": True})
def rotate_by_number_phase(matrix: MatrixLike, theta: float) -> OperatorMatrix:
    """Conjugate by the number-phase rotation, e^{iNθ}·M·e^{−iNθ}.

    Args:
        matrix (OperatorMatrix, required): Matrix to rotate.
        theta  (float         , required): Rotation angle in radians.

    Returns:
        OperatorMatrix: Entries e^{i(n−m)θ}·M_nm.
    """

    _entries = as_array(matrix)
    _rotated = _entries * number_phase_factors(_entries.shape[0], theta)
    return OperatorMatrix(dim=_entries.shape[0], entries=_rotated)


@validate_call(config={"arbitrary_types_allowed": True})
def hermitian_spectrum(matrix: MatrixLike) -> Spectrum:
    """Full spectrum of a hermitian matrix, eigenvalues ascending.

    Args:
        matrix (OperatorMatrix, required): Hermitian within 1e-10, symmetrized internally.

    Raises:
        ContractViolationError: If the matrix isn't hermitian within tolerance.

    Returns:
        Spectrum: Real eigenvalues with orthonormal eigenvector columns.
    """

    _entries = as_array(matrix)
    _defect = validator.hermitian_defect(_entries)
    if _defect > HERMITIAN_TOL:
        raise ContractViolationError(
            f"Matrix is not hermitian: ‖M − M†‖_max = {_defect:.3e}!", detail=_defect
        )

    _symmetric = 0.5 * (_entries + _entries.conj().T)
    _eigenvalues, _eigenvectors = linalg.eigh(_symmetric)
    return Spectrum(eigenvalues=_eigenvalues, eigenvectors=_eigenvectors)


@validate_call(config={"arbitrary_types_allowed": True})
def position_wavefunctions(dim: conint(ge=1), x: Union[np.ndarray, List[float]]) -> np.ndarray:  # type: ignore
    """Harmonic-oscillator wavefunctions ψ_n(x) = ⟨x|n⟩ for n < dim.

    Uses the normalized three-term recurrence, stable for large n.

    Returns:
        ndarray: Real array of shape `(len(x), dim)`.
    """

    _x = np.asarray(x, dtype=np.float64).reshape(-1)
    _psi = np.empty((_x.size, dim), dtype=np.float64)
    _psi[:, 0] = np.pi**-0.25 * np.exp(-0.5 * _x**2)
    if dim > 1:
        _psi[:, 1] = math.sqrt(2.0) * _x * _psi[:, 0]

    for _n in range(1, dim - 1):
        _psi[:, _n + 1] = (
            math.sqrt(2.0 / (_n + 1)) * _x * _psi[:, _n]
            - math.sqrt(_n / (_n + 1)) * _psi[:, _n - 1]
        )

    return _psi


@validate_call
def density_matrix(state: StateVector) -> OperatorMatrix:
    """Projector |ψ⟩⟨ψ| of a (possibly unnormalized) state."""

    return OperatorMatrix(dim=state.dim, entries=np.outer(state.amps, state.amps.conj()))


@validate_call(config={"arbitrary_types_allowed": True})
def expectation(operator: MatrixLike, rho: MatrixLike) -> complex:
    """Tr[ρ·M]."""

    return complex(np.sum(as_array(rho).T * as_array(operator)))


@validate_call
def parse_state(spec: str, dim: conint(ge=1)) -> StateVector:  # type: ignore
    """Build a state from the `fock:n`, `coherent:re,im` or `cat:re,im` notation.

    Args:
        spec (str, required): State description, for example `coherent:2,0`.
        dim  (int, required): Truncation dimension.

    Raises:
        UsageError: If `spec` doesn't follow the notation.

    Returns:
        StateVector: Normalized state.
    """

    _match = _STATE_SPEC_REGEX.match(spec.strip())
    if not _match:
        raise UsageError(
            f"Invalid state '{spec}', expected 'fock:n', 'coherent:re,im' or 'cat:re,im'!"
        )

    _kind = _match.group("kind").lower()
    _args = [_arg.strip() for _arg in _match.group("args").split(",")]

    if _kind == "fock":
        if len(_args) != 1 or not _args[0].isdigit():
            raise UsageError(f"Invalid Fock state '{spec}', expected 'fock:n'!")
        return fock_state(int(_args[0]), dim)

    if len(_args) not in (1, 2):
        raise UsageError(f"Invalid amplitude in '{spec}', expected 're,im'!")
    try:
        _values = [float(_arg) for _arg in _args]
    except ValueError:
        raise UsageError(f"Invalid amplitude in '{spec}', expected 're,im'!")

    _amplitude = complex(_values[0], _values[1] if len(_values) == 2 else 0.0)
    if _kind == "coherent":
        return coherent_state(_amplitude, dim)

    return even_cat_state(_amplitude, dim)


__all__ = [
    "MatrixLike",
    "as_array",
    "fock_state",
    "coherent_amplitudes",
    "coherent_tail_mass",
    "coherent_state",
    "even_cat_state",
    "excited_coherent",
    "build_operator",
    "number_phase_factors",
    "rotate_by_number_phase",
    "hermitian_spectrum",
    "position_wavefunctions",
    "density_matrix",
    "expectation",
    "parse_state",
]
