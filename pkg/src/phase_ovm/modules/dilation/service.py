# -*- coding: utf-8 -*-

import math
from typing import List, Optional, Tuple

import numpy as np
from scipy import linalg, special
from pydantic import validate_call, conint, conlist

from phase_ovm.core.constants import (
    HERMITIAN_TOL,
    POSITIVITY_TOL,
    TWO_MODE_MAX_DIM,
    OperatorKindEnum,
)
from phase_ovm.core.exceptions import (
    ContractViolationError,
    DimensionBoundError,
    InternalConsistencyError,
)
from phase_ovm.core.utils import validator
from phase_ovm.logger import logger
from phase_ovm.modules.fock import OperatorMatrix, build_operator, coherent_state
from phase_ovm.modules.phasespace import QuadratureSpec, default_quadrature
from phase_ovm.modules.q_phase import coherent_radial_integral, rho_q_matrix

from .schemas import BeamSplitterSpec, DilationResult, ConvergenceRow, TwoModeCheck


SHIFT_TAIL_TOL = 1e-10

FIXED_BETA_TAUS = (0.2, 0.1, 0.05, 0.025)
FIXED_BETA_SCHEDULE: List[Tuple[float, complex]] = [(_tau, 1.0 + 0j) for _tau in FIXED_BETA_TAUS]
CONSTANT_PRODUCT_SCHEDULE: List[Tuple[float, complex]] = [
    (_tau, complex(0.5 / math.sin(_tau))) for _tau in FIXED_BETA_TAUS
]


@validate_call
def bs_transform_coherent(alpha: complex, beta: complex, tau: float) -> Tuple[complex, complex]:
    """Output amplitudes of Û_τ acting on |α⟩⊗|β⟩.

    Returns:
        Tuple[complex, complex]: (α·cosτ + iβ·sinτ, β·cosτ + iα·sinτ).
    """

    _cos, _sin = math.cos(tau), math.sin(tau)
    return (alpha * _cos + 1j * beta * _sin, beta * _cos + 1j * alpha * _sin)


def _two_mode_generator(dim_a: int, dim_b: int) -> np.ndarray:
    _a = build_operator(OperatorKindEnum.lower, dim_a).entries
    _b = build_operator(OperatorKindEnum.lower, dim_b).entries
    return np.kron(_a.conj().T, _b) + np.kron(_a, _b.conj().T)


@validate_call
def two_mode_bs_oracle(dim_a: conint(ge=2), dim_b: conint(ge=2), tau: float) -> np.ndarray:  # type: ignore
    """Truncated beam-splitter unitary exp[iτ(a†b + ab†)] on the product basis |n_a⟩⊗|n_b⟩.

    Args:
        dim_a (int  , required): Signal truncation.
        dim_b (int  , required): Ancilla truncation.
        tau   (float, required): Coupling angle.

    Raises:
        DimensionBoundError: If `dim_a·dim_b > 4096`.

    Returns:
        ndarray: Unitary of shape (dim_a·dim_b, dim_a·dim_b), index n_a·dim_b + n_b.
    """

    if dim_a * dim_b > TWO_MODE_MAX_DIM:
        raise DimensionBoundError(
            f"Two-mode oracle is limited to {TWO_MODE_MAX_DIM} states, got {dim_a}x{dim_b}!",
            detail=dim_a * dim_b,
        )

    return linalg.expm(1j * tau * _two_mode_generator(dim_a, dim_b))


def _interior(dim_a: int, dim_b: int) -> np.ndarray:
    """Product states whose total photon number stays below both truncations."""

    _total = np.add.outer(np.arange(dim_a), np.arange(dim_b)).reshape(-1)
    return np.flatnonzero(_total < min(dim_a, dim_b))


@validate_call
def predicted_output_check(
    alpha: complex,
    beta: complex,
    tau: float,
    dim_a: conint(ge=2) = 48,  # type: ignore
    dim_b: conint(ge=2) = 48,  # type: ignore
) -> TwoModeCheck:
    """Compare Û_τ(|α⟩⊗|β⟩) from the oracle unitary with the predicted coherent product.

    Also reports ‖[Û, N_a + N_b]‖_max and ‖Û†Û − I‖_max on the interior block.
    """

    _unitary = two_mode_bs_oracle(dim_a, dim_b, tau)
    _input = np.kron(coherent_state(alpha, dim_a).amps, coherent_state(beta, dim_b).amps)
    _alpha_out, _beta_out = bs_transform_coherent(alpha, beta, tau)
    _predicted = np.kron(
        coherent_state(_alpha_out, dim_a).amps, coherent_state(_beta_out, dim_b).amps
    )
    _output = _unitary @ _input
    _fidelity = float(abs(np.vdot(_predicted, _output)) ** 2)

    _total = np.add.outer(np.arange(dim_a), np.arange(dim_b)).reshape(-1).astype(np.float64)
    _commutator = _unitary * (_total[None, :] - _total[:, None])
    _inner = _interior(dim_a, dim_b)
    _number_commutator = float(np.max(np.abs(_commutator[np.ix_(_inner, _inner)])))

    _gram = _unitary.conj().T @ _unitary
    _defect = _gram[np.ix_(_inner, _inner)] - np.eye(_inner.size)
    _unitarity_defect = float(np.max(np.abs(_defect)))

    return TwoModeCheck(
        dim_a=dim_a,
        dim_b=dim_b,
        tau=tau,
        fidelity=_fidelity,
        number_commutator=_number_commutator,
        unitarity_defect=_unitarity_defect,
    )


@validate_call
def pi_tau_beta(
    theta: float,
    tau: float,
    beta: complex,
    dim: conint(ge=1),  # type: ignore
    quad: QuadratureSpec,
) -> DilationResult:
    """Dilated element Π_τ(β) for the angular-delta P-function at angle θ.

    Π = (1/π)∫₀^{r_max} r·|r·e^{iθ}·cosτ + iβ·sinτ⟩⟨same|·dr on the same code
    path as `rho_q_matrix_oracle`, so τ = 0 reproduces it bit for bit.

    Args:
        theta (float         , required): Phase angle in radians.
        tau   (float         , required): Beam-splitter coupling angle.
        beta  (complex       , required): Ancilla coherent amplitude.
        dim   (int           , required): Truncation dimension.
        quad  (QuadratureSpec, required): Radial rule with a finite `r_max`.

    Raises:
        ContractViolationError  : If `r_max` isn't finite or the shift iβ·sinτ has support beyond `dim`.
        InternalConsistencyError: If the result isn't hermitian and positive.

    Returns:
        DilationResult: Matrix and max-norm distance to ρ_Q(θ).
    """

    if not math.isfinite(quad.r_max):
        raise ContractViolationError("Dilation requires a finite radial cutoff!")

    _spec = BeamSplitterSpec(tau=tau)
    _shift = 1j * beta * math.sin(tau)
    _shift_tail = float(special.gammainc(dim, abs(_shift) ** 2))
    if _shift_tail > SHIFT_TAIL_TOL:
        raise ContractViolationError(
            f"Displacement |iβ·sinτ|={abs(_shift):.3f} leaves {_shift_tail:.3e} beyond dim={dim}!",
            detail=_shift_tail,
        )

    _entries = coherent_radial_integral(theta, dim, quad, scale=math.cos(tau), shift=_shift)

    _defect = validator.hermitian_defect(_entries)
    _min_eigenvalue = float(np.linalg.eigvalsh(0.5 * (_entries + _entries.conj().T))[0])
    if (_defect > HERMITIAN_TOL) or (_min_eigenvalue < -POSITIVITY_TOL):
        raise InternalConsistencyError(
            f"Π_τ(β) lost hermiticity or positivity (defect {_defect:.3e}, "
            f"min eigenvalue {_min_eigenvalue:.3e})!",
            detail=_min_eigenvalue,
        )

    _distance = float(np.max(np.abs(_entries - rho_q_matrix(theta, dim).entries)))
    logger.debug(
        f"Π_τ(β) at θ={theta:.4f}, τ={tau:.4f} (T={_spec.transmissivity:.6f}), "
        f"β={beta}: distance {_distance:.3e}."
    )
    return DilationResult(
        theta=theta,
        tau=tau,
        beta=beta,
        matrix=OperatorMatrix(dim=dim, entries=_entries),
        distance_to_q=_distance,
    )


@validate_call
def dilation_convergence(
    theta: float,
    schedule: conlist(Tuple[float, complex], min_length=1),  # type: ignore
    dim: conint(ge=1) = 24,  # type: ignore
    quad: Optional[QuadratureSpec] = None,
) -> List[ConvergenceRow]:
    """Distance of Π_τ(β) to ρ_Q(θ) along a schedule of (τ, β) pairs.

    Args:
        theta    (float                      , required): Phase angle in radians.
        schedule (List[Tuple[float, complex]], required): Nonempty (τ, β) pairs.
        dim      (int                        , optional): Truncation dimension. Defaults to 24.
        quad     (QuadratureSpec             , optional): Radial rule. Defaults to `default_quadrature(dim)`.

    Returns:
        List[ConvergenceRow]: One row per pair with the |β|·sinτ diagnostic.
    """

    _quad = default_quadrature(dim) if quad is None else quad

    _rows = []
    for _tau, _beta in schedule:
        _result = pi_tau_beta(theta, _tau, _beta, dim, _quad)
        _rows.append(
            ConvergenceRow(
                theta=theta,
                tau=_tau,
                beta_re=_beta.real,
                beta_im=_beta.imag,
                distance=_result.distance_to_q,
                beta_sin_tau=_result.beta_sin_tau,
            )
        )

    return _rows


__all__ = [
    "SHIFT_TAIL_TOL",
    "FIXED_BETA_SCHEDULE",
    "CONSTANT_PRODUCT_SCHEDULE",
    "bs_transform_coherent",
    "two_mode_bs_oracle",
    "predicted_output_check",
    "pi_tau_beta",
    "dilation_convergence",
]
