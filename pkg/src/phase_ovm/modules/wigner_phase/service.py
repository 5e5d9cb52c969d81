# -*- coding: utf-8 -*-

import math
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import integrate, special
from pydantic import validate_call, conint

from phase_ovm.core.constants import (
    IMAG_RESIDUE_TOL,
    KERNEL_CONSTANT,
    KERNEL_MATCH_TOL,
    TAIL_TOL,
    TRACE_TOL,
    TWO_PI,
    OperatorKindEnum,
)
from phase_ovm.core.exceptions import ContractViolationError, ConventionMismatchError
from phase_ovm.core.utils import validator
from phase_ovm.logger import logger
from phase_ovm.modules.fock import (
    MatrixLike,
    OperatorMatrix,
    as_array,
    build_operator,
    hermitian_spectrum,
    number_phase_factors,
    position_wavefunctions,
)
from phase_ovm.modules.phasespace import (
    PhaseDistribution,
    QuadratureSpec,
    cross_wigner_symbols,
    periodic_weights,
)

from .schemas import (
    WignerPhaseMatrix,
    KernelFit,
    PositionKernel,
    WignerEigenstate,
    EigenfunctionCheck,
    CommutatorRow,
    SpectrumParityProfile,
)


## Central second-derivative stencil, eighth order:
_D2_STENCIL = (-205.0 / 72.0, 8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0)
_ABEL_EPSILONS = (0.1, 0.05, 0.025)
_KERNEL_FIT_N_MAX = 8


@lru_cache(maxsize=16)
def _rho_w_base(dim: int) -> np.ndarray:
    """⟨n|ρ_W(0)|m⟩ from exact integer sums; see docs/pages/research/wigner-phase-reduction.md."""

    _even = [1] * (dim + 1)
    _odd = [1] * (dim + 1)
    for _h in range(1, dim + 1):
        _even[_h] = _even[_h - 1] * 2 * _h
        _odd[_h] = _odd[_h - 1] * (2 * _h - 1)

    _log_fact = [math.lgamma(_n + 1.0) for _n in range(dim)]
    _odd_scale = math.sqrt(math.pi / 2.0)

    _base = np.zeros((dim, dim), dtype=np.float64)
    for _n in range(dim):
        for _m in range(_n, dim):
            _total = 0
            _is_even = (_n + _m) % 2 == 0
            _h0 = (_n + _m) // 2 if _is_even else (_n + _m + 1) // 2
            _table = _even if _is_even else _odd
            for _k in range(_n + 1):
                _term = math.comb(_n, _k) * math.perm(_m, _k) * _table[_h0 - _k]
                _total += -_term if (_k % 2) else _term

            if _total == 0:
                continue

            _value = math.exp(math.log(abs(_total)) - 0.5 * (_log_fact[_n] + _log_fact[_m]))
            _value = math.copysign(_value, _total) / TWO_PI
            if not _is_even:
                _value *= _odd_scale

            _base[_n, _m] = _value
            _base[_m, _n] = _value

    _base.flags.writeable = False
    return _base


@validate_call
def rho_w_matrix(theta: float, dim: conint(ge=2)) -> WignerPhaseMatrix:  # type: ignore
    """Wigner phase operator ρ_W(θ) in the number basis.

    Args:
        theta (float, required): Phase angle in radians.
        dim   (int  , required): Truncation dimension.

    Returns:
        WignerPhaseMatrix: Hermitian, not positive, with e^{i(n−m)θ} covariance.
    """

    _entries = _rho_w_base(dim) * number_phase_factors(dim, theta)
    return WignerPhaseMatrix(
        theta=theta, dim=dim, matrix=OperatorMatrix(dim=dim, entries=_entries)
    )


def _check_radial_tail(edge: np.ndarray, scale: float, quad: QuadratureSpec) -> None:
    _tail = float(np.max(np.abs(edge))) * quad.r_max
    if _tail > TAIL_TOL * max(scale, 1e-300):
        raise ContractViolationError(
            f"Radial cutoff r_max={quad.r_max:.3f} doesn't cover the support "
            f"(tail ratio {_tail / scale:.3e})!",
            detail=_tail,
        )


@validate_call
def rho_w_matrix_oracle(theta: float, dim: conint(ge=2), quad: QuadratureSpec) -> WignerPhaseMatrix:  # type: ignore
    """ρ_W(θ) by radial quadrature of Moyal cross-Wigner symbols.

    M_nm(θ) = ∫₀^{r_max} W_{|m⟩⟨n|}(r·cosθ, r·sinθ)·r·dr. Slow; for cross-checks.
    """

    _r, _w = quad.nodes_weights
    _cos, _sin = math.cos(theta), math.sin(theta)

    _entries = np.zeros((dim, dim), dtype=np.complex128)
    _scale = 0.0
    for _rk, _wk in zip(_r, _w):
        _symbols = cross_wigner_symbols(dim, _rk * _cos, _rk * _sin)
        _entries += (_wk * _rk) * _symbols.T
        _scale = max(_scale, float(np.max(np.abs(_symbols))) * _rk)

    _edge = cross_wigner_symbols(dim, quad.r_max * _cos, quad.r_max * _sin)
    _check_radial_tail(_edge, _scale, quad)

    logger.debug(f"Built quadrature ρ_W oracle at θ={theta:.6f}, dim={dim}.")
    return WignerPhaseMatrix(
        theta=theta, dim=dim, matrix=OperatorMatrix(dim=dim, entries=_entries)
    )


def trace_phase_distribution(
    rho: np.ndarray, base: np.ndarray, thetas: np.ndarray
) -> PhaseDistribution:
    """P(θ) = Tr[ρ·M(θ)] for M(θ) = e^{iNθ}·M(0)·e^{−iNθ}, summed by number difference."""

    _dim = rho.shape[0]
    _trace = complex(np.trace(rho))
    if abs(_trace - 1.0) > TRACE_TOL:
        raise ContractViolationError(
            f"Density matrix trace is {_trace.real:.12f}, expected 1!", detail=_trace.real
        )

    _products = rho.T * base[:_dim, :_dim]
    _diffs = np.arange(-(_dim - 1), _dim)
    _coeffs = np.array(
        [np.sum(np.diagonal(_products, offset=-_d)) for _d in _diffs], dtype=np.complex128
    )

    _values = np.exp(1j * np.outer(thetas, _diffs)) @ _coeffs
    _imag = float(np.max(np.abs(_values.imag))) if _values.size else 0.0
    if _imag > IMAG_RESIDUE_TOL:
        raise ContractViolationError(
            f"Phase distribution has imaginary residue {_imag:.3e}!", detail=_imag
        )

    return PhaseDistribution(
        thetas=thetas, values=np.ascontiguousarray(_values.real), weights=periodic_weights(thetas)
    )


@validate_call(config={"arbitrary_types_allowed": True})
def wigner_phase_distribution(
    rho: MatrixLike, thetas: Union[np.ndarray, List[float]]
) -> PhaseDistribution:
    """Wigner phase distribution P^W(θ) = Tr[ρ·ρ_W(θ)].

    Raises:
        ContractViolationError: If ρ has no unit trace or the result has an imaginary residue above 1e-8.
    """

    _rho = as_array(rho)
    _thetas = np.asarray(thetas, dtype=np.float64).reshape(-1)
    return trace_phase_distribution(_rho, _rho_w_base(_rho.shape[0]), _thetas)


@validate_call
def wigner_completeness(dim: conint(ge=2), theta_nodes: Optional[conint(ge=1)] = None) -> np.ndarray:  # type: ignore
    """∫₀^{2π} ρ_W(θ)dθ, analytically or by the periodic trapezoid rule on `theta_nodes` angles."""

    _base = _rho_w_base(dim)
    if theta_nodes is None:
        return np.diag(TWO_PI * np.diag(_base)).astype(np.complex128)

    _total = np.zeros((dim, dim), dtype=np.complex128)
    for _k in range(theta_nodes):
        _total += number_phase_factors(dim, TWO_PI * _k / theta_nodes)
    return _total * _base * (TWO_PI / theta_nodes)


def _kernel_overlaps(n_max: int, half_width: float = 12.0) -> np.ndarray:
    """I_nm = ∫∫ψ_n(a)·(a+b)·Θ(a+b)·ψ_m(b)da·db in rotated coordinates s, t."""

    _t, _ws = special.roots_legendre(200)
    _s = 0.5 * half_width * (_t + 1.0)
    _ws = 0.5 * half_width * _ws

    _tt = np.linspace(-half_width, half_width, 1201)
    _wt = np.full(_tt.size, _tt[1] - _tt[0])
    _wt[0] *= 0.5
    _wt[-1] *= 0.5

    _overlaps = np.zeros((n_max + 1, n_max + 1), dtype=np.float64)
    for _sk, _wk in zip(_s, _ws):
        _psi_a = position_wavefunctions(n_max + 1, (_sk + _tt) / math.sqrt(2.0))
        _psi_b = position_wavefunctions(n_max + 1, (_sk - _tt) / math.sqrt(2.0))
        _overlaps += (_wk * math.sqrt(2.0) * _sk) * ((_psi_a.T * _wt[None, :]) @ _psi_b)

    return _overlaps


@lru_cache(maxsize=4)
def _fit_kernel_constant(n_max: int) -> KernelFit:
    _overlaps = _kernel_overlaps(n_max)
    _target = _rho_w_base(n_max + 1)

    _constant = float(np.sum(_overlaps * _target) / np.sum(_overlaps**2))
    _residual = float(np.max(np.abs(_target - _constant * _overlaps)))

    _mask = np.abs(_overlaps) >= 1e-3 * np.max(np.abs(_overlaps))
    _ratios = _target[_mask] / _overlaps[_mask]
    _spread = float(np.max(np.abs(_ratios - _constant)) / abs(_constant))

    return KernelFit(
        constant=_constant,
        residual=_residual,
        spread=_spread,
        n_max=n_max,
        eigen_constant=1.0 / _constant,
    )


@validate_call
def fit_kernel_constant(n_max: conint(ge=1, le=40) = _KERNEL_FIT_N_MAX) -> KernelFit:  # type: ignore
    """Fit c in K(a,b) = c·(a+b)·Θ(a+b) against ρ_W(0) on number states n, m ≤ `n_max`.

    Raises:
        ConventionMismatchError: If the best fit leaves a residual above 1e-4.
    """

    _fit = _fit_kernel_constant(n_max)
    if _fit.residual > KERNEL_MATCH_TOL:
        raise ConventionMismatchError(
            f"Position kernel doesn't reproduce ρ_W(0): residual {_fit.residual:.3e}!",
            detail=_fit.residual,
        )

    logger.debug(
        f"Kernel constant c={_fit.constant:.12f} (1/c={_fit.eigen_constant:.9f}), "
        f"spread={_fit.spread:.3e}."
    )
    return _fit


def _check_axis(axis: np.ndarray, min_nodes: int) -> None:
    if axis.size < min_nodes:
        raise ContractViolationError(f"Axis needs at least {min_nodes} nodes, got {axis.size}!")
    if not validator.is_uniform(axis):
        raise ContractViolationError("Axis must be uniformly spaced and increasing!")
    if np.max(np.abs(axis + axis[::-1])) > 1e-9 * max(1.0, float(np.max(np.abs(axis)))):
        raise ContractViolationError("Axis must be symmetric about the origin!")


@validate_call(config={"arbitrary_types_allowed": True})
def position_kernel_w0(axis: Union[np.ndarray, List[float]]) -> PositionKernel:
    """Position-space kernel K(a,b) = c·(a+b)·Θ(a+b) of ρ_W(0) on a symmetric axis.

    Args:
        axis (ndarray, required): Symmetric uniform axis with at least 200 nodes.

    Raises:
        ContractViolationError : If the axis isn't symmetric, uniform or large enough.
        ConventionMismatchError: If the fitted kernel doesn't reproduce ρ_W(0).

    Returns:
        PositionKernel: Kernel matrix with the fitted constant.
    """

    _axis = np.asarray(axis, dtype=np.float64).reshape(-1)
    _check_axis(_axis, 200)

    _fit = fit_kernel_constant()
    _sum = _axis[:, None] + _axis[None, :]
    _kernel = _fit.constant * np.where(_sum > 0.0, _sum, 0.0)
    return PositionKernel(axis=_axis, kernel=_kernel, fit=_fit)


def _branch(eigenstate: WignerEigenstate):
    if eigenstate.lambda_ < 0.0:
        return np.cos, "cos"
    return np.sin, "sin"


def _second_derivative(values: np.ndarray, step: float) -> np.ndarray:
    _half = len(_D2_STENCIL) - 1
    _inner = values[_half:-_half] * _D2_STENCIL[0]
    for _j in range(1, _half + 1):
        _inner = _inner + _D2_STENCIL[_j] * (
            values[_half + _j : values.size - _half + _j] + values[_half - _j : values.size - _half - _j]
        )
    return _inner / step**2


def _kernel_action(a: float, p: float, weight: str, constant: float, epsilon: float) -> float:
    _value, _ = integrate.quad(
        lambda b: constant * (a + b) * math.exp(-epsilon * b),
        -a,
        np.inf,
        weight=weight,
        wvar=p,
        limlst=200,
        limit=200,
        epsabs=1e-12,
    )
    return _value


def _abel_limit(a: float, p: float, weight: str, constant: float) -> float:
    """ε → 0 limit of the damped kernel action by two Richardson steps."""

    _f = [_kernel_action(a, p, weight, constant, _eps) for _eps in _ABEL_EPSILONS]
    _r_coarse = 2.0 * _f[1] - _f[0]
    _r_fine = 2.0 * _f[2] - _f[1]
    return (4.0 * _r_fine - _r_coarse) / 3.0


@validate_call(config={"arbitrary_types_allowed": True})
def eigenfunction_residual(
    lambda_: float,
    axis: Union[np.ndarray, List[float]],
    samples: Optional[Union[np.ndarray, List[float]]] = None,
) -> EigenfunctionCheck:
    """Residuals of the eigenfunction f_λ (cos for λ < 0, sin for λ > 0, p = 1/√(4π|λ|)).

    The first residual is max |4πλ·f″(x) − f(−x)| on the axis interior with an
    eighth-order finite-difference f″. The second fits the eigenvalue λ′ of
    the position kernel acting on f, with the improper integral regularized by
    e^{−εb} and extrapolated to ε → 0.

    Args:
        lambda_ (float  , required): Nonzero eigenvalue.
        axis    (ndarray, required): Uniform symmetric axis for the differential residual.
        samples (ndarray, optional): Points for the kernel action. Defaults to 9 points on [−2, 2].

    Raises:
        ContractViolationError: If `lambda_` is zero or the axis is unsuitable.

    Returns:
        EigenfunctionCheck: Both residuals and the fitted kernel eigenvalue.
    """

    if lambda_ == 0.0:
        raise ContractViolationError("Eigenvalue must be nonzero!")

    _axis = np.asarray(axis, dtype=np.float64).reshape(-1)
    _check_axis(_axis, 2 * len(_D2_STENCIL) + 1)
    _samples = np.linspace(-2.0, 2.0, 9) if samples is None else np.asarray(samples, dtype=np.float64).reshape(-1)

    _eigenstate = WignerEigenstate.from_lambda(lambda_)
    _p = _eigenstate.p
    _func, _weight = _branch(_eigenstate)

    _step = float(_axis[1] - _axis[0])
    _f = _func(_p * _axis)
    _half = len(_D2_STENCIL) - 1
    _interior = _axis[_half:-_half]
    _de = 4.0 * math.pi * lambda_ * _second_derivative(_f, _step) - _func(-_p * _interior)
    _de_residual = float(np.max(np.abs(_de)))

    _fit = fit_kernel_constant()
    _action = np.array([_abel_limit(_a, _p, _weight, _fit.constant) for _a in _samples])
    _f_samples = _func(_p * _samples)
    _kernel_eigenvalue = float(np.dot(_action, _f_samples) / np.dot(_f_samples, _f_samples))
    _kernel_residual = float(
        np.linalg.norm(_action - _kernel_eigenvalue * _f_samples) / np.linalg.norm(_f_samples)
    )

    return EigenfunctionCheck(
        eigenstate=_eigenstate,
        de_residual=_de_residual,
        kernel_eigenvalue=_kernel_eigenvalue,
        ratio=_kernel_eigenvalue / lambda_,
        kernel_residual=_kernel_residual,
        samples=_samples,
    )


def eigen_ratio_spread(checks: Sequence[EigenfunctionCheck]) -> float:
    """(max − min)/|mean| of the kernel eigenvalue ratios λ′/λ over several checks.

    Raises:
        ContractViolationError: If `checks` is empty.
    """

    if not checks:
        raise ContractViolationError("Ratio spread needs at least one eigenfunction check!")

    _ratios = np.array([_check.ratio for _check in checks])
    return float((np.max(_ratios) - np.min(_ratios)) / abs(np.mean(_ratios)))


@validate_call
def eta_w_matrix(dim: conint(ge=8)) -> OperatorMatrix:  # type: ignore
    """Conjugate operator η_W(0) = −π(p³x + xp³)P as a product of truncated matrices.

    Only entries with n, m ≤ dim − 4 are free of truncation effects.
    """

    _x = build_operator(OperatorKindEnum.x, dim).entries
    _p = build_operator(OperatorKindEnum.p, dim).entries
    _parity = build_operator(OperatorKindEnum.parity, dim).entries

    _p3 = _p @ _p @ _p
    _entries = -math.pi * (_p3 @ _x + _x @ _p3) @ _parity
    return OperatorMatrix(dim=dim, entries=_entries)


## Letter coefficients of x = (a + a†)/√2 and p = −i(a − a†)/√2:
_X_LETTERS = {"a": 1.0 / math.sqrt(2.0), "d": 1.0 / math.sqrt(2.0)}
_P_LETTERS = {"a": -1j / math.sqrt(2.0), "d": 1j / math.sqrt(2.0)}


@lru_cache(maxsize=None)
def _normal_order(word: str) -> Tuple[Tuple[Tuple[int, int], int], ...]:
    """Expand a word in a ("a") and a† ("d") into Σ coeff·a†^j·a^k using a·a† = a†·a + 1."""

    _swap = word.find("ad")
    if _swap < 0:
        return (((word.count("d"), word.count("a")), 1),)

    _terms: Dict[Tuple[int, int], int] = {}
    for _sub in (word[:_swap] + "da" + word[_swap + 2 :], word[:_swap] + word[_swap + 2 :]):
        for _key, _coeff in _normal_order(_sub):
            _terms[_key] = _terms.get(_key, 0) + _coeff

    return tuple(sorted(_terms.items()))


def _normal_ordered_form(factors: Sequence[Dict[str, complex]]) -> Dict[Tuple[int, int], complex]:
    _words: Dict[str, complex] = {"": 1.0}
    for _factor in factors:
        _words = {
            _word + _letter: _coeff * _letter_coeff
            for _word, _coeff in _words.items()
            for _letter, _letter_coeff in _factor.items()
        }

    _form: Dict[Tuple[int, int], complex] = {}
    for _word, _coeff in _words.items():
        for _key, _count in _normal_order(_word):
            _form[_key] = _form.get(_key, 0.0) + _coeff * _count
    return _form


def _normal_element(j: int, k: int, n: int, m: int) -> float:
    """⟨n|a†^j·a^k|m⟩."""

    if (k > m) or (n != m - k + j):
        return 0.0
    return math.sqrt(math.perm(m, k) * math.perm(n, j))


@validate_call
def eta_w_element(n: conint(ge=0), m: conint(ge=0)) -> complex:  # type: ignore
    """⟨n|η_W(0)|m⟩ from the normal-ordered expansion of −π(p³x + xp³)P, untruncated."""

    _form = _normal_ordered_form([_P_LETTERS, _P_LETTERS, _P_LETTERS, _X_LETTERS])
    for _key, _coeff in _normal_ordered_form(
        [_X_LETTERS, _P_LETTERS, _P_LETTERS, _P_LETTERS]
    ).items():
        _form[_key] = _form.get(_key, 0.0) + _coeff

    _value = sum(_coeff * _normal_element(_j, _k, n, m) for (_j, _k), _coeff in _form.items())
    return complex(-math.pi * _value * (-1) ** m)


@validate_call
def commutator_check(dim: conint(ge=8), block: conint(ge=1)) -> float:  # type: ignore
    """‖([ρ_W(0), η_W(0)] − i·I) restricted to the leading block‖_max.

    Raises:
        ContractViolationError: If `block > dim/4`.
    """

    if 4 * block > dim:
        raise ContractViolationError(f"Block {block} exceeds dim/4 for dim={dim}!")

    _rho = rho_w_matrix(0.0, dim).entries
    _eta = eta_w_matrix(dim).entries
    _commutator = _rho @ _eta - _eta @ _rho
    _deviation = _commutator[:block, :block] - 1j * np.eye(block)
    return float(np.max(np.abs(_deviation)))


@validate_call
def commutator_table(dims: List[conint(ge=8)], block: conint(ge=1) = 8) -> List[CommutatorRow]:  # type: ignore
    """Block deviation of the conjugate commutator for each truncation dimension."""

    _rows = []
    for _dim in dims:
        _deviation = commutator_check(_dim, block)
        logger.debug(f"[ρ_W, η_W] block-{block} deviation at dim={_dim}: {_deviation:.3e}")
        _rows.append(CommutatorRow(dim=_dim, block=block, deviation=_deviation))

    return _rows


@validate_call
def number_commutator_norm(dim: conint(ge=2)) -> float:  # type: ignore
    """‖[N, ρ_W(0)]‖_max."""

    _rho = rho_w_matrix(0.0, dim).entries
    _n = np.arange(dim)
    return float(np.max(np.abs((_n[:, None] - _n[None, :]) * _rho)))


@validate_call
def spectrum_parity_profile(dim: conint(ge=2)) -> SpectrumParityProfile:  # type: ignore
    """Eigenvalues of truncated ρ_W(0) with the number-parity expectation of each eigenvector."""

    _spectrum = hermitian_spectrum(rho_w_matrix(0.0, dim).matrix)
    _signs = (-1.0) ** np.arange(dim)
    _parities = np.sum(np.abs(_spectrum.eigenvectors) ** 2 * _signs[:, None], axis=0)
    return SpectrumParityProfile(eigenvalues=_spectrum.eigenvalues, parities=_parities)


__all__ = [
    "rho_w_matrix",
    "rho_w_matrix_oracle",
    "trace_phase_distribution",
    "wigner_phase_distribution",
    "wigner_completeness",
    "fit_kernel_constant",
    "position_kernel_w0",
    "eigenfunction_residual",
    "eigen_ratio_spread",
    "eta_w_matrix",
    "eta_w_element",
    "commutator_check",
    "commutator_table",
    "number_commutator_norm",
    "spectrum_parity_profile",
]
