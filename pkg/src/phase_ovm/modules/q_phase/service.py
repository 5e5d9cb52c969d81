# -*- coding: utf-8 -*-

import math
from functools import lru_cache
from typing import List, Optional, Union

import numpy as np
from scipy import integrate, special
from pydantic import validate_call, conint

from phase_ovm.core.constants import (
    HUSIMI_FILTER_WIDTH,
    POSITIVITY_TOL,
    TAIL_TOL,
    TWO_PI,
    QuadratureRuleEnum,
)
from phase_ovm.core.exceptions import ContractViolationError, InternalConsistencyError
from phase_ovm.logger import logger
from phase_ovm.modules.fock import (
    MatrixLike,
    OperatorMatrix,
    Spectrum,
    as_array,
    coherent_amplitudes,
    hermitian_spectrum,
    number_phase_factors,
)
from phase_ovm.modules.phasespace import (
    PhaseDistribution,
    PhaseSpaceGrid,
    QuadratureSpec,
    boundary_leakage,
    check_density,
    gaussian_coarse_grain,
    radial_phase_distribution,
    wigner_grid,
)
from phase_ovm.modules.wigner_phase import trace_phase_distribution

from .schemas import QPhaseMatrix, CoherentDiscrepancyRow


_SUPPORT_SPACING = 0.05
_SUPPORT_LEAKAGE = 1e-9
_SUPPORT_HALF_WIDTHS = (6.0, 8.0, 10.0, 12.0, 14.0, 16.0, 20.0)


@lru_cache(maxsize=16)
def _rho_q_base(dim: int) -> np.ndarray:
    """⟨n|ρ_Q(0)|m⟩ = Γ(1 + (n+m)/2)/(2π·√(n!·m!)) in log-Gamma space."""

    _n = np.arange(dim, dtype=np.float64)
    _log_fact = special.gammaln(_n + 1.0)
    _log_values = special.gammaln(1.0 + 0.5 * (_n[:, None] + _n[None, :])) - 0.5 * (
        _log_fact[:, None] + _log_fact[None, :]
    )

    _base = np.exp(_log_values) / TWO_PI
    np.fill_diagonal(_base, 1.0 / TWO_PI)
    _base.flags.writeable = False
    return _base


@validate_call
def rho_q_matrix(theta: float, dim: conint(ge=1)) -> QPhaseMatrix:  # type: ignore
    """Q phase operator ρ_Q(θ) in the number basis.

    Args:
        theta (float, required): Phase angle in radians.
        dim   (int  , required): Truncation dimension.

    Returns:
        QPhaseMatrix: Positive semidefinite matrix with diagonal 1/2π.
    """

    _entries = _rho_q_base(dim) * number_phase_factors(dim, theta)
    return QPhaseMatrix(theta=theta, dim=dim, matrix=OperatorMatrix(dim=dim, entries=_entries))


def min_radial_cutoff(dim: int) -> float:
    return math.sqrt(2.0 * dim) + 4.0


def coherent_radial_integral(
    theta: float,
    dim: int,
    quad: QuadratureSpec,
    scale: float = 1.0,
    shift: complex = 0j,
) -> np.ndarray:
    """(1/π)∫₀^{r_max} r·|r·e^{iθ}·scale + shift⟩⟨same|·dr with unnormalized truncated amplitudes.

    Raises:
        ContractViolationError: If the Poisson tail of the integrand beyond `r_max` exceeds 1e-12.
    """

    _r, _w = quad.nodes_weights
    _alphas = _r * (np.exp(1j * theta) * scale) + shift
    _amps = coherent_amplitudes(_alphas, dim)
    _entries = (_amps.T * (_w * _r)[None, :]) @ _amps.conj() / np.pi

    ## Occupation below `dim` for amplitudes at radius ≥ r_max·scale − |shift|:
    _edge = max(quad.r_max * abs(scale) - abs(shift), 0.0)
    _tail = float(special.gammaincc(dim, _edge**2)) / max(scale**2, 1e-300)
    if _tail > TAIL_TOL:
        raise ContractViolationError(
            f"Radial cutoff r_max={quad.r_max:.3f} leaves a tail of {_tail:.3e} at dim={dim}!",
            detail=_tail,
        )

    return _entries


@validate_call
def rho_q_matrix_oracle(theta: float, dim: conint(ge=1), quad: QuadratureSpec) -> QPhaseMatrix:  # type: ignore
    """ρ_Q(θ) = (1/π)∫r·|r·e^{iθ}⟩⟨r·e^{iθ}|·dr by radial quadrature of coherent projectors.

    Args:
        theta (float         , required): Phase angle in radians.
        dim   (int           , required): Truncation dimension.
        quad  (QuadratureSpec, required): Radial rule with `r_max ≥ √(2·dim) + 4`.

    Raises:
        ContractViolationError: If `r_max` is too small or the radial tail isn't negligible.

    Returns:
        QPhaseMatrix: Quadrature approximation of ρ_Q(θ).
    """

    _min_cutoff = min_radial_cutoff(dim)
    if quad.r_max < _min_cutoff - 1e-12:
        raise ContractViolationError(
            f"Radial cutoff r_max={quad.r_max:.3f} is below √(2·dim)+4={_min_cutoff:.3f}!",
            detail=quad.r_max,
        )

    _entries = coherent_radial_integral(theta, dim, quad)
    logger.debug(f"Built quadrature ρ_Q oracle at θ={theta:.6f}, dim={dim}.")
    return QPhaseMatrix(theta=theta, dim=dim, matrix=OperatorMatrix(dim=dim, entries=_entries))


@validate_call(config={"arbitrary_types_allowed": True})
def q_phase_distribution(
    rho: MatrixLike, thetas: Union[np.ndarray, List[float]]
) -> PhaseDistribution:
    """Q phase distribution P^Q(θ) = Tr[ρ·ρ_Q(θ)].

    Args:
        rho    (OperatorMatrix, required): Unit-trace density matrix.
        thetas (ndarray       , required): Angles in radians.

    Raises:
        ContractViolationError  : If ρ has no unit trace.
        InternalConsistencyError: If a value drops below −1e-10 although ρ is positive.

    Returns:
        PhaseDistribution: Non-negative values for positive ρ.
    """

    _rho = as_array(rho)
    _thetas = np.asarray(thetas, dtype=np.float64).reshape(-1)
    _distribution = trace_phase_distribution(_rho, _rho_q_base(_rho.shape[0]), _thetas)

    if _distribution.values.size and (_distribution.min() < -POSITIVITY_TOL):
        _min_eigenvalue = float(np.linalg.eigvalsh(0.5 * (_rho + _rho.conj().T))[0])
        if _min_eigenvalue >= -POSITIVITY_TOL:
            raise InternalConsistencyError(
                f"Q phase distribution reaches {_distribution.min():.3e} for a positive state!",
                detail=_distribution.min(),
            )

    return _distribution


def _rotated_quadrature(alpha: complex, thetas: np.ndarray) -> np.ndarray:
    return np.real(alpha * np.exp(-1j * thetas))


def _as_thetas(theta: Union[float, np.ndarray, List[float]]) -> np.ndarray:
    return np.asarray(theta, dtype=np.float64)


def _like_input(values: np.ndarray):
    return float(values) if values.ndim == 0 else values


@validate_call(config={"arbitrary_types_allowed": True})
def coherent_q_phase_closed(alpha: complex, theta: Union[float, np.ndarray, List[float]]):
    """P^Q(θ) of |α⟩ in closed form.

    (1/2π)·e^{−|α|²}·[1 + √π·x·e^{x²}·(1 + erf x)] with x = Re(α·e^{−iθ}),
    evaluated through erfc/erfcx so large |α| neither overflows nor cancels.

    Args:
        alpha (complex       , required): Coherent amplitude.
        theta (float/ndarray , required): Angle or angles in radians.

    Returns:
        float/ndarray: Probability density per radian, shaped like `theta`.
    """

    _thetas = _as_thetas(theta)
    _x = _rotated_quadrature(alpha, _thetas)
    _abs2 = abs(alpha) ** 2

    _positive = _x > 0.0
    _safe = np.where(_positive, _x, 0.0)
    _erf_term = np.where(
        _positive,
        np.exp(_safe**2 - _abs2) * special.erfc(-_safe),
        math.exp(-_abs2) * special.erfcx(-np.minimum(_x, 0.0)),
    )

    _values = (math.exp(-_abs2) + math.sqrt(math.pi) * _x * _erf_term) / TWO_PI
    return _like_input(_values)


@validate_call
def coherent_q_phase_quadrature(alpha: complex, theta: float) -> float:
    """(1/π)∫₀^∞ r·|⟨r·e^{iθ}|α⟩|²·dr by adaptive quadrature."""

    _x = float(_rotated_quadrature(alpha, np.float64(theta)))
    _offset = _x * _x - abs(alpha) ** 2
    _upper = max(_x, 0.0) + 12.0

    _value, _ = integrate.quad(
        lambda r: r * math.exp(_offset - (r - _x) ** 2),
        0.0,
        _upper,
        points=[_x] if 0.0 < _x < _upper else None,
        epsabs=1e-14,
        epsrel=1e-12,
        limit=200,
    )
    return _value / math.pi


@validate_call(config={"arbitrary_types_allowed": True})
def coherent_q_phase_printed(alpha: complex, theta: Union[float, np.ndarray, List[float]]):
    """Coherent-state display as originally printed, kept for the discrepancy report.

    (e^{−|α|²}/2π)·[1 + √π·Re(α·e^{−iθ}·e^{−iθx/2}) + 2√π·x·e^{−iθx/2}·erf(x)].
    The last term is complex, so the result is complex in general.
    """

    _thetas = _as_thetas(theta)
    _x = _rotated_quadrature(alpha, _thetas)
    _twist = np.exp(-0.5j * _thetas * _x)

    _bracket = (
        1.0
        + math.sqrt(math.pi) * np.real(alpha * np.exp(-1j * _thetas) * _twist)
        + 2.0 * math.sqrt(math.pi) * _x * _twist * special.erf(_x)
    )
    _values = math.exp(-abs(alpha) ** 2) / TWO_PI * _bracket
    return complex(_values) if _values.ndim == 0 else _values


@validate_call(config={"arbitrary_types_allowed": True})
def coherent_discrepancy_table(
    alpha: complex, thetas: Union[np.ndarray, List[float]]
) -> List[CoherentDiscrepancyRow]:
    """Corrected closed form, printed display and quadrature oracle side by side."""

    _thetas = np.asarray(thetas, dtype=np.float64).reshape(-1)
    _corrected = coherent_q_phase_closed(alpha, _thetas)
    _printed = coherent_q_phase_printed(alpha, _thetas)

    _rows = []
    for _i, _theta in enumerate(_thetas):
        _rows.append(
            CoherentDiscrepancyRow(
                theta=float(_theta),
                corrected=float(_corrected[_i]),
                printed_re=float(_printed[_i].real),
                printed_im=float(_printed[_i].imag),
                quadrature=coherent_q_phase_quadrature(alpha, float(_theta)),
            )
        )

    return _rows


@validate_call
def q_completeness(dim: conint(ge=1), theta_nodes: Optional[conint(ge=1)] = None) -> np.ndarray:  # type: ignore
    """∫₀^{2π} ρ_Q(θ)dθ, analytically or by the periodic trapezoid rule on `theta_nodes` angles.

    The analytic diagonal is Γ(1+n)/n!, evaluated in log-Gamma space.
    """

    if theta_nodes is None:
        _n = np.arange(dim, dtype=np.float64)
        _diagonal = np.exp(special.gammaln(1.0 + _n) - special.gammaln(_n + 1.0))
        return np.diag(_diagonal).astype(np.complex128)

    _total = np.zeros((dim, dim), dtype=np.complex128)
    for _k in range(theta_nodes):
        _total += number_phase_factors(dim, TWO_PI * _k / theta_nodes)
    return _total * _rho_q_base(dim) * (TWO_PI / theta_nodes)


@validate_call
def q_spectrum(theta: float, dim: conint(ge=1)) -> Spectrum:  # type: ignore
    """Eigen-decomposition of ρ_Q(θ)."""

    return hermitian_spectrum(rho_q_matrix(theta, dim).matrix)


def support_grid(rho: np.ndarray) -> PhaseSpaceGrid:
    """Smallest square grid, at spacing 0.05, holding all but 1e-9 of the smoothed marginals."""

    for _half in _SUPPORT_HALF_WIDTHS:
        _nodes = int(round(2.0 * _half / _SUPPORT_SPACING)) + 1
        _grid = PhaseSpaceGrid(
            x_min=-_half, x_max=_half, p_min=-_half, p_max=_half, n_x=_nodes, n_p=_nodes
        )
        if boundary_leakage(rho, _grid, smoothing=HUSIMI_FILTER_WIDTH) <= _SUPPORT_LEAKAGE:
            return _grid

    return _grid


@validate_call(config={"arbitrary_types_allowed": True})
def coarse_grained_phase_distribution(
    rho: MatrixLike,
    thetas: Union[np.ndarray, List[float]],
    grid: Optional[PhaseSpaceGrid] = None,
    quad: Optional[QuadratureSpec] = None,
    threads: conint(ge=1) = 1,  # type: ignore
) -> PhaseDistribution:
    """Phase distribution of the Gaussian-smoothed Wigner grid, integrated radially.

    Args:
        rho     (OperatorMatrix, required): Density matrix.
        thetas  (ndarray       , required): Angles in radians.
        grid    (PhaseSpaceGrid, optional): Wigner grid. Defaults to `support_grid(ρ)`.
        quad    (QuadratureSpec, optional): Radial rule. Defaults to 400 Gauss-Legendre nodes up to the grid corner.
        threads (int           , optional): Worker threads. Defaults to 1.

    Returns:
        PhaseDistribution: Approximates `q_phase_distribution(ρ, thetas)`.
    """

    _rho = check_density(rho)
    _grid = support_grid(_rho) if grid is None else grid
    if quad is None:
        _corner = math.hypot(
            max(abs(_grid.x_min), abs(_grid.x_max)), max(abs(_grid.p_min), abs(_grid.p_max))
        )
        quad = QuadratureSpec(rule=QuadratureRuleEnum.gauss_legendre, nodes=400, r_max=_corner)

    _wigner = wigner_grid(_rho, _grid, threads=threads)
    _smoothed = gaussian_coarse_grain(_wigner, HUSIMI_FILTER_WIDTH)
    return radial_phase_distribution(_smoothed, thetas, quad, threads=threads)


__all__ = [
    "rho_q_matrix",
    "min_radial_cutoff",
    "coherent_radial_integral",
    "rho_q_matrix_oracle",
    "q_phase_distribution",
    "coherent_q_phase_closed",
    "coherent_q_phase_quadrature",
    "coherent_q_phase_printed",
    "coherent_discrepancy_table",
    "q_completeness",
    "q_spectrum",
    "support_grid",
    "coarse_grained_phase_distribution",
]
