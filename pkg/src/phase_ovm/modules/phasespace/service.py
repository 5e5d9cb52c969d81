# -*- coding: utf-8 -*-

import math
from typing import Callable, List, Union

import numpy as np
from scipy import ndimage, special
from scipy.interpolate import RectBivariateSpline
from pydantic import validate_call, conint, confloat

from phase_ovm.core.constants import (
    HERMITIAN_TOL,
    TRACE_TOL,
    TAIL_TOL,
    TWO_PI,
    KERNEL_TRUNCATION_SIGMAS,
    QuadratureRuleEnum,
    WarnEnum,
)
from phase_ovm.core.exceptions import ContractViolationError
from phase_ovm.core.utils import map_chunks, validator
from phase_ovm.logger import logger, log_mode
from phase_ovm.modules.fock import (
    MatrixLike,
    as_array,
    coherent_amplitudes,
    position_wavefunctions,
)

from .schemas import PhaseSpaceGrid, PhaseDistribution, QuadratureSpec


Field2D = Callable[[np.ndarray, np.ndarray], np.ndarray]

_DEFAULT_HALF_WIDTH = 6.0
_DEFAULT_SPACING = 0.05
_DEFAULT_DIM = 64
_MARGINAL_NODES = 600
_MARGINAL_PAD = 12.0


@validate_call
def default_grid(dim: conint(ge=1) = _DEFAULT_DIM) -> PhaseSpaceGrid:  # type: ignore
    """[−6, 6]² at spacing 0.05 for dim ≤ 64; the half-width grows with √(dim/64)."""

    _half = _DEFAULT_HALF_WIDTH * max(1.0, math.sqrt(dim / _DEFAULT_DIM))
    _nodes = int(round(2.0 * _half / _DEFAULT_SPACING)) + 1
    return PhaseSpaceGrid(
        x_min=-_half, x_max=_half, p_min=-_half, p_max=_half, n_x=_nodes, n_p=_nodes
    )


@validate_call
def default_quadrature(dim: conint(ge=1) = _DEFAULT_DIM, nodes: conint(ge=2) = 200) -> QuadratureSpec:  # type: ignore
    return QuadratureSpec(
        rule=QuadratureRuleEnum.gauss_legendre,
        nodes=nodes,
        r_max=math.sqrt(2.0 * dim) + 4.0,
    )


@validate_call
def uniform_thetas(n: conint(ge=1)) -> np.ndarray:  # type: ignore
    """n equally spaced angles k·2π/n on [0, 2π)."""

    return TWO_PI * np.arange(n, dtype=np.float64) / n


def periodic_weights(thetas: np.ndarray) -> np.ndarray:
    """Periodic trapezoid weights; 2π/n for uniform angles."""

    _thetas = np.mod(np.asarray(thetas, dtype=np.float64), TWO_PI)
    if _thetas.size == 1:
        return np.array([TWO_PI])

    _order = np.argsort(_thetas, kind="stable")
    _sorted = _thetas[_order]
    _next = np.roll(_sorted, -1)
    _next[-1] += TWO_PI
    _prev = np.roll(_sorted, 1)
    _prev[0] -= TWO_PI

    _weights = np.empty_like(_sorted)
    _weights[_order] = 0.5 * (_next - _prev)
    return _weights


def check_density(rho: MatrixLike) -> np.ndarray:
    """Hermitian unit-trace density matrix as an array."""

    _rho = as_array(rho)
    _defect = validator.hermitian_defect(_rho)
    if _defect > HERMITIAN_TOL:
        raise ContractViolationError(
            f"Density matrix is not hermitian: ‖ρ − ρ†‖_max = {_defect:.3e}!",
            detail=_defect,
        )

    _trace = complex(np.trace(_rho))
    if abs(_trace - 1.0) > TRACE_TOL:
        raise ContractViolationError(
            f"Density matrix trace is {_trace.real:.12f}, expected 1!", detail=_trace.real
        )

    return _rho


def _laguerre_clenshaw(order: int, x: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """Σ_k c_k·L_k^{order}(x) in the normalized form used by the Wigner series."""

    if len(coeffs) == 1:
        _y0, _y1 = coeffs[0], 0.0
    elif len(coeffs) == 2:
        _y0, _y1 = coeffs[0], coeffs[1]
    else:
        _k = len(coeffs)
        _y0, _y1 = coeffs[-2], coeffs[-1]
        for _i in range(3, len(coeffs) + 1):
            _k -= 1
            _y0, _y1 = (
                coeffs[-_i] - _y1 * math.sqrt((_k - 1) * (order + _k - 1) / ((order + _k) * _k)),
                _y0 - _y1 * ((order + 2 * _k - 1) - x) / math.sqrt((order + _k) * _k),
            )

    return _y0 - _y1 * ((order + 1) - x) / math.sqrt(order + 1)


def _wigner_clenshaw(rho: np.ndarray, x: np.ndarray, p: np.ndarray) -> np.ndarray:
    _dim = rho.shape[0]
    _a2 = math.sqrt(2.0) * (x + 1j * p)
    _b = np.abs(_a2) ** 2

    if _dim == 1:
        return (rho[0, 0].real * np.exp(-0.5 * _b) / np.pi) * np.ones_like(x)

    _rho = rho * (2.0 * np.ones((_dim, _dim)) - np.eye(_dim))
    _w = _rho[0, -1] * np.ones_like(_a2)
    for _order in range(_dim - 2, -1, -1):
        _w = _laguerre_clenshaw(_order, _b, np.diag(_rho, _order)) + _w * _a2 / math.sqrt(_order + 1)

    return np.real(_w) * np.exp(-0.5 * _b) / np.pi


@validate_call(config={"arbitrary_types_allowed": True})
def wigner_field(rho: MatrixLike) -> Field2D:
    """Point-wise Wigner function W(x, p) = (1/π)·Tr[ρ·D(2α)·P].

    Evaluated with the Clenshaw recurrence over the diagonals of ρ.
    """

    _rho = check_density(rho)

    def _field(x: np.ndarray, p: np.ndarray) -> np.ndarray:
        return _wigner_clenshaw(_rho, np.asarray(x, dtype=np.float64), np.asarray(p, dtype=np.float64))

    return _field


@validate_call(config={"arbitrary_types_allowed": True})
def husimi_field(rho: MatrixLike) -> Field2D:
    """Point-wise Husimi function ⟨α|ρ|α⟩/(2π) with α = (x + ip)/√2, a dx·dp density."""

    _rho = check_density(rho)
    _dim = _rho.shape[0]

    def _field(x: np.ndarray, p: np.ndarray) -> np.ndarray:
        _alphas = (np.asarray(x, dtype=np.float64) + 1j * np.asarray(p, dtype=np.float64)) / math.sqrt(2.0)
        _shape = _alphas.shape
        _amps = coherent_amplitudes(_alphas.reshape(-1), _dim)
        _overlap = np.sum(_amps.conj() * (_amps @ _rho.T), axis=1).real
        return (_overlap / TWO_PI).reshape(_shape)

    return _field


def _marginal_leakage(
    rho: np.ndarray, lo: float, hi: float, momentum: bool, smoothing: float
) -> float:
    """Probability outside [lo, hi] of the x (or p) marginal, optionally Gaussian-smoothed."""

    _dim = rho.shape[0]
    if smoothing > 0.0:
        _a, _b = lo - _MARGINAL_PAD, hi + _MARGINAL_PAD
    else:
        _a, _b = lo, hi

    _t, _w = special.roots_legendre(_MARGINAL_NODES)
    _nodes = 0.5 * (_b - _a) * (_t + 1.0) + _a
    _w = 0.5 * (_b - _a) * _w

    _psi = position_wavefunctions(_dim, _nodes).astype(np.complex128)
    if momentum:
        _psi = _psi * ((-1j) ** np.arange(_dim))[None, :]

    _density = np.sum((_psi @ rho.T) * _psi.conj(), axis=1).real
    if smoothing > 0.0:
        _scale = smoothing * math.sqrt(2.0)
        _inside = 0.5 * (special.erf((hi - _nodes) / _scale) - special.erf((lo - _nodes) / _scale))
        _density = _density * _inside

    _mass = float(np.sum(_w * _density)) / float(np.trace(rho).real)
    return max(0.0, 1.0 - _mass)


def boundary_leakage(rho: np.ndarray, grid: PhaseSpaceGrid, smoothing: float = 0.0) -> float:
    """Union bound of the x and p marginal masses lying outside the grid."""

    _leak_x = _marginal_leakage(rho, grid.x_min, grid.x_max, False, smoothing)
    _leak_p = _marginal_leakage(rho, grid.p_min, grid.p_max, True, smoothing)
    return _leak_x + _leak_p


def _sample(field: Field2D, grid: PhaseSpaceGrid, threads: int) -> np.ndarray:
    _x, _p = grid.mesh()
    _values = map_chunks(field, _x.reshape(-1), _p.reshape(-1), threads=threads)
    return _values.reshape(grid.n_x, grid.n_p)


@validate_call(config={"arbitrary_types_allowed": True})
def wigner_grid(rho: MatrixLike, grid: PhaseSpaceGrid, threads: conint(ge=1) = 1) -> PhaseSpaceGrid:  # type: ignore
    """Sample the Wigner function of ρ on `grid`.

    Args:
        rho     (OperatorMatrix, required): Hermitian unit-trace density matrix.
        grid    (PhaseSpaceGrid, required): Target grid; its values are ignored.
        threads (int           , optional): Worker threads. Defaults to 1.

    Raises:
        ContractViolationError: If ρ isn't hermitian or doesn't have unit trace.

    Returns:
        PhaseSpaceGrid: Real W(x, p) with the reported boundary leakage.
    """

    _rho = check_density(rho)
    _values = _sample(wigner_field(_rho), grid, threads)
    _leakage = boundary_leakage(_rho, grid)
    logger.debug(f"Sampled Wigner grid {grid.n_x}x{grid.n_p}, leakage={_leakage:.3e}.")
    return grid.with_values(_values, leakage=_leakage)


@validate_call(config={"arbitrary_types_allowed": True})
def husimi_grid(rho: MatrixLike, grid: PhaseSpaceGrid, threads: conint(ge=1) = 1) -> PhaseSpaceGrid:  # type: ignore
    """Sample the Husimi function of ρ on `grid` as a dx·dp density.

    The d²α density ⟨α|ρ|α⟩/π is `grid.alpha_density()`.
    """

    _rho = check_density(rho)
    _values = _sample(husimi_field(_rho), grid, threads)
    _leakage = boundary_leakage(_rho, grid, smoothing=math.sqrt(0.5))
    logger.debug(f"Sampled Husimi grid {grid.n_x}x{grid.n_p}, leakage={_leakage:.3e}.")
    return grid.with_values(_values, leakage=_leakage)


def cross_wigner_symbols(
    dim: int, x: float, p: float, y_max: float = 12.0, n_y: int = 1201
) -> np.ndarray:
    """Moyal-integral Wigner symbols S[m, n] = W_{|m⟩⟨n|}(x, p).

    S[m, n] = (1/π)∫ψ_m(x + y)·ψ_n(x − y)·e^{−2ipy}dy by the trapezoid rule.
    """

    _y = np.linspace(-y_max, y_max, n_y)
    _h = _y[1] - _y[0]
    _weights = np.full(n_y, _h, dtype=np.complex128)
    _weights[0] *= 0.5
    _weights[-1] *= 0.5
    _weights *= np.exp(-2j * p * _y)

    _psi_plus = position_wavefunctions(dim, x + _y)
    _psi_minus = position_wavefunctions(dim, x - _y)
    return (_psi_plus.T * _weights[None, :]) @ _psi_minus / np.pi


@validate_call(config={"arbitrary_types_allowed": True})
def moyal_wigner(
    rho: MatrixLike,
    x: Union[np.ndarray, List[float]],
    p: Union[np.ndarray, List[float]],
) -> np.ndarray:
    """Wigner function at scattered points by the direct Moyal integral."""

    _rho = as_array(rho)
    _x = np.asarray(x, dtype=np.float64).reshape(-1)
    _p = np.asarray(p, dtype=np.float64).reshape(-1)
    _values = np.empty(_x.size, dtype=np.float64)
    for _i in range(_x.size):
        _symbols = cross_wigner_symbols(_rho.shape[0], _x[_i], _p[_i])
        _values[_i] = float(np.sum(_rho * _symbols).real)

    return _values


def _gaussian_kernel(sigma: float, step: float) -> np.ndarray:
    _half = int(math.floor(KERNEL_TRUNCATION_SIGMAS * sigma / step))
    _offsets = step * np.arange(-_half, _half + 1, dtype=np.float64)
    _kernel = np.exp(-0.5 * (_offsets / sigma) ** 2)
    return _kernel / np.sum(_kernel)


@validate_call(config={"arbitrary_types_allowed": True})
def gaussian_coarse_grain(grid: PhaseSpaceGrid, width: confloat(gt=0.0)) -> PhaseSpaceGrid:  # type: ignore
    """Convolve grid values with a normalized Gaussian of standard deviation `width` per axis.

    The kernel is truncated at 8 standard deviations and values beyond the
    grid are taken as zero. With `width = 1/√2` a Wigner grid becomes the
    Husimi grid of the same state.

    Args:
        grid  (PhaseSpaceGrid, required): Grid with values.
        width (float         , required): Kernel standard deviation in x and p.

    Raises:
        ContractViolationError: If the truncated kernel is wider than the grid span.

    Returns:
        PhaseSpaceGrid: Smoothed grid on the same nodes.
    """

    if grid.values is None:
        raise ContractViolationError("Grid carries no values to coarse-grain!")

    _support = 2.0 * KERNEL_TRUNCATION_SIGMAS * width
    if (_support > grid.x_max - grid.x_min) or (_support > grid.p_max - grid.p_min):
        raise ContractViolationError(
            f"Kernel support {_support:.3f} is wider than the grid span!", detail=_support
        )

    _smoothed = ndimage.convolve1d(
        grid.values, _gaussian_kernel(width, grid.dx), axis=0, mode="constant", cval=0.0
    )
    _smoothed = ndimage.convolve1d(
        _smoothed, _gaussian_kernel(width, grid.dp), axis=1, mode="constant", cval=0.0
    )
    return grid.with_values(_smoothed, leakage=grid.leakage)


def _grid_field(grid: PhaseSpaceGrid) -> Field2D:
    _spline = RectBivariateSpline(grid.xs, grid.ps, grid.values.real, kx=3, ky=3)

    def _field(x: np.ndarray, p: np.ndarray) -> np.ndarray:
        _inside = (x >= grid.x_min) & (x <= grid.x_max) & (p >= grid.p_min) & (p <= grid.p_max)
        _values = np.zeros(x.shape, dtype=np.float64)
        _values[_inside] = _spline.ev(x[_inside], p[_inside])
        return _values

    return _field


@validate_call(config={"arbitrary_types_allowed": True})
def radial_phase_distribution(
    field: Union[PhaseSpaceGrid, Callable],
    thetas: Union[np.ndarray, List[float]],
    quad: QuadratureSpec,
    threads: conint(ge=1) = 1,  # type: ignore
) -> PhaseDistribution:
    """Radially integrate a phase-space density into a phase distribution.

    P(θ) = ∫₀^{r_max} f(r·cosθ, r·sinθ)·r·dr for each angle, by `quad.rule`.

    Args:
        field   (Union[PhaseSpaceGrid, Callable], required): Sampled grid (cubic interpolation, zero outside) or field callable.
        thetas  (ndarray                        , required): Angles in radians.
        quad    (QuadratureSpec                 , required): Radial rule, node count and cutoff.
        threads (int                            , optional): Worker threads. Defaults to 1.

    Raises:
        ContractViolationError: If a callable field is not negligible at `r_max`.

    Returns:
        PhaseDistribution: Values with periodic trapezoid weights.
    """

    _thetas = np.asarray(thetas, dtype=np.float64).reshape(-1)
    _r, _w = quad.nodes_weights

    if isinstance(field, PhaseSpaceGrid):
        if field.values is None:
            raise ContractViolationError("Grid carries no values to integrate!")
        if field.leakage > 1e-8:
            log_mode(
                f"Grid boundary leakage {field.leakage:.3e} limits the radial integral.",
                level="WARNING",
                warn_mode=WarnEnum.DEBUG,
            )
        _field = _grid_field(field)
    else:
        _field = field

    _x = np.outer(np.cos(_thetas), _r)
    _p = np.outer(np.sin(_thetas), _r)
    _values = map_chunks(_field, _x.reshape(-1), _p.reshape(-1), threads=threads)
    _values = _values.reshape(_thetas.size, _r.size)

    if not isinstance(field, PhaseSpaceGrid):
        _edge = np.abs(_field(quad.r_max * np.cos(_thetas), quad.r_max * np.sin(_thetas)))
        _scale = float(np.max(np.abs(_values) * _r[None, :]))
        _tail = float(np.max(_edge)) * quad.r_max
        if _tail > TAIL_TOL * max(_scale, 1e-300):
            raise ContractViolationError(
                f"Radial cutoff r_max={quad.r_max:.3f} doesn't cover the field support "
                f"(tail ratio {_tail / _scale:.3e})!",
                detail=_tail,
            )

    _distribution = _values @ (_w * _r)
    return PhaseDistribution(
        thetas=_thetas, values=_distribution, weights=periodic_weights(_thetas)
    )


__all__ = [
    "Field2D",
    "default_grid",
    "default_quadrature",
    "uniform_thetas",
    "periodic_weights",
    "check_density",
    "wigner_field",
    "husimi_field",
    "boundary_leakage",
    "wigner_grid",
    "husimi_grid",
    "cross_wigner_symbols",
    "moyal_wigner",
    "gaussian_coarse_grain",
    "radial_phase_distribution",
]
