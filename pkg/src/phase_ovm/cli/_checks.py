# -*- coding: utf-8 -*-

import time
from typing import Callable, List, Sequence

import numpy as np

from phase_ovm.core.constants import HUSIMI_FILTER_WIDTH, TWO_PI
from phase_ovm.core.configs import RunConfig
from phase_ovm.logger import logger
from phase_ovm.modules.fock import (
    coherent_state,
    density_matrix,
    even_cat_state,
    fock_state,
    hermitian_spectrum,
    rotate_by_number_phase,
)
from phase_ovm.modules.phasespace import (
    PhaseSpaceGrid,
    default_quadrature,
    gaussian_coarse_grain,
    husimi_grid,
    uniform_thetas,
    wigner_grid,
)
from phase_ovm.modules.wigner_phase import (
    commutator_table,
    eigen_ratio_spread,
    eigenfunction_residual,
    number_commutator_norm,
    rho_w_matrix,
    rho_w_matrix_oracle,
    wigner_completeness,
    wigner_phase_distribution,
)
from phase_ovm.modules.q_phase import (
    coherent_q_phase_closed,
    coherent_q_phase_quadrature,
    q_completeness,
    q_phase_distribution,
    rho_q_matrix,
    rho_q_matrix_oracle,
)
from phase_ovm.modules.dilation import (
    CONSTANT_PRODUCT_SCHEDULE,
    FIXED_BETA_SCHEDULE,
    dilation_convergence,
    pi_tau_beta,
)

from ._schemas import CheckReport, CheckRuleEnum


UNIFORMITY_NUMBERS = (0, 1, 5, 20)
COVARIANCE_THETAS = (0.3, 1.7, 5.1)
EIGEN_LAMBDAS = (
    -1.0 / (4.0 * np.pi),
    1.0 / (4.0 * np.pi),
    -1.0 / (8.0 * np.pi),
    1.0 / (8.0 * np.pi),
)
EIGEN_AXIS = np.linspace(-5.0, 5.0, 1001)
COMMUTATOR_DIMS = (40, 80, 160)
COHERENT_ALPHAS = (0.5 + 0j, 2.0 + 0j, 3.0 + 1j)
Q_ORACLE_DIM = 24
W_ORACLE_DIM = 16
DILATION_DIM = 24
CAT_GAMMA = 2.0 + 0j

CheckFunc = Callable[[RunConfig], List[CheckReport]]


class _Timer:
    def __init__(self):
        self._start = time.perf_counter()

    def elapsed(self) -> float:
        return time.perf_counter() - self._start


def _standard_states(dim: int):
    return {
        "vacuum": density_matrix(fock_state(0, dim)),
        "fock_1": density_matrix(fock_state(1, dim)),
        "coherent_2": density_matrix(coherent_state(2.0, dim)),
        "even_cat_2": density_matrix(even_cat_state(CAT_GAMMA, dim)),
    }


def check_q_uniformity(run: RunConfig) -> List[CheckReport]:
    _timer = _Timer()
    _thetas = uniform_thetas(run.theta_nodes)
    _error = 0.0
    for _n in UNIFORMITY_NUMBERS:
        if _n >= run.dim:
            continue
        _dist = q_phase_distribution(density_matrix(fock_state(_n, run.dim)), _thetas)
        _error = max(_error, float(np.max(np.abs(_dist.values - 1.0 / TWO_PI))))

    return [CheckReport.evaluate("q_phase_fock_uniformity", _error, 1e-12, _timer.elapsed())]


def check_completeness(run: RunConfig) -> List[CheckReport]:
    _identity = np.eye(run.dim)

    _timer = _Timer()
    _q_exact = float(np.max(np.abs(q_completeness(run.dim) - _identity)))
    _q_exact_report = CheckReport.evaluate("q_completeness_analytic", _q_exact, 0.0, _timer.elapsed())

    _timer = _Timer()
    _q_trapezoid = float(np.max(np.abs(q_completeness(run.dim, run.theta_nodes) - _identity)))
    _q_report = CheckReport.evaluate("q_completeness_trapezoid", _q_trapezoid, 1e-9, _timer.elapsed())

    _timer = _Timer()
    _w_trapezoid = float(np.max(np.abs(wigner_completeness(run.dim, run.theta_nodes) - _identity)))
    _w_report = CheckReport.evaluate("w_completeness_trapezoid", _w_trapezoid, 1e-9, _timer.elapsed())

    return [_q_exact_report, _q_report, _w_report]


def check_positivity_split(run: RunConfig) -> List[CheckReport]:
    _timer = _Timer()
    _q_min = hermitian_spectrum(rho_q_matrix(0.0, run.dim).matrix).min
    _q_report = CheckReport.evaluate(
        "q_min_eigenvalue", _q_min, -1e-10, _timer.elapsed(), rule=CheckRuleEnum.GE
    )

    _timer = _Timer()
    _w_min = hermitian_spectrum(rho_w_matrix(0.0, run.dim).matrix).min
    _w_report = CheckReport.evaluate(
        "w_min_eigenvalue", _w_min, -1e-3, _timer.elapsed(), rule=CheckRuleEnum.LT
    )
    return [_q_report, _w_report]


def check_rotation_covariance(run: RunConfig) -> List[CheckReport]:
    _reports = []
    for _name, _builder in (("w", rho_w_matrix), ("q", rho_q_matrix)):
        _timer = _Timer()
        _base = _builder(0.0, run.dim).matrix
        _error = 0.0
        for _theta in COVARIANCE_THETAS:
            _rotated = rotate_by_number_phase(_base, _theta).entries
            _error = max(_error, float(np.max(np.abs(_builder(_theta, run.dim).entries - _rotated))))
        _reports.append(
            CheckReport.evaluate(f"{_name}_rotation_covariance", _error, 1e-10, _timer.elapsed())
        )

    return _reports


def check_oracles(run: RunConfig) -> List[CheckReport]:
    _timer = _Timer()
    _quad = default_quadrature(Q_ORACLE_DIM, run.quadrature.nodes)
    _q_error = float(
        np.max(
            np.abs(
                rho_q_matrix_oracle(0.0, Q_ORACLE_DIM, _quad).entries
                - rho_q_matrix(0.0, Q_ORACLE_DIM).entries
            )
        )
    )
    _q_report = CheckReport.evaluate("q_oracle_equivalence", _q_error, 1e-9, _timer.elapsed())

    _timer = _Timer()
    _quad = default_quadrature(W_ORACLE_DIM, run.quadrature.nodes)
    _w_error = float(
        np.max(
            np.abs(
                rho_w_matrix_oracle(0.0, W_ORACLE_DIM, _quad).entries
                - rho_w_matrix(0.0, W_ORACLE_DIM).entries
            )
        )
    )
    _w_report = CheckReport.evaluate("w_oracle_equivalence", _w_error, 1e-7, _timer.elapsed())
    return [_q_report, _w_report]


def _config_grid(run: RunConfig) -> PhaseSpaceGrid:
    return PhaseSpaceGrid(**run.grid.model_dump())


def check_coarse_graining(run: RunConfig) -> List[CheckReport]:
    _timer = _Timer()
    _grid = _config_grid(run)
    _threads = run.resolved_threads()
    _error = 0.0
    for _name, _rho in _standard_states(run.dim).items():
        _smoothed = gaussian_coarse_grain(wigner_grid(_rho, _grid, _threads), HUSIMI_FILTER_WIDTH)
        _husimi = husimi_grid(_rho, _grid, _threads)
        _state_error = float(np.max(np.abs(_smoothed.values - _husimi.values)))
        logger.debug(f"Coarse-grained W vs Q for {_name}: {_state_error:.3e}")
        _error = max(_error, _state_error)

    return [CheckReport.evaluate("coarse_grain_matches_husimi", _error, 2e-6, _timer.elapsed())]


def check_cat_state(run: RunConfig) -> List[CheckReport]:
    _timer = _Timer()
    _rho = density_matrix(even_cat_state(CAT_GAMMA, run.dim))
    _thetas = uniform_thetas(run.theta_nodes)
    _p_w = wigner_phase_distribution(_rho, _thetas)
    _p_q = q_phase_distribution(_rho, _thetas)
    _elapsed = _timer.elapsed()

    _timer = _Timer()
    _wigner = wigner_grid(_rho, _config_grid(run), run.resolved_threads())
    _x, _ = _wigner.mesh()
    _between = np.abs(_x) <= 1.0
    _w_min_between = float(np.min(_wigner.values[_between]))

    return [
        CheckReport.evaluate("cat_w_phase_min", _p_w.min(), 0.0, _elapsed, rule=CheckRuleEnum.LT),
        CheckReport.evaluate("cat_q_phase_min", _p_q.min(), 0.0, _elapsed, rule=CheckRuleEnum.GE),
        CheckReport.evaluate("cat_w_phase_total", _p_w.total() - 1.0, 1e-8, _elapsed),
        CheckReport.evaluate("cat_q_phase_total", _p_q.total() - 1.0, 1e-8, _elapsed),
        CheckReport.evaluate(
            "cat_wigner_negative_between_lobes",
            _w_min_between,
            0.0,
            _timer.elapsed(),
            rule=CheckRuleEnum.LT,
        ),
    ]


def check_eigenfunctions(run: RunConfig) -> List[CheckReport]:
    _timer = _Timer()
    _checks = [eigenfunction_residual(_lambda, EIGEN_AXIS) for _lambda in EIGEN_LAMBDAS]
    _elapsed = _timer.elapsed()

    for _check in _checks:
        logger.debug(
            f"λ={_check.eigenstate.lambda_:+.6f}: kernel eigenvalue {_check.kernel_eigenvalue:+.9f}, "
            f"ratio {_check.ratio:.6f}"
        )

    _de = max(_check.de_residual for _check in _checks)
    _kernel = max(_check.kernel_residual for _check in _checks)
    _mean_ratio = float(np.mean([_check.ratio for _check in _checks]))
    return [
        CheckReport.evaluate("eigenfunction_de_residual", _de, 1e-8, _elapsed),
        CheckReport.evaluate("eigenfunction_kernel_fit_residual", _kernel, 1e-2, _elapsed),
        CheckReport.evaluate(
            "eigenfunction_kernel_ratio_spread", eigen_ratio_spread(_checks), 1e-2, _elapsed
        ),
        CheckReport.evaluate(
            "eigenfunction_kernel_ratio_mean", _mean_ratio, 0.0, _elapsed, rule=CheckRuleEnum.REPORT
        ),
    ]


def check_conjugate(
    run: RunConfig, dims: Sequence[int] = COMMUTATOR_DIMS, block: int = 8
) -> List[CheckReport]:
    _timer = _Timer()
    _rows = commutator_table(list(dims), block=block)
    _elapsed = _timer.elapsed()

    _deviations = [_row.deviation for _row in _rows]
    _increase = max(np.diff(_deviations)) if len(_deviations) > 1 else 0.0

    _timer = _Timer()
    _number = number_commutator_norm(run.dim)
    return [
        CheckReport.evaluate("conjugate_commutator_deviation", max(_deviations), 1e-8, _elapsed),
        CheckReport.evaluate(
            "conjugate_commutator_nonincreasing",
            float(_increase),
            1e-12,
            _elapsed,
            rule=CheckRuleEnum.LT,
        ),
        CheckReport.evaluate(
            "number_commutator_nonzero", _number, 1e-2, _timer.elapsed(), rule=CheckRuleEnum.GT
        ),
    ]


def check_dilation(run: RunConfig) -> List[CheckReport]:
    _quad = default_quadrature(DILATION_DIM, run.quadrature.nodes)

    _timer = _Timer()
    _reduced = pi_tau_beta(0.0, 0.0, 1.0e6, DILATION_DIM, _quad).matrix.entries
    _oracle = rho_q_matrix_oracle(0.0, DILATION_DIM, _quad).entries
    _identical = float(np.max(np.abs(_reduced - _oracle)))
    _identity_report = CheckReport.evaluate("dilation_tau0_identical", _identical, 0.0, _timer.elapsed())

    _timer = _Timer()
    _fixed = [_row.distance for _row in dilation_convergence(0.0, FIXED_BETA_SCHEDULE, DILATION_DIM, _quad)]
    _fixed_report = CheckReport.evaluate(
        "dilation_fixed_beta_decreasing",
        float(np.max(np.diff(_fixed))),
        0.0,
        _timer.elapsed(),
        rule=CheckRuleEnum.LT,
    )

    _timer = _Timer()
    _plateau = [
        _row.distance for _row in dilation_convergence(0.0, CONSTANT_PRODUCT_SCHEDULE, DILATION_DIM, _quad)
    ]
    _plateau_report = CheckReport.evaluate(
        "dilation_constant_product_plateau",
        float(np.min(_plateau)),
        1e-3,
        _timer.elapsed(),
        rule=CheckRuleEnum.GT,
    )
    return [_identity_report, _fixed_report, _plateau_report]


def check_coherent_closed_form(run: RunConfig) -> List[CheckReport]:
    _timer = _Timer()
    _thetas = uniform_thetas(64)
    _error = 0.0
    _total_error = 0.0
    for _alpha in COHERENT_ALPHAS:
        _closed = coherent_q_phase_closed(_alpha, _thetas)
        _oracle = np.array([coherent_q_phase_quadrature(_alpha, float(_theta)) for _theta in _thetas])
        _error = max(_error, float(np.max(np.abs(_closed - _oracle))))
        _total_error = max(_total_error, abs(float(np.sum(_closed)) * TWO_PI / _thetas.size - 1.0))

    _elapsed = _timer.elapsed()
    return [
        CheckReport.evaluate("coherent_closed_vs_quadrature", _error, 1e-10, _elapsed),
        CheckReport.evaluate("coherent_closed_total", _total_error, 1e-9, _elapsed),
    ]


ALL_CHECKS: List[CheckFunc] = [
    check_q_uniformity,
    check_completeness,
    check_positivity_split,
    check_rotation_covariance,
    check_oracles,
    check_coarse_graining,
    check_cat_state,
    check_eigenfunctions,
    check_conjugate,
    check_dilation,
    check_coherent_closed_form,
]


def run_checks(run: RunConfig, checks: List[CheckFunc] = ALL_CHECKS) -> List[CheckReport]:
    """Run each check group in order; the report order is fixed."""

    _reports: List[CheckReport] = []
    for _check in checks:
        logger.info(f"Running '{_check.__name__}'...")
        _reports.extend(_check(run))

    return _reports


__all__ = [
    "ALL_CHECKS",
    "run_checks",
]
