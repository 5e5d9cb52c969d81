# -*- coding: utf-8 -*-

import math
import functools
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
import typer
from rich import box
from rich.console import Console
from rich.markup import escape
from rich.table import Table
from pydantic import ValidationError

from phase_ovm.__version__ import __version__
from phase_ovm.config import config
from phase_ovm.core.configs import FrozenRunConfig
from phase_ovm.core.constants import (
    HUSIMI_FILTER_WIDTH,
    ErrorCodeEnum,
    OutputFormatEnum,
    PhaseKindEnum,
    QuadratureRuleEnum,
)
from phase_ovm.core.exceptions import BasePhaseOVMError, CheckFailedError
from phase_ovm.core.utils import ensure_writable_dir
from phase_ovm.logger import logger
from phase_ovm.modules.fock import density_matrix, parse_state
from phase_ovm.modules.phasespace import (
    PhaseSpaceGrid,
    QuadratureSpec,
    gaussian_coarse_grain,
    husimi_grid,
    uniform_thetas,
    wigner_grid,
)
from phase_ovm.modules.wigner_phase import (
    commutator_table,
    eigen_ratio_spread,
    eigenfunction_residual,
    fit_kernel_constant,
    rho_w_matrix,
    rho_w_matrix_oracle,
    wigner_phase_distribution,
)
from phase_ovm.modules.q_phase import (
    coherent_discrepancy_table,
    q_phase_distribution,
    rho_q_matrix,
    rho_q_matrix_oracle,
)
from phase_ovm.modules.dilation import (
    CONSTANT_PRODUCT_SCHEDULE,
    FIXED_BETA_SCHEDULE,
    dilation_convergence,
)

from ._schemas import (
    SCHEMA_VERSION,
    OUTPUT_SCHEMAS,
    COMMUTATOR_COLUMNS,
    CONVERGENCE_COLUMNS,
    DISCREPANCY_COLUMNS,
    EIGENCHECK_COLUMNS,
    CheckReport,
    CheckRuleEnum,
)
from ._artifacts import (
    emit_report,
    read_grid,
    write_distribution,
    write_gnuplot_script,
    write_grid,
    write_matrix,
    write_rows,
)
from ._checks import EIGEN_LAMBDAS, COMMUTATOR_DIMS, run_checks, check_conjugate


class ScheduleEnum(str, Enum):
    fixed_beta = "fixed-beta"
    constant_product = "constant-product"


app = typer.Typer(
    name="phase-ovm",
    help="Wigner phase OVM and Q phase POVM toolkit: matrices, phase distributions and verification artifacts.",
    add_completion=False,
    no_args_is_help=True,
)
console = Console()
err_console = Console(stderr=True)


## Shared run options; unset values fall back to `configs/run.yml`:
_DIM_OPTION = typer.Option(None, "--dim", help="Truncation dimension.")
_OUTPUT_DIR_OPTION = typer.Option(None, "--output-dir", "-o", help="Artifact directory.")
_FORMAT_OPTION = typer.Option(None, "--format", "-f", help="Artifact format.")
_THREADS_OPTION = typer.Option(None, "--threads", help="Worker threads, capped by PHASE_OVM_THREADS.")
_THETA_NODES_OPTION = typer.Option(None, "--theta-nodes", help="Number of uniform phase angles.")
_GRID_BOUND_OPTION = typer.Option(None, "--grid-bound", help="Symmetric grid bound on both axes.")
_GRID_NODES_OPTION = typer.Option(None, "--grid-nodes", help="Grid nodes per axis.")
_QUAD_NODES_OPTION = typer.Option(None, "--quad-nodes", help="Radial quadrature nodes.")
_QUAD_RULE_OPTION = typer.Option(None, "--quad-rule", help="Radial quadrature rule.")
_R_MAX_OPTION = typer.Option(None, "--r-max", help="Radial cutoff, defaults to sqrt(2*dim)+4.")
_STATE_OPTION = typer.Option(..., "--state", "-s", help="State: 'fock:n', 'coherent:re,im' or 'cat:re,im'.")


def _help(command: str, summary: str) -> str:
    return f"{summary}\n\nOutput (schema v{SCHEMA_VERSION}): {OUTPUT_SCHEMAS[command]}"


def _resolve_run(
    dim: Optional[int] = None,
    output_dir: Optional[str] = None,
    fmt: Optional[OutputFormatEnum] = None,
    threads: Optional[int] = None,
    theta_nodes: Optional[int] = None,
    grid_bound: Optional[float] = None,
    grid_nodes: Optional[int] = None,
    quad_nodes: Optional[int] = None,
    quad_rule: Optional[QuadratureRuleEnum] = None,
    r_max: Optional[float] = None,
) -> FrozenRunConfig:
    """Merge command-line overrides into the configured run and check the output directory."""

    _values: Dict[str, Any] = config.run.model_dump()
    _overrides = {
        "dim": dim,
        "output_dir": output_dir,
        "format": fmt,
        "threads": threads,
        "theta_nodes": theta_nodes,
    }
    _values.update({_key: _val for _key, _val in _overrides.items() if _val is not None})

    if grid_bound is not None:
        _values["grid"].update(
            {"x_min": -grid_bound, "x_max": grid_bound, "p_min": -grid_bound, "p_max": grid_bound}
        )
    if grid_nodes is not None:
        _values["grid"].update({"n_x": grid_nodes, "n_p": grid_nodes})

    _quad_overrides = {"nodes": quad_nodes, "rule": quad_rule, "r_max": r_max}
    _values["quadrature"].update({_key: _val for _key, _val in _quad_overrides.items() if _val is not None})

    _run = FrozenRunConfig(**_values)
    try:
        ensure_writable_dir(_run.output_dir)
    except OSError as err:
        raise BasePhaseOVMError(
            f"Output directory '{_run.output_dir}' is not usable: {err.strerror or err}!",
            error_enum=ErrorCodeEnum.IO_ERROR,
            detail=_run.output_dir,
        )

    return _run


def _grid(run: FrozenRunConfig) -> PhaseSpaceGrid:
    return PhaseSpaceGrid(**run.grid.model_dump())


def _quadrature(run: FrozenRunConfig) -> QuadratureSpec:
    return QuadratureSpec(
        rule=run.quadrature.rule, nodes=run.quadrature.nodes, r_max=run.resolved_r_max()
    )


def _parse_complex(text: str) -> complex:
    """`re` or `re,im` as a complex number."""

    _parts = [_part.strip() for _part in text.split(",")]
    if len(_parts) not in (1, 2):
        raise typer.BadParameter(f"'{text}' is not 're' or 're,im'!")

    try:
        _values = [float(_part) for _part in _parts]
    except ValueError:
        raise typer.BadParameter(f"'{text}' is not 're' or 're,im'!")

    return complex(_values[0], _values[1] if len(_values) == 2 else 0.0)


def _handle_errors(func: Callable) -> Callable:
    """Map toolkit errors to their exit codes.

    Rejected flag values exit with 2; anything unexpected exits with 1.
    """

    @functools.wraps(func)
    def _wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (typer.Exit, typer.BadParameter):
            raise
        except BasePhaseOVMError as err:
            err_console.print(f"[red]{err.error['name']}[/red]: {escape(err.message)}")
            raise typer.Exit(code=err.exit_code)
        except ValidationError as err:
            err_console.print(f"[red]USAGE_ERROR[/red]: {escape(err.errors()[0]['msg'])}")
            raise typer.Exit(code=ErrorCodeEnum.USAGE_ERROR.value.exit_code)
        except OSError as err:
            err_console.print(f"[red]IO_ERROR[/red]: {escape(str(err))}")
            raise typer.Exit(code=ErrorCodeEnum.IO_ERROR.value.exit_code)
        except Exception as err:
            logger.exception(f"Unexpected failure in '{func.__name__}':")
            err_console.print(f"[red]INTERNAL_CONSISTENCY[/red]: {escape(str(err))}")
            raise typer.Exit(code=ErrorCodeEnum.INTERNAL_CONSISTENCY.value.exit_code)

    return _wrapper


def _print_reports(reports: List[CheckReport], title: str) -> None:
    _table = Table(title=title, box=box.SIMPLE_HEAVY)
    _table.add_column("Check")
    _table.add_column("Status")
    _table.add_column("Measured", justify="right")
    _table.add_column("Tolerance", justify="right")
    _table.add_column("Runtime (s)", justify="right")
    for _report in reports:
        _status = "[green]pass[/green]" if _report.passed else "[red]fail[/red]"
        _table.add_row(
            escape(_report.name),
            _status,
            f"{_report.measured:.3e}",
            f"{_report.tolerance:.1e}",
            f"{_report.runtime_s:.2f}",
        )
    console.print(_table)


def _finish_reports(reports: List[CheckReport], run: FrozenRunConfig, title: str) -> None:
    _print_reports(reports, title)
    _path = emit_report(reports, run.format, run.output_dir)
    logger.info(f"Wrote check report to '{_path}'.")

    _failed = [_report.name for _report in reports if not _report.passed]
    if _failed:
        err_console.print(f"[red]Failed checks[/red]: {', '.join(_failed)}")
        raise CheckFailedError(f"{len(_failed)} of {len(reports)} checks failed!", detail=_failed)


@app.callback(invoke_without_command=True)
def _root_callback(
    ctx: typer.Context,
    version: bool = typer.Option(False, "--version", help="Show version and exit."),
) -> None:
    if version:
        console.print(f"phase-ovm {__version__} (artifact schema v{SCHEMA_VERSION})")
        raise typer.Exit()

    if ctx.invoked_subcommand is None:
        console.print(ctx.get_help())
        raise typer.Exit(code=ErrorCodeEnum.USAGE_ERROR.value.exit_code)


@app.command(
    "state-dist",
    help=_help("state-dist", "Sample the Wigner (w) or Husimi (q) function of a state on the grid."),
)
@_handle_errors
def state_dist(
    state: str = _STATE_OPTION,
    kind: PhaseKindEnum = typer.Option(PhaseKindEnum.w, "--kind", "-k", help="w: Wigner, q: Husimi."),
    dim: Optional[int] = _DIM_OPTION,
    grid_bound: Optional[float] = _GRID_BOUND_OPTION,
    grid_nodes: Optional[int] = _GRID_NODES_OPTION,
    output_dir: Optional[str] = _OUTPUT_DIR_OPTION,
    fmt: Optional[OutputFormatEnum] = _FORMAT_OPTION,
    threads: Optional[int] = _THREADS_OPTION,
) -> None:
    _run = _resolve_run(
        dim=dim, output_dir=output_dir, fmt=fmt, threads=threads, grid_bound=grid_bound, grid_nodes=grid_nodes
    )
    logger.info(f"Sampling '{kind.value}' grid of '{state}' at dim={_run.dim}...")

    _rho = density_matrix(parse_state(state, _run.dim))
    _sampler = wigner_grid if kind == PhaseKindEnum.w else husimi_grid
    _sampled = _sampler(_rho, _grid(_run), _run.resolved_threads())
    _path = write_grid(_sampled, _run.output_dir, f"{kind.value}_grid", _run.format)
    logger.success(f"Wrote '{_path}' (mass {_sampled.mass():.9f}, leakage {_sampled.leakage:.2e}).")


@app.command(
    "phase-dist",
    help=_help("phase-dist", "Phase distribution Tr[rho M(theta)] of a state for the Wigner (w) or Q (q) phase operator."),
)
@_handle_errors
def phase_dist(
    state: str = _STATE_OPTION,
    kind: PhaseKindEnum = typer.Option(PhaseKindEnum.q, "--kind", "-k", help="w: Wigner phase OVM, q: Q phase POVM."),
    dim: Optional[int] = _DIM_OPTION,
    theta_nodes: Optional[int] = _THETA_NODES_OPTION,
    output_dir: Optional[str] = _OUTPUT_DIR_OPTION,
    fmt: Optional[OutputFormatEnum] = _FORMAT_OPTION,
) -> None:
    _run = _resolve_run(dim=dim, output_dir=output_dir, fmt=fmt, theta_nodes=theta_nodes)
    logger.info(f"Computing '{kind.value}' phase distribution of '{state}' at dim={_run.dim}...")

    _rho = density_matrix(parse_state(state, _run.dim))
    _thetas = uniform_thetas(_run.theta_nodes)
    if kind == PhaseKindEnum.w:
        _distribution = wigner_phase_distribution(_rho, _thetas)
    else:
        _distribution = q_phase_distribution(_rho, _thetas)

    _path = write_distribution(_distribution, _run.output_dir, f"phase_{kind.value}", _run.format)
    logger.success(
        f"Wrote '{_path}' (total {_distribution.total():.12f}, min {_distribution.min():.3e})."
    )


def _matrix_command(
    name: str,
    stem: str,
    builder: Callable,
    oracle_builder: Callable,
    theta: float,
    oracle: bool,
    run: FrozenRunConfig,
) -> None:
    logger.info(f"Building {name} at theta={theta}, dim={run.dim}{' (quadrature)' if oracle else ''}...")
    if oracle:
        _matrix = oracle_builder(theta, run.dim, _quadrature(run))
    else:
        _matrix = builder(theta, run.dim)

    _path = write_matrix(_matrix.entries, theta, run.output_dir, stem, run.format)
    logger.success(f"Wrote '{_path}'.")


@app.command("ovm-matrix", help=_help("ovm-matrix", "Wigner phase operator matrix rho_W(theta)."))
@_handle_errors
def ovm_matrix(
    theta: float = typer.Option(0.0, "--theta", help="Phase angle in radians."),
    oracle: bool = typer.Option(False, "--oracle", help="Use the radial Moyal quadrature instead of the closed form."),
    dim: Optional[int] = _DIM_OPTION,
    quad_nodes: Optional[int] = _QUAD_NODES_OPTION,
    quad_rule: Optional[QuadratureRuleEnum] = _QUAD_RULE_OPTION,
    r_max: Optional[float] = _R_MAX_OPTION,
    output_dir: Optional[str] = _OUTPUT_DIR_OPTION,
    fmt: Optional[OutputFormatEnum] = _FORMAT_OPTION,
) -> None:
    _run = _resolve_run(
        dim=dim, output_dir=output_dir, fmt=fmt, quad_nodes=quad_nodes, quad_rule=quad_rule, r_max=r_max
    )
    _matrix_command("rho_W", "rho_w", rho_w_matrix, rho_w_matrix_oracle, theta, oracle, _run)


@app.command("povm-matrix", help=_help("povm-matrix", "Q phase operator matrix rho_Q(theta)."))
@_handle_errors
def povm_matrix(
    theta: float = typer.Option(0.0, "--theta", help="Phase angle in radians."),
    oracle: bool = typer.Option(False, "--oracle", help="Use the coherent-state radial quadrature instead of the closed form."),
    dim: Optional[int] = _DIM_OPTION,
    quad_nodes: Optional[int] = _QUAD_NODES_OPTION,
    quad_rule: Optional[QuadratureRuleEnum] = _QUAD_RULE_OPTION,
    r_max: Optional[float] = _R_MAX_OPTION,
    output_dir: Optional[str] = _OUTPUT_DIR_OPTION,
    fmt: Optional[OutputFormatEnum] = _FORMAT_OPTION,
) -> None:
    _run = _resolve_run(
        dim=dim, output_dir=output_dir, fmt=fmt, quad_nodes=quad_nodes, quad_rule=quad_rule, r_max=r_max
    )
    _matrix_command("rho_Q", "rho_q", rho_q_matrix, rho_q_matrix_oracle, theta, oracle, _run)


@app.command(
    "coarse-grain",
    help=_help("coarse-grain", "Gaussian coarse-graining of a Wigner grid, compared with the Husimi grid."),
)
@_handle_errors
def coarse_grain(
    state: Optional[str] = typer.Option(None, "--state", "-s", help="State whose Wigner grid is smoothed."),
    input_path: Optional[str] = typer.Option(None, "--input", "-i", help="Wigner grid CSV/JSON to smooth instead."),
    width: float = typer.Option(HUSIMI_FILTER_WIDTH, "--width", help="Filter standard deviation per axis."),
    dim: Optional[int] = _DIM_OPTION,
    grid_bound: Optional[float] = _GRID_BOUND_OPTION,
    grid_nodes: Optional[int] = _GRID_NODES_OPTION,
    output_dir: Optional[str] = _OUTPUT_DIR_OPTION,
    fmt: Optional[OutputFormatEnum] = _FORMAT_OPTION,
    threads: Optional[int] = _THREADS_OPTION,
) -> None:
    if (state is None) == (input_path is None):
        raise typer.BadParameter("Give exactly one of '--state' or '--input'!")

    _run = _resolve_run(
        dim=dim, output_dir=output_dir, fmt=fmt, threads=threads, grid_bound=grid_bound, grid_nodes=grid_nodes
    )

    if input_path is not None:
        logger.info(f"Smoothing Wigner grid from '{input_path}'...")
        _smoothed = gaussian_coarse_grain(read_grid(input_path), width)
        _path = write_grid(_smoothed, _run.output_dir, "coarse_grained_grid", _run.format)
        logger.success(f"Wrote '{_path}'.")
        return

    logger.info(f"Coarse-graining the Wigner grid of '{state}' at dim={_run.dim}...")
    _rho = density_matrix(parse_state(state, _run.dim))
    _phase_grid = _grid(_run)
    _smoothed = gaussian_coarse_grain(wigner_grid(_rho, _phase_grid, _run.resolved_threads()), width)
    _husimi = husimi_grid(_rho, _phase_grid, _run.resolved_threads())
    _path = write_grid(_smoothed, _run.output_dir, "coarse_grained_grid", _run.format)
    logger.success(f"Wrote '{_path}'.")

    _error = float(abs(_smoothed.values - _husimi.values).max())
    _report = CheckReport.evaluate("coarse_grain_matches_husimi", _error, 2e-6, 0.0)
    if not math.isclose(width, HUSIMI_FILTER_WIDTH):
        logger.warning(f"Filter width {width} differs from 1/sqrt(2); the Husimi comparison is informative only.")
    _finish_reports([_report], _run, "Coarse-graining")


@app.command(
    "eigencheck",
    help=_help("eigencheck", "Residuals of the Wigner phase eigenfunctions cos(px) / sin(px)."),
)
@_handle_errors
def eigencheck(
    lambdas: Optional[List[float]] = typer.Option(None, "--lambda", "-l", help="Eigenvalues; repeat the flag."),
    half_width: float = typer.Option(5.0, "--axis-half-width", help="Half width of the position axis."),
    nodes: int = typer.Option(1001, "--axis-nodes", help="Position axis nodes."),
    output_dir: Optional[str] = _OUTPUT_DIR_OPTION,
    fmt: Optional[OutputFormatEnum] = _FORMAT_OPTION,
) -> None:
    _run = _resolve_run(output_dir=output_dir, fmt=fmt)
    _lambdas = list(lambdas) if lambdas else list(EIGEN_LAMBDAS)
    _axis = np.linspace(-half_width, half_width, nodes)

    _fit = fit_kernel_constant()
    logger.info(
        f"Kernel constant {_fit.constant:.12f}, 1/constant = {_fit.eigen_constant:.9f} "
        f"(4*pi = {4.0 * math.pi:.9f}), fit spread {_fit.spread:.2e}."
    )

    _records = []
    _reports = []
    _checks = []
    for _lambda in _lambdas:
        _check = eigenfunction_residual(_lambda, _axis)
        _checks.append(_check)
        _records.append(
            {
                "lambda": _lambda,
                "parity": _check.eigenstate.parity.value,
                "p": _check.eigenstate.p,
                "de_residual": _check.de_residual,
                "kernel_eigenvalue": _check.kernel_eigenvalue,
                "ratio": _check.ratio,
                "kernel_residual": _check.kernel_residual,
            }
        )
        _reports.append(CheckReport.evaluate(f"de_residual[{_lambda:+.6g}]", _check.de_residual, 1e-8, 0.0))
        _reports.append(
            CheckReport.evaluate(f"kernel_fit_residual[{_lambda:+.6g}]", _check.kernel_residual, 1e-2, 0.0)
        )

    _reports.append(CheckReport.evaluate("kernel_ratio_spread", eigen_ratio_spread(_checks), 1e-2, 0.0))
    _reports.append(
        CheckReport.evaluate(
            "kernel_ratio_mean",
            float(np.mean([_check.ratio for _check in _checks])),
            0.0,
            0.0,
            rule=CheckRuleEnum.REPORT,
        )
    )

    _path = write_rows(_records, EIGENCHECK_COLUMNS, _run.output_dir, "eigencheck", _run.format)
    logger.success(f"Wrote '{_path}'.")
    _finish_reports(_reports, _run, "Eigenfunction checks")


@app.command(
    "conjugate-check",
    help=_help("conjugate-check", "Block deviation of [rho_W(0), eta_W(0)] from i*I across truncations."),
)
@_handle_errors
def conjugate_check(
    dims: Optional[List[int]] = typer.Option(None, "--dims", help="Truncation dimensions; repeat the flag."),
    block: int = typer.Option(8, "--block", help="Leading block size, at most dim/4."),
    dim: Optional[int] = _DIM_OPTION,
    output_dir: Optional[str] = _OUTPUT_DIR_OPTION,
    fmt: Optional[OutputFormatEnum] = _FORMAT_OPTION,
) -> None:
    _run = _resolve_run(dim=dim, output_dir=output_dir, fmt=fmt)
    _dims = list(dims) if dims else list(COMMUTATOR_DIMS)

    _rows = commutator_table(_dims, block=block)
    _path = write_rows(_rows, COMMUTATOR_COLUMNS, _run.output_dir, "commutator", _run.format)
    logger.success(f"Wrote '{_path}'.")
    _finish_reports(check_conjugate(_run, dims=_dims, block=block), _run, "Conjugate commutator")


def _schedule_pairs(
    schedule: ScheduleEnum, taus: Optional[List[float]], betas: Optional[List[str]]
) -> List[Tuple[float, complex]]:
    if not taus:
        if betas:
            raise typer.BadParameter("'--beta' needs matching '--tau' values!")
        if schedule == ScheduleEnum.fixed_beta:
            return list(FIXED_BETA_SCHEDULE)
        return list(CONSTANT_PRODUCT_SCHEDULE)

    _betas = [_parse_complex(_beta) for _beta in (betas or [])]
    if len(_betas) == 1:
        _betas = _betas * len(taus)
    if len(_betas) != len(taus):
        raise typer.BadParameter("Give one '--beta' or one per '--tau'!")

    return list(zip(taus, _betas))


@app.command(
    "dilation-sweep",
    help=_help("dilation-sweep", "Distance of the beam-splitter dilation Pi_tau(beta) to rho_Q(theta)."),
)
@_handle_errors
def dilation_sweep(
    theta: float = typer.Option(0.0, "--theta", help="Phase angle in radians."),
    schedule: ScheduleEnum = typer.Option(ScheduleEnum.fixed_beta, "--schedule", help="Built-in (tau, beta) schedule."),
    taus: Optional[List[float]] = typer.Option(None, "--tau", help="Custom coupling angles; repeat the flag."),
    betas: Optional[List[str]] = typer.Option(None, "--beta", help="Ancilla amplitudes 're,im'; one or one per tau."),
    dim: int = typer.Option(24, "--dim", help="Truncation dimension."),
    quad_nodes: Optional[int] = _QUAD_NODES_OPTION,
    output_dir: Optional[str] = _OUTPUT_DIR_OPTION,
    fmt: Optional[OutputFormatEnum] = _FORMAT_OPTION,
) -> None:
    _run = _resolve_run(dim=dim, output_dir=output_dir, fmt=fmt, quad_nodes=quad_nodes)
    _pairs = _schedule_pairs(schedule, taus, betas)
    logger.info(f"Sweeping {len(_pairs)} (tau, beta) pairs at theta={theta}, dim={_run.dim}...")

    _rows = dilation_convergence(theta, _pairs, _run.dim, _quadrature(_run))
    for _row in _rows:
        logger.debug(f"tau={_row.tau:.4f}, |beta|*sin(tau)={_row.beta_sin_tau:.4f}: distance {_row.distance:.3e}")

    _path = write_rows(_rows, CONVERGENCE_COLUMNS, _run.output_dir, "dilation", _run.format)
    logger.success(f"Wrote '{_path}'.")


@app.command(
    "coherent-table",
    help=_help("coherent-table", "Coherent-state Q phase: corrected closed form, printed display and quadrature."),
)
@_handle_errors
def coherent_table(
    alpha: str = typer.Option("2", "--alpha", help="Coherent amplitude 're,im'."),
    count: int = typer.Option(16, "--count", help="Number of uniform phase angles."),
    output_dir: Optional[str] = _OUTPUT_DIR_OPTION,
    fmt: Optional[OutputFormatEnum] = _FORMAT_OPTION,
) -> None:
    _run = _resolve_run(output_dir=output_dir, fmt=fmt)
    _rows = coherent_discrepancy_table(_parse_complex(alpha), uniform_thetas(count))
    _path = write_rows(_rows, DISCREPANCY_COLUMNS, _run.output_dir, "coherent_discrepancy", _run.format)
    logger.success(f"Wrote '{_path}'.")


@app.command(
    "cat-demo",
    help=_help("cat-demo", "Even cat state grids and phase distributions with a gnuplot script."),
)
@_handle_errors
def cat_demo(
    gamma: str = typer.Option("2", "--gamma", "-g", help="Cat amplitude 're,im'."),
    dim: Optional[int] = _DIM_OPTION,
    theta_nodes: Optional[int] = _THETA_NODES_OPTION,
    grid_bound: Optional[float] = _GRID_BOUND_OPTION,
    grid_nodes: Optional[int] = _GRID_NODES_OPTION,
    output_dir: Optional[str] = _OUTPUT_DIR_OPTION,
    fmt: Optional[OutputFormatEnum] = _FORMAT_OPTION,
    threads: Optional[int] = _THREADS_OPTION,
) -> None:
    _run = _resolve_run(
        dim=dim,
        output_dir=output_dir,
        fmt=fmt,
        threads=threads,
        theta_nodes=theta_nodes,
        grid_bound=grid_bound,
        grid_nodes=grid_nodes,
    )
    _gamma = _parse_complex(gamma)
    logger.info(f"Building cat-state data for gamma={_gamma} at dim={_run.dim}...")

    _rho = density_matrix(parse_state(f"cat:{_gamma.real},{_gamma.imag}", _run.dim))
    _phase_grid = _grid(_run)
    _threads = _run.resolved_threads()
    _thetas = uniform_thetas(_run.theta_nodes)

    _wigner = wigner_grid(_rho, _phase_grid, _threads)
    _husimi = husimi_grid(_rho, _phase_grid, _threads)
    _p_w = wigner_phase_distribution(_rho, _thetas)
    _p_q = q_phase_distribution(_rho, _thetas)

    _paths = [
        write_grid(_wigner, _run.output_dir, "wigner_grid", _run.format),
        write_grid(_husimi, _run.output_dir, "husimi_grid", _run.format),
        write_distribution(_p_w, _run.output_dir, "phase_w", _run.format),
        write_distribution(_p_q, _run.output_dir, "phase_q", _run.format),
        write_gnuplot_script(_run.output_dir, _run.format),
    ]
    logger.info(f"min W grid {float(_wigner.values.min()):.3e}, min P^W {_p_w.min():.3e}, min P^Q {_p_q.min():.3e}")
    logger.success(f"Wrote {len(_paths)} files to '{_run.output_dir}'.")


@app.command("verify-all", help=_help("verify-all", "Run every verification check and write the report."))
@_handle_errors
def verify_all(
    dim: Optional[int] = _DIM_OPTION,
    theta_nodes: Optional[int] = _THETA_NODES_OPTION,
    grid_bound: Optional[float] = _GRID_BOUND_OPTION,
    grid_nodes: Optional[int] = _GRID_NODES_OPTION,
    quad_nodes: Optional[int] = _QUAD_NODES_OPTION,
    output_dir: Optional[str] = _OUTPUT_DIR_OPTION,
    fmt: Optional[OutputFormatEnum] = _FORMAT_OPTION,
    threads: Optional[int] = _THREADS_OPTION,
) -> None:
    _run = _resolve_run(
        dim=dim,
        output_dir=output_dir,
        fmt=fmt,
        threads=threads,
        theta_nodes=theta_nodes,
        grid_bound=grid_bound,
        grid_nodes=grid_nodes,
        quad_nodes=quad_nodes,
    )
    logger.info(f"Running all checks at dim={_run.dim}...")
    _reports = run_checks(_run)
    _finish_reports(_reports, _run, f"phase-ovm {__version__} verification (dim={_run.dim})")
    logger.success("All checks passed.")


def run_command(argv: Optional[List[str]] = None) -> int:
    """Run the command line with `argv` and return the process exit code."""

    try:
        app(args=argv, prog_name="phase-ovm")
    except SystemExit as err:
        if err.code is None:
            return 0
        if isinstance(err.code, int):
            return err.code
        return 1

    return 0


__all__ = ["app", "run_command", "ScheduleEnum"]
