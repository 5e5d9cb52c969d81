# -*- coding: utf-8 -*-

import os
import json
from typing import Any, Dict, List, Sequence, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, validate_call

from phase_ovm.core.constants import OutputFormatEnum, ErrorCodeEnum
from phase_ovm.core.exceptions import BasePhaseOVMError, ContractViolationError, UsageError
from phase_ovm.core.utils import write_json_file, write_text_file
from phase_ovm.logger import logger
from phase_ovm.modules.phasespace import PhaseDistribution, PhaseSpaceGrid

from ._schemas import (
    SCHEMA_VERSION,
    REPORT_COLUMNS,
    GRID_COLUMNS,
    MATRIX_COLUMNS,
    DISTRIBUTION_COLUMNS,
    CheckReport,
)


CSV_FLOAT_FORMAT = "%.17g"


def _io_error(path: str, err: OSError) -> BasePhaseOVMError:
    return BasePhaseOVMError(
        f"Failed to write '{path}': {err.strerror or err}!",
        error_enum=ErrorCodeEnum.IO_ERROR,
        detail=path,
    )


def _write_csv(frame: pd.DataFrame, path: str) -> str:
    try:
        _dir = os.path.dirname(path)
        if _dir:
            os.makedirs(_dir, exist_ok=True)
        frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    except OSError as err:
        raise _io_error(path, err)

    logger.debug(f"Wrote '{path}' file.")
    return path


def _write_json(data: Dict[str, Any], path: str) -> str:
    try:
        return write_json_file(path, {"schema_version": SCHEMA_VERSION, **data})
    except OSError as err:
        raise _io_error(path, err)


def _target(out_dir: str, stem: str, fmt: OutputFormatEnum) -> str:
    return os.path.join(out_dir, f"{stem}.{fmt.value}")


@validate_call
def emit_report(reports: List[CheckReport], fmt: OutputFormatEnum, out_dir: str, stem: str = "report") -> str:
    """Write check reports as `report.csv` or `report.json` with a fixed field order.

    Args:
        reports (List[CheckReport], required): Nonempty list of checks.
        fmt     (OutputFormatEnum , required): `csv` or `json`.
        out_dir (str              , required): Output directory.
        stem    (str              , optional): File name without extension. Defaults to "report".

    Raises:
        ContractViolationError: If `reports` is empty.
        BasePhaseOVMError     : With the IO_ERROR code if the file can't be written.

    Returns:
        str: Written file path.
    """

    if not reports:
        raise ContractViolationError("Refusing to emit an empty check report!")

    _records = [_report.model_dump(mode="json") for _report in reports]
    _records = [{_key: _record[_key] for _key in REPORT_COLUMNS} for _record in _records]

    _path = _target(out_dir, stem, fmt)
    if fmt == OutputFormatEnum.json:
        return _write_json({"checks": _records}, _path)

    return _write_csv(pd.DataFrame(_records, columns=REPORT_COLUMNS), _path)


def write_distribution(
    distribution: PhaseDistribution, out_dir: str, stem: str, fmt: OutputFormatEnum
) -> str:
    _path = _target(out_dir, stem, fmt)
    if fmt == OutputFormatEnum.json:
        return _write_json(
            {
                "thetas": distribution.thetas.tolist(),
                "values": distribution.values.tolist(),
            },
            _path,
        )

    _frame = pd.DataFrame(
        {"theta": distribution.thetas, "value": distribution.values},
        columns=DISTRIBUTION_COLUMNS,
    )
    return _write_csv(_frame, _path)


def write_grid(grid: PhaseSpaceGrid, out_dir: str, stem: str, fmt: OutputFormatEnum) -> str:
    """Grid values in x-major order; CSV rows are (x, p, value)."""

    if grid.values is None:
        raise ContractViolationError("Grid carries no values to write!")

    _path = _target(out_dir, stem, fmt)
    if fmt == OutputFormatEnum.json:
        return _write_json(
            {
                "x_min": grid.x_min,
                "x_max": grid.x_max,
                "p_min": grid.p_min,
                "p_max": grid.p_max,
                "n_x": grid.n_x,
                "n_p": grid.n_p,
                "leakage": grid.leakage,
                "values": grid.values.real.tolist(),
            },
            _path,
        )

    _x, _p = grid.mesh()
    _frame = pd.DataFrame(
        {
            "x": _x.reshape(-1),
            "p": _p.reshape(-1),
            "value": grid.values.real.reshape(-1),
        },
        columns=GRID_COLUMNS,
    )
    return _write_csv(_frame, _path)


@validate_call
def read_grid(path: str) -> PhaseSpaceGrid:
    """Load a grid written by `write_grid` from CSV or JSON.

    Raises:
        BasePhaseOVMError: With the IO_ERROR code if the file can't be read.
        UsageError       : If the CSV rows don't form a complete x-major grid.
    """

    try:
        if path.endswith(".json"):
            with open(path, "r", encoding="utf-8") as _file:
                _data = json.load(_file)
            return PhaseSpaceGrid(
                x_min=_data["x_min"],
                x_max=_data["x_max"],
                p_min=_data["p_min"],
                p_max=_data["p_max"],
                n_x=_data["n_x"],
                n_p=_data["n_p"],
                leakage=_data.get("leakage", 0.0),
                values=np.asarray(_data["values"], dtype=np.float64),
            )

        _frame = pd.read_csv(path, float_precision="round_trip")
    except OSError as err:
        raise BasePhaseOVMError(
            f"Failed to read '{path}': {err.strerror or err}!",
            error_enum=ErrorCodeEnum.IO_ERROR,
            detail=path,
        )
    except (KeyError, json.JSONDecodeError, pd.errors.ParserError) as err:
        raise UsageError(f"'{path}' is not a readable grid file: {err}!")

    if list(_frame.columns) != GRID_COLUMNS:
        raise UsageError(f"Grid CSV columns must be {GRID_COLUMNS}, got {list(_frame.columns)}!")

    _xs = np.unique(_frame["x"].to_numpy())
    _ps = np.unique(_frame["p"].to_numpy())
    if _xs.size * _ps.size != len(_frame):
        raise UsageError(f"'{path}' doesn't hold a complete {_xs.size}x{_ps.size} grid!")

    return PhaseSpaceGrid(
        x_min=float(_xs[0]),
        x_max=float(_xs[-1]),
        p_min=float(_ps[0]),
        p_max=float(_ps[-1]),
        n_x=_xs.size,
        n_p=_ps.size,
        values=_frame["value"].to_numpy(dtype=np.float64).reshape(_xs.size, _ps.size),
    )


def write_matrix(
    entries: np.ndarray, theta: float, out_dir: str, stem: str, fmt: OutputFormatEnum
) -> str:
    """Matrix entries row-major; CSV rows are (n, m, re, im)."""

    _dim = entries.shape[0]
    _path = _target(out_dir, stem, fmt)
    if fmt == OutputFormatEnum.json:
        _pairs = np.stack([entries.real.reshape(-1), entries.imag.reshape(-1)], axis=1)
        return _write_json({"theta": theta, "dim": _dim, "entries": _pairs.tolist()}, _path)

    _n, _m = np.indices((_dim, _dim))
    _frame = pd.DataFrame(
        {
            "n": _n.reshape(-1),
            "m": _m.reshape(-1),
            "re": entries.real.reshape(-1),
            "im": entries.imag.reshape(-1),
        },
        columns=MATRIX_COLUMNS,
    )
    return _write_csv(_frame, _path)


def write_rows(
    rows: Sequence[Union[BaseModel, Dict[str, Any]]],
    columns: List[str],
    out_dir: str,
    stem: str,
    fmt: OutputFormatEnum,
) -> str:
    """Write flat rows (pydantic models or dicts) as a table with `columns` in order."""

    _records = []
    for _row in rows:
        _data = _row.model_dump(mode="json") if isinstance(_row, BaseModel) else _row
        _records.append({_column: _data[_column] for _column in columns})

    _path = _target(out_dir, stem, fmt)
    if fmt == OutputFormatEnum.json:
        return _write_json({"rows": _records}, _path)

    return _write_csv(pd.DataFrame(_records, columns=columns), _path)


def write_gnuplot_script(out_dir: str, fmt: OutputFormatEnum) -> str:
    """Gnuplot script rendering the cat-state grids and both phase distributions."""

    if fmt == OutputFormatEnum.json:
        _note = "# Data files were written as JSON; rerun cat-demo with --format csv to plot them.\n"
    else:
        _note = ""

    _script = (
        _note
        + "set datafile separator ','\n"
        + "set terminal pngcairo size 1200,800\n"
        + "set output 'fig1.png'\n"
        + "set multiplot layout 2,2\n"
        + "set view map\n"
        + "set title 'Husimi Q'\n"
        + "splot 'husimi_grid.csv' every ::1 using 1:2:3 with image notitle\n"
        + "set title 'Wigner W'\n"
        + "splot 'wigner_grid.csv' every ::1 using 1:2:3 with image notitle\n"
        + "unset view\n"
        + "set title 'Phase distributions'\n"
        + "set xlabel 'theta'\n"
        + "plot 'phase_w.csv' every ::1 using 1:2 with lines title 'P^W', \\\n"
        + "     'phase_q.csv' every ::1 using 1:2 with lines title 'P^Q'\n"
        + "set title 'Zoom near the minimum'\n"
        + "set xrange [1.2:1.95]\n"
        + "plot 'phase_w.csv' every ::1 using 1:2 with lines title 'P^W', \\\n"
        + "     'phase_q.csv' every ::1 using 1:2 with lines title 'P^Q', 0 notitle\n"
        + "unset multiplot\n"
    )

    _path = os.path.join(out_dir, "fig1.gp")
    try:
        return write_text_file(file_path=_path, content=_script)
    except OSError as err:
        raise _io_error(_path, err)


__all__ = [
    "CSV_FLOAT_FORMAT",
    "emit_report",
    "write_distribution",
    "write_grid",
    "read_grid",
    "write_matrix",
    "write_rows",
    "write_gnuplot_script",
]
