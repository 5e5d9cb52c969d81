# -*- coding: utf-8 -*-

import os
import importlib
import json

import numpy as np
import pandas as pd
import pytest

from phase_ovm.core.constants import TWO_PI, CheckStatusEnum, OutputFormatEnum
from phase_ovm.cli import CheckReport, app, emit_report, run_command
from phase_ovm.core.exceptions import ContractViolationError


## `phase_ovm.cli.app` resolves to the Typer object, not the module:
app_module = importlib.import_module("phase_ovm.cli.app")


def _invoke(runner, *args: str):
    return runner.invoke(app, list(args))


def test_version(runner):
    _result = _invoke(runner, "--version")
    assert _result.exit_code == 0
    assert "phase-ovm" in _result.output


@pytest.mark.parametrize(
    "command, token",
    [
        ("state-dist", "_grid.csv"),
        ("ovm-matrix", "rho_w.csv"),
        ("povm-matrix", "rho_q.csv"),
        ("coarse-grain", "coarse_grained_grid.csv"),
        ("verify-all", "report.csv"),
    ],
)
def test_help_documents_output_schema(runner, command, token):
    _result = _invoke(runner, command, "--help")
    assert _result.exit_code == 0
    assert token in _result.output


def test_unknown_command_is_usage_error():
    assert run_command(["no-such-command"]) == 2


def test_unknown_flag_is_usage_error(out_dir):
    assert run_command(["ovm-matrix", "--no-such-flag", "--output-dir", out_dir]) == 2


def test_malformed_state_is_usage_error(runner, out_dir):
    _result = _invoke(runner, "phase-dist", "--state", "squeezed:1", "--output-dir", out_dir)
    assert _result.exit_code == 2


def test_invalid_dimension_is_usage_error(runner, out_dir):
    _result = _invoke(runner, "ovm-matrix", "--dim", "1", "--output-dir", out_dir)
    assert _result.exit_code == 2


def test_output_dir_is_a_file(runner, tmp_path):
    _file = tmp_path / "taken"
    _file.write_text("x")
    _result = _invoke(runner, "ovm-matrix", "--dim", "4", "--output-dir", str(_file))
    assert _result.exit_code == 1


def test_ovm_matrix_csv(runner, out_dir):
    _result = _invoke(runner, "ovm-matrix", "--dim", "8", "--theta", "0.5", "--output-dir", out_dir)
    assert _result.exit_code == 0

    _frame = pd.read_csv(os.path.join(out_dir, "rho_w.csv"))
    assert list(_frame.columns) == ["n", "m", "re", "im"]
    assert len(_frame) == 64
    _diagonal = _frame[_frame["n"] == _frame["m"]]
    assert np.allclose(_diagonal["re"], 1.0 / TWO_PI)


def test_povm_matrix_json(runner, out_dir):
    _result = _invoke(
        runner, "povm-matrix", "--dim", "6", "--format", "json", "--output-dir", out_dir
    )
    assert _result.exit_code == 0

    with open(os.path.join(out_dir, "rho_q.json"), "r", encoding="utf-8") as _file:
        _data = json.load(_file)
    assert _data["schema_version"] == "1.0"
    assert _data["dim"] == 6
    assert len(_data["entries"]) == 36
    assert _data["entries"][0] == pytest.approx([1.0 / TWO_PI, 0.0])


def test_povm_matrix_oracle(runner, out_dir):
    _result = _invoke(runner, "povm-matrix", "--dim", "12", "--oracle", "--output-dir", out_dir)
    assert _result.exit_code == 0
    assert os.path.isfile(os.path.join(out_dir, "rho_q.csv"))


def test_phase_dist_of_fock_state(runner, out_dir):
    _result = _invoke(
        runner,
        "phase-dist",
        "--state",
        "fock:2",
        "--kind",
        "q",
        "--dim",
        "8",
        "--theta-nodes",
        "16",
        "--output-dir",
        out_dir,
    )
    assert _result.exit_code == 0

    _frame = pd.read_csv(os.path.join(out_dir, "phase_q.csv"))
    assert list(_frame.columns) == ["theta", "value"]
    assert len(_frame) == 16
    assert np.allclose(_frame["value"], 1.0 / TWO_PI, atol=1e-14)


def test_state_dist_grid(runner, out_dir):
    _result = _invoke(
        runner,
        "state-dist",
        "--state",
        "coherent:1,0",
        "--kind",
        "q",
        "--dim",
        "16",
        "--grid-bound",
        "4",
        "--grid-nodes",
        "21",
        "--output-dir",
        out_dir,
    )
    assert _result.exit_code == 0

    _frame = pd.read_csv(os.path.join(out_dir, "q_grid.csv"))
    assert list(_frame.columns) == ["x", "p", "value"]
    assert len(_frame) == 21 * 21
    ## x-major order
    assert _frame["x"].iloc[0] == _frame["x"].iloc[20] == -4.0
    assert _frame["p"].iloc[1] == pytest.approx(-3.6)


def test_coarse_grain_from_state(runner, out_dir):
    _result = _invoke(
        runner,
        "coarse-grain",
        "--state",
        "coherent:1,0",
        "--dim",
        "24",
        "--grid-bound",
        "7",
        "--grid-nodes",
        "141",
        "--output-dir",
        out_dir,
    )
    assert _result.exit_code == 0

    _report = pd.read_csv(os.path.join(out_dir, "report.csv"))
    assert list(_report.columns) == ["name", "status", "measured", "tolerance", "runtime_s"]
    assert set(_report["status"]) == {"pass"}


def test_coarse_grain_needs_one_source(runner, out_dir):
    _result = _invoke(runner, "coarse-grain", "--output-dir", out_dir)
    assert _result.exit_code == 2


def test_coarse_grain_from_grid_file(runner, out_dir):
    _args = ["--grid-bound", "7", "--grid-nodes", "71", "--output-dir", out_dir]
    assert _invoke(runner, "state-dist", "--state", "fock:1", "--dim", "8", *_args).exit_code == 0

    _input = os.path.join(out_dir, "w_grid.csv")
    _result = _invoke(runner, "coarse-grain", "--input", _input, "--output-dir", out_dir)
    assert _result.exit_code == 0
    assert len(pd.read_csv(os.path.join(out_dir, "coarse_grained_grid.csv"))) == 71 * 71


def test_conjugate_check(runner, out_dir):
    _result = _invoke(
        runner, "conjugate-check", "--dims", "40", "--dims", "80", "--output-dir", out_dir
    )
    assert _result.exit_code == 0

    _rows = pd.read_csv(os.path.join(out_dir, "commutator.csv"))
    assert list(_rows["dim"]) == [40, 80]
    assert (_rows["deviation"] <= 1e-8).all()


def test_coherent_table(runner, out_dir):
    _result = _invoke(runner, "coherent-table", "--alpha", "2", "--count", "8", "--output-dir", out_dir)
    assert _result.exit_code == 0

    _rows = pd.read_csv(os.path.join(out_dir, "coherent_discrepancy.csv"))
    assert len(_rows) == 8
    assert np.allclose(_rows["corrected"], _rows["quadrature"], atol=1e-10)


def test_dilation_sweep_custom_schedule(runner, out_dir):
    _result = _invoke(
        runner,
        "dilation-sweep",
        "--dim",
        "12",
        "--tau",
        "0.2",
        "--tau",
        "0.1",
        "--beta",
        "1,0",
        "--output-dir",
        out_dir,
    )
    assert _result.exit_code == 0

    _rows = pd.read_csv(os.path.join(out_dir, "dilation.csv"))
    assert list(_rows["tau"]) == [0.2, 0.1]
    assert _rows["distance"].iloc[1] < _rows["distance"].iloc[0]


def test_dilation_sweep_mismatched_betas(runner, out_dir):
    _result = _invoke(
        runner,
        "dilation-sweep",
        "--tau",
        "0.2",
        "--tau",
        "0.1",
        "--tau",
        "0.05",
        "--beta",
        "1",
        "--beta",
        "2",
        "--output-dir",
        out_dir,
    )
    assert _result.exit_code == 2


def test_cat_demo_artifacts(runner, out_dir):
    _result = _invoke(
        runner,
        "cat-demo",
        "--dim",
        "32",
        "--grid-bound",
        "7",
        "--grid-nodes",
        "71",
        "--theta-nodes",
        "720",
        "--output-dir",
        out_dir,
    )
    assert _result.exit_code == 0
    for _name in ("wigner_grid.csv", "husimi_grid.csv", "phase_w.csv", "phase_q.csv", "fig1.gp"):
        assert os.path.isfile(os.path.join(out_dir, _name))

    _phase_w = pd.read_csv(os.path.join(out_dir, "phase_w.csv"))
    _phase_q = pd.read_csv(os.path.join(out_dir, "phase_q.csv"))
    assert _phase_w["value"].min() < 0.0
    assert _phase_q["value"].min() >= 0.0


def test_verify_all_failure_exit_code(runner, out_dir, monkeypatch):
    def _fake_checks(run):
        return [
            CheckReport.evaluate("passing", 0.0, 1e-9, 0.0),
            CheckReport.evaluate("failing", 1.0, 1e-9, 0.0),
        ]

    monkeypatch.setattr(app_module, "run_checks", _fake_checks)
    _result = _invoke(runner, "verify-all", "--output-dir", out_dir)
    assert _result.exit_code == 1

    _report = pd.read_csv(os.path.join(out_dir, "report.csv"))
    assert list(_report["status"]) == [CheckStatusEnum.PASS.value, CheckStatusEnum.FAIL.value]
    assert "CHECK_FAILED" in _result.output
    assert "1 of 2 checks failed" in _result.output


def test_unexpected_value_error_exits_one(runner, out_dir, monkeypatch):
    def _broken_matrix(theta, dim):
        raise ValueError("broken kernel")

    monkeypatch.setattr(app_module, "rho_w_matrix", _broken_matrix)
    _result = _invoke(runner, "ovm-matrix", "--dim", "4", "--output-dir", out_dir)
    assert _result.exit_code == 1
    assert "INTERNAL_CONSISTENCY" in _result.output


def test_unreadable_grid_file_is_usage_error(runner, out_dir, tmp_path):
    _input = tmp_path / "grid.csv"
    _input.write_text("a,b\n1,2\n")
    _result = _invoke(runner, "coarse-grain", "--input", str(_input), "--output-dir", out_dir)
    assert _result.exit_code == 2


def test_emit_report_refuses_empty(out_dir):
    with pytest.raises(ContractViolationError):
        emit_report([], OutputFormatEnum.csv, out_dir)


def test_emit_report_json(out_dir):
    os.makedirs(out_dir, exist_ok=True)
    _path = emit_report(
        [CheckReport.evaluate("residual", 1e-13, 1e-12, 0.25)], OutputFormatEnum.json, out_dir
    )
    with open(_path, "r", encoding="utf-8") as _file:
        _data = json.load(_file)

    assert _data["schema_version"] == "1.0"
    assert list(_data["checks"][0].keys()) == ["name", "status", "measured", "tolerance", "runtime_s"]
    assert _data["checks"][0]["status"] == "pass"


@pytest.mark.slow
def test_verify_all_passes(runner, out_dir):
    _result = _invoke(runner, "verify-all", "--dim", "32", "--output-dir", out_dir)
    assert _result.exit_code == 0, _result.output

    _report = pd.read_csv(os.path.join(out_dir, "report.csv"))
    assert set(_report["status"]) == {"pass"}
