# -*- coding: utf-8 -*-

import os
import math

import pytest

from phase_ovm.config import config
from phase_ovm.core.configs import FrozenRunConfig, RunConfig
from phase_ovm.core.constants import CheckStatusEnum, ErrorCodeEnum, OutputFormatEnum
from phase_ovm.core.exceptions import (
    BasePhaseOVMError,
    CheckFailedError,
    ContractViolationError,
    IndexOutOfRangeError,
    UsageError,
)
from phase_ovm.core.utils import ensure_writable_dir
from phase_ovm.cli import CheckReport, CheckRuleEnum


def test_config_loaded_from_yaml():
    assert config.run.dim == 64
    assert config.run.theta_nodes == 720
    assert config.run.format == OutputFormatEnum.csv
    assert config.run.grid.x_min == -6.0
    assert config.run.grid.n_x == 241


def test_resolved_r_max_defaults_to_dimension_rule():
    _run = RunConfig(dim=32)
    assert _run.resolved_r_max() == pytest.approx(math.sqrt(64.0) + 4.0)

    _run = RunConfig(dim=32, quadrature={"r_max": 20.0})
    assert _run.resolved_r_max() == 20.0


def test_resolved_threads_capped_by_env(monkeypatch):
    monkeypatch.delenv("PHASE_OVM_THREADS", raising=False)
    assert RunConfig(threads=None).resolved_threads() == 1
    assert RunConfig(threads=6).resolved_threads() == 6

    monkeypatch.setenv("PHASE_OVM_THREADS", "2")
    assert RunConfig(threads=6).resolved_threads() == 2
    assert RunConfig(threads=None).resolved_threads() == 2


def test_frozen_run_config_is_immutable():
    _run = FrozenRunConfig(dim=16)
    with pytest.raises(Exception):
        _run.dim = 32


def test_grid_bounds_validated():
    with pytest.raises(ValueError):
        RunConfig(grid={"x_min": 1.0, "x_max": -1.0})


def test_error_exit_codes():
    assert BasePhaseOVMError("boom").exit_code == 1
    assert ContractViolationError("bad input").error["name"] == "CONTRACT_VIOLATION"
    assert IndexOutOfRangeError(detail=7).error["detail"] == 7
    assert CheckFailedError().message == ErrorCodeEnum.CHECK_FAILED.value.message
    assert ErrorCodeEnum.get_by_name("USAGE_ERROR").value.exit_code == 2
    assert UsageError("bad flag").exit_code == 2
    assert isinstance(UsageError("bad flag"), ValueError)
    assert CheckFailedError(detail=["a", "b"]).exit_code == 1
    assert ErrorCodeEnum.get_by_code("1_10000") == ErrorCodeEnum.IO_ERROR
    assert ErrorCodeEnum.get_by_code("9_99999") is None


@pytest.mark.parametrize(
    "measured, tolerance, rule, expected",
    [
        (-1e-13, 1e-12, CheckRuleEnum.ABS_LE, CheckStatusEnum.PASS),
        (2e-12, 1e-12, CheckRuleEnum.ABS_LE, CheckStatusEnum.FAIL),
        (0.0, 0.0, CheckRuleEnum.ABS_LE, CheckStatusEnum.PASS),
        (-1e-11, -1e-10, CheckRuleEnum.GE, CheckStatusEnum.PASS),
        (-0.05, -1e-3, CheckRuleEnum.LT, CheckStatusEnum.PASS),
        (0.0, 0.0, CheckRuleEnum.LT, CheckStatusEnum.FAIL),
        (0.5, 1e-3, CheckRuleEnum.GT, CheckStatusEnum.PASS),
        (5.0, 0.0, CheckRuleEnum.REPORT, CheckStatusEnum.PASS),
        (-5.0, 0.0, CheckRuleEnum.REPORT, CheckStatusEnum.PASS),
    ],
)
def test_check_report_rules(measured, tolerance, rule, expected):
    _report = CheckReport.evaluate("deviation", measured, tolerance, 0.0, rule=rule)
    assert _report.status == expected
    assert "rule" not in _report.model_dump()


def test_ensure_writable_dir(tmp_path):
    _dir = tmp_path / "nested" / "out"
    assert ensure_writable_dir(str(_dir)) == os.path.abspath(str(_dir))
    assert _dir.is_dir()

    _file = tmp_path / "plain.txt"
    _file.write_text("x")
    with pytest.raises(OSError):
        ensure_writable_dir(str(_file))
