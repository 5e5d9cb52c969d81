# -*- coding: utf-8 -*-

from enum import Enum
from typing import Dict

from pydantic import Field, constr

from phase_ovm.core.constants import CheckStatusEnum
from phase_ovm.core.schemas import BasePM


SCHEMA_VERSION = "1.0"

REPORT_COLUMNS = ["name", "status", "measured", "tolerance", "runtime_s"]
GRID_COLUMNS = ["x", "p", "value"]
MATRIX_COLUMNS = ["n", "m", "re", "im"]
DISTRIBUTION_COLUMNS = ["theta", "value"]
CONVERGENCE_COLUMNS = ["theta", "tau", "beta_re", "beta_im", "distance", "beta_sin_tau"]
COMMUTATOR_COLUMNS = ["dim", "block", "deviation"]
EIGENCHECK_COLUMNS = [
    "lambda",
    "parity",
    "p",
    "de_residual",
    "kernel_eigenvalue",
    "ratio",
    "kernel_residual",
]
DISCREPANCY_COLUMNS = ["theta", "corrected", "printed_re", "printed_im", "quadrature"]


def _columns(columns) -> str:
    return ",".join(columns)


## Output schema of every subcommand, shown in its `--help`:
OUTPUT_SCHEMAS: Dict[str, str] = {
    "state-dist": f"<kind>_grid.csv ({_columns(GRID_COLUMNS)}) or .json {{grid bounds, values n_x x n_p}}.",
    "phase-dist": f"phase_<kind>.csv ({_columns(DISTRIBUTION_COLUMNS)}) or .json {{thetas, values}}.",
    "ovm-matrix": f"rho_w.csv ({_columns(MATRIX_COLUMNS)}) or .json {{theta, dim, entries as (re, im) pairs}} row-major.",
    "povm-matrix": f"rho_q.csv ({_columns(MATRIX_COLUMNS)}) or .json {{theta, dim, entries as (re, im) pairs}} row-major.",
    "coarse-grain": f"coarse_grained_grid.csv ({_columns(GRID_COLUMNS)}) and report.csv ({_columns(REPORT_COLUMNS)}).",
    "eigencheck": f"eigencheck.csv ({_columns(EIGENCHECK_COLUMNS)}) and report.csv ({_columns(REPORT_COLUMNS)}).",
    "conjugate-check": f"commutator.csv ({_columns(COMMUTATOR_COLUMNS)}) and report.csv ({_columns(REPORT_COLUMNS)}).",
    "dilation-sweep": f"dilation.csv ({_columns(CONVERGENCE_COLUMNS)}).",
    "coherent-table": f"coherent_discrepancy.csv ({_columns(DISCREPANCY_COLUMNS)}).",
    "cat-demo": (
        f"wigner_grid.csv, husimi_grid.csv ({_columns(GRID_COLUMNS)}), "
        f"phase_w.csv, phase_q.csv ({_columns(DISTRIBUTION_COLUMNS)}) and fig1.gp (gnuplot)."
    ),
    "verify-all": f"report.csv ({_columns(REPORT_COLUMNS)}) or report.json {{checks}}.",
}


class CheckRuleEnum(str, Enum):
    ABS_LE = "abs_le"
    GE = "ge"
    LT = "lt"
    GT = "gt"
    ## Recorded value, never fails:
    REPORT = "report"


class CheckReport(BasePM):
    name: constr(strip_whitespace=True) = Field(..., min_length=1, max_length=128)  # type: ignore
    status: CheckStatusEnum = Field(...)
    measured: float = Field(...)
    tolerance: float = Field(...)
    runtime_s: float = Field(..., ge=0.0)
    rule: CheckRuleEnum = Field(default=CheckRuleEnum.ABS_LE, exclude=True)

    @classmethod
    def evaluate(
        cls,
        name: str,
        measured: float,
        tolerance: float,
        runtime_s: float,
        rule: CheckRuleEnum = CheckRuleEnum.ABS_LE,
    ) -> "CheckReport":
        """Status of `measured` against `tolerance` under `rule`; `REPORT` rows always pass."""

        if rule == CheckRuleEnum.ABS_LE:
            _passed = abs(measured) <= tolerance
        elif rule == CheckRuleEnum.GE:
            _passed = measured >= tolerance
        elif rule == CheckRuleEnum.LT:
            _passed = measured < tolerance
        elif rule == CheckRuleEnum.GT:
            _passed = measured > tolerance
        else:
            _passed = True

        return cls(
            name=name,
            status=CheckStatusEnum.PASS if _passed else CheckStatusEnum.FAIL,
            measured=measured,
            tolerance=tolerance,
            runtime_s=runtime_s,
            rule=rule,
        )

    @property
    def passed(self) -> bool:
        return self.status == CheckStatusEnum.PASS


__all__ = [
    "SCHEMA_VERSION",
    "REPORT_COLUMNS",
    "GRID_COLUMNS",
    "MATRIX_COLUMNS",
    "DISTRIBUTION_COLUMNS",
    "CONVERGENCE_COLUMNS",
    "COMMUTATOR_COLUMNS",
    "EIGENCHECK_COLUMNS",
    "DISCREPANCY_COLUMNS",
    "OUTPUT_SCHEMAS",
    "CheckRuleEnum",
    "CheckReport",
]
