# -*- coding: utf-8 -*-

from ._schemas import SCHEMA_VERSION, OUTPUT_SCHEMAS, CheckReport, CheckRuleEnum
from ._artifacts import emit_report
from ._checks import ALL_CHECKS, run_checks
from .app import app, run_command


__all__ = [
    "SCHEMA_VERSION",
    "OUTPUT_SCHEMAS",
    "CheckReport",
    "CheckRuleEnum",
    "emit_report",
    "ALL_CHECKS",
    "run_checks",
    "app",
    "run_command",
]
