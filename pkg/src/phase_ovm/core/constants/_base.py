# -*- coding: utf-8 -*-

import math
from enum import Enum


ENV_PREFIX = "PHASE_OVM_"

TWO_PI = 2.0 * math.pi

## Tolerances shared by the module contracts:
HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
IMAG_RESIDUE_TOL = 1e-8
POSITIVITY_TOL = 1e-10
TAIL_TOL = 1e-12
KERNEL_MATCH_TOL = 1e-4

## Filter width (standard deviation per quadrature axis) that maps W onto Q:
HUSIMI_FILTER_WIDTH = 1.0 / math.sqrt(2.0)
KERNEL_TRUNCATION_SIGMAS = 8.0

## Constant of the position-space kernel of the Wigner phase operator at θ=0:
KERNEL_CONSTANT = 1.0 / (4.0 * math.pi)

TWO_MODE_MAX_DIM = 4096


class EnvEnum(str, Enum):
    LOCAL = "LOCAL"
    DEVELOPMENT = "DEVELOPMENT"
    TEST = "TEST"
    PRODUCTION = "PRODUCTION"


class WarnEnum(str, Enum):
    ERROR = "ERROR"
    ALWAYS = "ALWAYS"
    DEBUG = "DEBUG"
    IGNORE = "IGNORE"


class OperatorKindEnum(str, Enum):
    lower = "lower"
    raise_ = "raise"
    number = "number"
    parity = "parity"
    x = "x"
    p = "p"


class QuadratureRuleEnum(str, Enum):
    gauss_legendre = "gauss-legendre"
    trapezoid = "trapezoid"


class ParityEnum(str, Enum):
    even = "even"
    odd = "odd"


class OutputFormatEnum(str, Enum):
    csv = "csv"
    json = "json"


class PhaseKindEnum(str, Enum):
    w = "w"
    q = "q"


class CheckStatusEnum(str, Enum):
    PASS = "pass"
    FAIL = "fail"


__all__ = [
    "ENV_PREFIX",
    "TWO_PI",
    "HERMITIAN_TOL",
    "TRACE_TOL",
    "IMAG_RESIDUE_TOL",
    "POSITIVITY_TOL",
    "TAIL_TOL",
    "KERNEL_MATCH_TOL",
    "HUSIMI_FILTER_WIDTH",
    "KERNEL_TRUNCATION_SIGMAS",
    "KERNEL_CONSTANT",
    "TWO_MODE_MAX_DIM",
    "EnvEnum",
    "WarnEnum",
    "OperatorKindEnum",
    "QuadratureRuleEnum",
    "ParityEnum",
    "OutputFormatEnum",
    "PhaseKindEnum",
    "CheckStatusEnum",
]
