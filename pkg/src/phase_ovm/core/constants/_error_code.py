# -*- coding: utf-8 -*-

from enum import Enum
from typing import Union, Optional, Any

from pydantic import BaseModel, Field, constr


class ErrorCodePM(BaseModel):
    code: constr(strip_whitespace=True) = Field(..., min_length=3, max_length=36)  # type: ignore
    name: constr(strip_whitespace=True) = Field(..., min_length=3, max_length=64)  # type: ignore
    exit_code: int = Field(..., ge=0, le=255)
    message: constr(strip_whitespace=True) = Field(..., min_length=1, max_length=256)  # type: ignore
    description: Optional[constr(strip_whitespace=True)] = Field(  # type: ignore
        default=None, max_length=1024
    )
    detail: Any = Field(default=None)


class ErrorCodeEnum(Enum):
    CHECK_FAILED = ErrorCodePM(
        code="1_00000",
        name="CHECK_FAILED",
        exit_code=1,
        message="Verification check failed!",
        description="At least one measured value exceeded its tolerance.",
        detail=None,
    )
    IO_ERROR = ErrorCodePM(
        code="1_10000",
        name="IO_ERROR",
        exit_code=1,
        message="Failed to read or write an artifact!",
        description="The output directory is not writable or a file could not be written.",
        detail=None,
    )
    CONTRACT_VIOLATION = ErrorCodePM(
        code="1_20000",
        name="CONTRACT_VIOLATION",
        exit_code=1,
        message="Contract violation!",
        description="An input or an intermediate result broke an operation precondition.",
        detail=None,
    )
    CONVENTION_MISMATCH = ErrorCodePM(
        code="1_20001",
        name="CONVENTION_MISMATCH",
        exit_code=1,
        message="Quadrature convention mismatch!",
        description="Two independently computed representations of the same operator disagree.",
        detail=None,
    )
    INDEX_OUT_OF_RANGE = ErrorCodePM(
        code="1_20002",
        name="INDEX_OUT_OF_RANGE",
        exit_code=1,
        message="Index out of range!",
        description="A number-state index is not smaller than the truncation dimension.",
        detail=None,
    )
    DIMENSION_BOUND = ErrorCodePM(
        code="1_20003",
        name="DIMENSION_BOUND",
        exit_code=1,
        message="Dimension bound exceeded!",
        description="The requested truncation is too large for a dense oracle.",
        detail=None,
    )
    INTERNAL_CONSISTENCY = ErrorCodePM(
        code="1_30000",
        name="INTERNAL_CONSISTENCY",
        exit_code=1,
        message="Internal consistency error!",
        description="A result guaranteed by construction was violated.",
        detail=None,
    )
    USAGE_ERROR = ErrorCodePM(
        code="2_00000",
        name="USAGE_ERROR",
        exit_code=2,
        message="Invalid command-line usage!",
        description="Unknown subcommand, flag or malformed flag value.",
        detail=None,
    )

    @classmethod
    def get_by_code(cls, code: str) -> Union["ErrorCodeEnum", None]:
        for _error_code_enum in ErrorCodeEnum:
            if _error_code_enum.value.code == code:
                return _error_code_enum
        return None

    @classmethod
    def get_by_name(cls, name: str) -> Union["ErrorCodeEnum", None]:
        for _error_code_enum in ErrorCodeEnum:
            if _error_code_enum.value.name == name:
                return _error_code_enum
        return None


__all__ = ["ErrorCodePM", "ErrorCodeEnum"]
