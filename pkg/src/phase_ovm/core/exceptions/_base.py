# -*- coding: utf-8 -*-

from typing import Any, Optional

from pydantic import constr, validate_call

from phase_ovm.core.constants import ErrorCodeEnum


class BasePhaseOVMError(Exception):
    """Base exception class for all toolkit errors with custom error codes.

    Inherits:
        Exception: Exception class from Python.
    """

    error_enum: ErrorCodeEnum = ErrorCodeEnum.INTERNAL_CONSISTENCY

    @validate_call(config={"arbitrary_types_allowed": True})
    def __init__(
        self,
        message: Optional[
            constr(strip_whitespace=True, min_length=1, max_length=1024)  # type: ignore
        ] = None,
        error_enum: Optional[ErrorCodeEnum] = None,
        detail: Any = None,
    ):
        """Constructor method for BasePhaseOVMError class.

        Args:
            message    (Optional[str]          , optional): Error message: [min_length=1, max_length=1024]. Defaults to None.
            error_enum (Optional[ErrorCodeEnum], optional): Overrides the class error code enum. Defaults to None.
            detail     (Any                    , optional): Error detail, usually the measured value. Defaults to None.
        """

        if error_enum:
            self.error_enum = error_enum

        _error = self.error_enum.value.model_dump()
        if not message:
            message: str = _error.get("message")

        if detail is not None:
            _error["detail"] = detail

        self.message = message
        self.error = _error
        self.exit_code: int = _error.get("exit_code")
        super().__init__(message)


class ContractViolationError(BasePhaseOVMError):
    error_enum = ErrorCodeEnum.CONTRACT_VIOLATION


class ConventionMismatchError(BasePhaseOVMError):
    error_enum = ErrorCodeEnum.CONVENTION_MISMATCH


class InternalConsistencyError(BasePhaseOVMError):
    error_enum = ErrorCodeEnum.INTERNAL_CONSISTENCY


class DimensionBoundError(BasePhaseOVMError):
    error_enum = ErrorCodeEnum.DIMENSION_BOUND


class IndexOutOfRangeError(BasePhaseOVMError, IndexError):
    """Number-state index not below the truncation dimension.

    Inherits:
        BasePhaseOVMError: Base toolkit error.
        IndexError       : IndexError class from Python.
    """

    error_enum = ErrorCodeEnum.INDEX_OUT_OF_RANGE


class CheckFailedError(BasePhaseOVMError):
    error_enum = ErrorCodeEnum.CHECK_FAILED


class UsageError(BasePhaseOVMError, ValueError):
    """Malformed command-line value, such as a state or grid file.

    Inherits:
        BasePhaseOVMError: Base toolkit error.
        ValueError       : ValueError class from Python.
    """

    error_enum = ErrorCodeEnum.USAGE_ERROR


__all__ = [
    "BasePhaseOVMError",
    "ContractViolationError",
    "ConventionMismatchError",
    "InternalConsistencyError",
    "DimensionBoundError",
    "IndexOutOfRangeError",
    "CheckFailedError",
    "UsageError",
]
