# -*- coding: utf-8 -*-

import os

from pydantic import Field, constr, field_validator
from pydantic_settings import SettingsConfigDict

from beans_logging import LoggerConfigPM

from phase_ovm.__version__ import __version__
from phase_ovm.core.constants import EnvEnum, ENV_PREFIX
from phase_ovm.core.utils import validator
from ._base import FrozenBaseConfig
from ._run import RunConfig, FrozenRunConfig


# Main config schema:
class MainConfig(FrozenBaseConfig):
    env: EnvEnum = Field(default=EnvEnum.LOCAL)
    debug: bool = Field(default=False)
    version: constr(strip_whitespace=True) = Field(  # type: ignore
        default=__version__, min_length=3, max_length=32
    )
    run: FrozenRunConfig = Field(default_factory=FrozenRunConfig)
    logger: LoggerConfigPM = Field(default_factory=LoggerConfigPM)

    @field_validator("env")
    @classmethod
    def _check_env(cls, val: EnvEnum) -> EnvEnum:
        _env = "ENV"
        if _env in os.environ:
            _env = os.getenv(_env).upper()
            val = EnvEnum(_env)

        return val

    @field_validator("debug")
    @classmethod
    def _check_debug(cls, val: bool) -> bool:
        _debug_env = "DEBUG"
        if _debug_env in os.environ:
            val = validator.is_truthy(os.getenv(_debug_env))

        return val

    @field_validator("version")
    @classmethod
    def _check_version(cls, val: str) -> str:
        val = __version__
        return val

    @field_validator("run", mode="before")
    @classmethod
    def _check_run(cls, val) -> FrozenRunConfig:
        if isinstance(val, RunConfig):
            val = val.model_dump()

        val = FrozenRunConfig(**val)
        return val

    @field_validator("logger")
    @classmethod
    def _check_logger(cls, val: LoggerConfigPM) -> LoggerConfigPM:
        _logs_dir_env = f"{ENV_PREFIX}LOGS_DIR"
        if _logs_dir_env in os.environ:
            val.file.logs_dir = os.getenv(_logs_dir_env)

        return val

    model_config = SettingsConfigDict(env_prefix=ENV_PREFIX, env_nested_delimiter="__")


__all__ = ["MainConfig"]
