# -*- coding: utf-8 -*-

from pydantic import BaseModel, ConfigDict


class BasePM(BaseModel):
    pass


class FrozenArrayPM(BaseModel):
    """Immutable model that may carry numpy arrays."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


__all__ = ["BasePM", "FrozenArrayPM"]
