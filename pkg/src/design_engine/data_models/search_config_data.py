from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, model_validator


class InitStrategy(str, Enum):
    BASE = "base"
    RANDOM = "random"
    FLOOR = "floor"


class SearchConfigModel(BaseModel):
    time_limit: Optional[float] = Field(default=120.0, ge=0)  # seconds per independent search
    back_max: int = Field(default=16, ge=1)
    n_round: int = Field(default=9, ge=1, le=15)
    seed: Optional[int] = Field(default=None, ge=0, lt=2 ** 64)
    restarts: int = Field(default=10, ge=1)  # independent initial designs
    stall_limit: Optional[int] = Field(default=None, ge=1)  # iterations without improvement
    init: InitStrategy = Field(default=InitStrategy.RANDOM)
    walk_length: Optional[int] = Field(default=None, ge=0)  # random initial walk, None draws it
    workers: int = Field(default=1, ge=1)
    record_steps: bool = Field(default=False)
    check_invariants: bool = Field(default=False)
    incremental_updates: bool = Field(default=True)
    refresh_interval: int = Field(default=1000, ge=1)
    progress_interval: float = Field(default=10.0, gt=0)

    @model_validator(mode="after")
    def check_stopping_rule(self):
        if self.time_limit is None and self.stall_limit is None:
            raise ValueError("Either time_limit or stall_limit must be set")
        return self
