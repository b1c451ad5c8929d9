from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ProblemFamily(str, Enum):
    TOY = "toy"
    BLOCK = "block"
    QUADRATIC = "quadratic"
    FLUORANTHENE = "fluoranthene"


class FamilyProblemFile(BaseModel):
    """A family name; every other key is a parameter of that family."""
    model_config = ConfigDict(extra="allow")

    family: ProblemFamily
    approximate: Optional[List[float]] = Field(default=None)

    @property
    def parameters(self) -> dict:
        return dict(self.model_extra or {})


class ExplicitProblemFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = Field(default="explicit")
    F: List[List[float]]
    A: List[List[float]]
    b: List[float]
    xi0: Optional[List[int]] = Field(default=None)
    labels: Optional[List[str]] = Field(default=None)
    approximate: Optional[List[float]] = Field(default=None)

    @model_validator(mode="after")
    def check_rectangular(self):
        for key in ("F", "A"):
            rows = getattr(self, key)
            if not rows or len({len(row) for row in rows}) != 1:
                raise ValueError(f"{key} must be a non-empty rectangular array")
        return self
