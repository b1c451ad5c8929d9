from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field


class RunResult(BaseModel):
    problem: str
    criterion: str
    # 1-based point index -> replications; points with zero replications are omitted
    best_design: Dict[int, int]
    phi: float
    token: List[int]
    elapsed: float
    iterations: int
    restarts: int
    seed: int
    config: Dict[str, Any] = Field(default_factory=dict)


class OptimumEntry(BaseModel):
    design: Dict[int, int]
    phi: float


class ComparisonData(BaseModel):
    heuristic_phi: float
    heuristic_design: Dict[int, int]
    efficiency: float
    token_match: bool
    seed: int


class VerifyReport(BaseModel):
    problem: str
    criterion: str
    feasible_count: int
    maximal_count: int
    optimum_phi: float
    global_optima: List[OptimumEntry]
    local_optima: List[OptimumEntry]
    comparison: Optional[ComparisonData] = Field(default=None)


class SweepRow(BaseModel):
    """One instance of a parameter sweep; phi columns summarise the restarts of its run."""
    instance: str
    parameter: str
    value: Union[int, float]
    best_phi: float
    median_phi: float
    min_phi: float
    max_phi: float
    # phi in the uncoded units of the quadratic model, empty for other families
    uncoded_phi: Optional[float] = Field(default=None)
    reference_phi: Optional[float] = Field(default=None)
    efficiency: Optional[float] = Field(default=None)
    iterations: int
    seed: int
    elapsed: float
