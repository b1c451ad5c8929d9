"""
Block designs with blocks of size two. A design point is an unordered pair of
treatments; its regressor is the (v-1)-truncated difference of unit vectors,
so the information matrix is the reduced Laplacian of the concurrence graph.
"""
from typing import List, Optional, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, model_validator

from design_engine.core.constraint_builders import material_constraints, stack_constraints, standard_constraint
from design_engine.core.design_problem import DesignProblem


class BlockProblemSpec(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    v: int = Field(ge=3)
    block_limit: Optional[float] = Field(default=None, gt=0, alias="N")
    treatment_limits: Optional[List[float]] = Field(default=None)

    @model_validator(mode="after")
    def check_limits(self):
        if self.block_limit is None and self.treatment_limits is None:
            raise ValueError("Set block_limit, treatment_limits or both")
        if self.treatment_limits is not None and len(self.treatment_limits) != self.v:
            raise ValueError(f"Need {self.v} treatment limits, got {len(self.treatment_limits)}")
        return self


def pair_index(t1: int, t2: int, v: int) -> int:
    """1-based index of the treatment pair (t1, t2), 1 <= t1 < t2 <= v, in lexicographic order."""
    if not 1 <= t1 < t2 <= v:
        msg = f"Pair ({t1}, {t2}) must satisfy 1 <= t1 < t2 <= {v}"
        logger.error(msg)
        raise ValueError(msg)
    return t2 - v + t1 * v - (t1 * t1 + t1) // 2


def treatment_pairs(v: int) -> List[Tuple[int, int]]:
    """All pairs in point order; entry i is the pair stored in column i."""
    return [(t1, t2) for t1 in range(1, v + 1) for t2 in range(t1 + 1, v + 1)]


def block_regressors(v: int) -> np.ndarray:
    pairs = treatment_pairs(v)
    regressors = np.zeros((v - 1, len(pairs)))
    for t1, t2 in pairs:
        column = pair_index(t1, t2, v) - 1
        # treatment v is dropped by the truncation
        regressors[t1 - 1, column] = 1.0
        if t2 < v:
            regressors[t2 - 1, column] = -1.0
    return regressors


def block_problem(spec: BlockProblemSpec) -> DesignProblem:
    v = spec.v
    pairs = treatment_pairs(v)
    n = len(pairs)
    blocks = []
    if spec.block_limit is not None:
        blocks.append(standard_constraint(n, spec.block_limit))
    if spec.treatment_limits is not None:
        # a block uses each of its two treatments once
        subsets = [[pair_index(*pair, v) - 1 for pair in pairs if t in pair] for t in range(1, v + 1)]
        blocks.append(material_constraints(subsets, spec.treatment_limits, n))
    name = f"block-v{v}"
    if spec.block_limit is not None:
        name += f"-N{spec.block_limit:g}"
    return DesignProblem(
        regressors=block_regressors(v),
        constraints=stack_constraints(*blocks),
        labels=[f"{t1}-{t2}" for t1, t2 in pairs],
        name=name,
    )
