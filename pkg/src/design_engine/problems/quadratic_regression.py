"""
Full quadratic model in density x1 and additive percentage x2 with marginal
restrictions on x1 (available rods) and a cost constraint on the additive.
"""
from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, Field

from design_engine.core.constraint_builders import cost_constraint, stack_constraints, strata_constraints
from design_engine.core.design_problem import DesignProblem

# x1 levels in tenths; 95.0 is not a level
DENSITY_LEVELS = [949] + list(range(951, 968))
ADDITIVE_LEVELS = [0, 10, 20]
MARGINAL_LIMITS = [1, 3, 14, 59, 52, 29, 25, 32, 36, 29, 36, 38, 12, 10, 8, 2, 3, 3]
# one price unit per percent of additive
ADDITIVE_COST = 1.0

DENSITY_CENTER = 95.8
DENSITY_HALF_RANGE = 0.9
ADDITIVE_CENTER = 10.0
ADDITIVE_HALF_RANGE = 10.0
# the coding is triangular in (1, x1, x2, x1^2, x2^2, x1 x2) with determinant (h1 h2)^-4, so
# phi_D of the raw model is this multiple of phi_D of the coded model for every design
RAW_PHI_FACTOR = (DENSITY_HALF_RANGE * ADDITIVE_HALF_RANGE) ** (4.0 / 3.0)


class QuadraticProblemSpec(BaseModel):
    budget: float = Field(default=1965, gt=0)


def point_index(density_tenths: int, additive: int) -> int:
    """1-based index of the point (x1, x2), x1 given in tenths."""
    if density_tenths not in DENSITY_LEVELS or additive not in ADDITIVE_LEVELS:
        raise ValueError(f"({density_tenths / 10:.1f}, {additive}) is not a design point")
    if density_tenths == 949:
        return additive // 10 + 1
    return 3 * (density_tenths - 949) + additive // 10 - 2


def design_points() -> List[Tuple[float, int]]:
    """Raw (x1, x2) of every point in index order."""
    points = [None] * (len(DENSITY_LEVELS) * len(ADDITIVE_LEVELS))
    for x1 in DENSITY_LEVELS:
        for x2 in ADDITIVE_LEVELS:
            points[point_index(x1, x2) - 1] = (x1 / 10, x2)
    return points


def quadratic_regressors(points: List[Tuple[float, int]]) -> np.ndarray:
    # coded levels: an invertible linear reparametrization of (1, x1, x2, x1^2, x2^2, x1 x2)
    raw = np.array(points, dtype=np.float64)
    u1 = (raw[:, 0] - DENSITY_CENTER) / DENSITY_HALF_RANGE
    u2 = (raw[:, 1] - ADDITIVE_CENTER) / ADDITIVE_HALF_RANGE
    return np.vstack([np.ones_like(u1), u1, u2, u1 ** 2, u2 ** 2, u1 * u2])


def quadratic_problem(budget: float) -> DesignProblem:
    points = design_points()
    strata = [DENSITY_LEVELS.index(round(x1 * 10)) for x1, _ in points]
    costs = [ADDITIVE_COST * x2 for _, x2 in points]
    return DesignProblem(
        regressors=quadratic_regressors(points),
        constraints=stack_constraints(
            strata_constraints(strata, MARGINAL_LIMITS),
            cost_constraint(costs, budget),
        ),
        labels=[f"({x1:.1f}, {x2})" for x1, x2 in points],
        name=f"quadratic-B{budget:g}",
    )


def quadratic_problem_from_spec(spec: QuadraticProblemSpec) -> DesignProblem:
    return quadratic_problem(spec.budget)


def raw_model_phi(phi: float) -> float:
    """D-criterion value in the uncoded parametrisation f = (1, x1, x2, x1^2, x2^2, x1 x2)."""
    return RAW_PHI_FACTOR * phi
