import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from design_engine.core.constraint_builders import cost_constraint, stack_constraints, standard_constraint
from design_engine.core.design_problem import DesignProblem


class ToyProblemSpec(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    size_limit: float = Field(default=20, gt=0, alias="N")
    a: float = Field(default=1, gt=0)
    b: float = Field(default=23, gt=0)


def toy_problem(size_limit: float = 20, a: float = 1, b: float = 23) -> DesignProblem:
    """Two-point corrosion example: F = I, xi1 + xi2 <= size_limit and a*xi1 + 2a*xi2 <= b."""
    return DesignProblem(
        regressors=np.eye(2),
        constraints=stack_constraints(standard_constraint(2, size_limit), cost_constraint([a, 2 * a], b)),
        labels=["untreated", "treated"],
        name="toy",
    )


def toy_problem_from_spec(spec: ToyProblemSpec) -> DesignProblem:
    return toy_problem(spec.size_limit, spec.a, spec.b)
