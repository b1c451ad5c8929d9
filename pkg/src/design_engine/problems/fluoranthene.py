"""
Sampling times for the uptake/elimination model of internal fluoranthene
concentration, linearised at nominal parameters. Sampling cost depends on the
wage class of the hour of the week the sample falls on.
"""
import numpy as np
from pydantic import BaseModel, Field

from design_engine.core.constraint_builders import cost_constraint, direct_constraints, stack_constraints
from design_engine.core.design_problem import DesignProblem

HOURS_PER_WEEK = 168
HORIZON = 144
EXPOSURE_END = 72
# hour 0 is Monday 00:00; the weekend runs from Friday 19:00 to Monday 06:00
WEEKEND_START = 4 * 24 + 19
WEEKEND_END = 6
WORKDAY_START = 8
WORKDAY_END = 17

REGULAR_WAGE = 1.0
OVERTIME_WAGE = 1.5
WEEKEND_WAGE = 2.0


class FluorantheneSpec(BaseModel):
    s: int = Field(default=0, ge=0, lt=HOURS_PER_WEEK)  # starting hour of the week
    budget: float = Field(default=13.0, gt=0)
    theta1: float = Field(default=1.0)
    theta2: float = Field(default=0.2381, gt=0)


def mean_concentration(t: float, theta1: float, theta2: float) -> float:
    u = max(t - EXPOSURE_END, 0)
    return theta1 / theta2 * (np.exp(-theta2 * u) - np.exp(-theta2 * t))


def mu_gradient(t: int, theta1: float, theta2: float) -> np.ndarray:
    """Gradient of the mean concentration at time t with respect to (theta1, theta2)."""
    u = max(t - EXPOSURE_END, 0)
    decay_u = np.exp(-theta2 * u)
    decay_t = np.exp(-theta2 * t)
    difference = decay_u - decay_t
    return np.array([
        difference / theta2,
        -theta1 / theta2 ** 2 * difference + theta1 / theta2 * (t * decay_t - u * decay_u),
    ])


def cost_class(s: int, t: int) -> float:
    h = (s + t) % HOURS_PER_WEEK
    if h >= WEEKEND_START or h < WEEKEND_END:
        return WEEKEND_WAGE
    day, hour = divmod(h, 24)
    if day < 5 and WORKDAY_START <= hour < WORKDAY_END:
        return REGULAR_WAGE
    return OVERTIME_WAGE


def fluoranthene_problem(spec: FluorantheneSpec) -> DesignProblem:
    times = range(HORIZON + 1)
    base = np.zeros(HORIZON + 1, dtype=np.int64)
    base[[0, EXPOSURE_END, HORIZON]] = 1
    return DesignProblem(
        regressors=np.column_stack([mu_gradient(t, spec.theta1, spec.theta2) for t in times]),
        constraints=stack_constraints(
            cost_constraint([cost_class(spec.s, t) for t in times], spec.budget),
            direct_constraints(np.ones(HORIZON + 1)),
        ),
        base=base,
        labels=[f"t={t}" for t in times],
        name=f"fluoranthene-s{spec.s}",
    )
