"""Seeded random problems with integer resources, small enough to enumerate."""
import numpy as np

from design_engine.core.design_problem import DesignProblem
from design_engine.core.resource_constraints import ResourceConstraints


def random_problem(rng: np.random.Generator, n: int, m: int, k: int, max_headroom: int = 8) -> DesignProblem:
    # coefficients in {0, 1, 2} and limits <= max_headroom keep every per-point headroom <= max_headroom
    a_matrix = rng.integers(0, 3, size=(k, n)).astype(np.float64)
    for i in np.flatnonzero(~a_matrix.any(axis=0)):
        a_matrix[rng.integers(k), i] = 1.0
    limits = rng.integers(2, max_headroom + 1, size=k).astype(np.float64)
    return DesignProblem(
        regressors=rng.normal(size=(m, n)),
        constraints=ResourceConstraints(A=a_matrix, b=limits),
        name=f"random-n{n}-m{m}-k{k}",
    )


def random_feasible_design(problem: DesignProblem, rng: np.random.Generator, steps: int) -> np.ndarray:
    """A random forward walk of at most `steps` feasible steps from the base design."""
    design = problem.base.copy()
    for _ in range(steps):
        slack = problem.constraints.residuals(design)
        room = problem.constraints.headroom_batch(slack[None, :])[0]
        up = np.flatnonzero(room > 0)
        if up.size == 0:
            break
        design[up[rng.integers(up.size)]] += 1
    return design
