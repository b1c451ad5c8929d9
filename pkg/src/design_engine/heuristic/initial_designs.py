from typing import Optional

import numpy as np
from loguru import logger

from design_engine.core.design_geometry import headroom_from_residuals, is_feasible, residuals, update_residuals
from design_engine.core.design_problem import DesignProblem
from design_engine.core.resource_constraints import FEASIBILITY_RTOL
from design_engine.data_models.search_config_data import InitStrategy, SearchConfigModel


def initial_from_base(problem: DesignProblem) -> np.ndarray:
    return problem.base.copy()


def initial_random(problem: DesignProblem, rng: np.random.Generator,
                   walk_length: Optional[int] = None) -> np.ndarray:
    """
    Random forward steps from the base design. Without walk_length the walk is
    run to a maximal design and cut at a uniformly drawn position of its path.
    """
    constraints = problem.constraints
    design = problem.base.copy()
    r = residuals(design, constraints)
    path = [design.copy()]
    while walk_length is None or len(path) <= walk_length:
        up = np.flatnonzero(headroom_from_residuals(r, constraints) > 0)
        if up.size == 0:
            break
        i = int(up[rng.integers(up.size)])
        design[i] += 1
        r = update_residuals(r, i, +1, constraints)
        path.append(design.copy())
    if walk_length is None:
        return path[int(rng.integers(len(path)))]
    return path[-1]


def initial_from_approximate(approx: np.ndarray, problem: DesignProblem) -> np.ndarray:
    """Componentwise floor of a feasible approximate design, clipped from below by the base."""
    approx = np.asarray(approx, dtype=np.float64)
    if approx.shape != (problem.n,):
        raise ValueError(f"Approximate design shape {approx.shape} does not match problem size {problem.n}")
    if np.any(approx < 0) or not problem.constraints.satisfied_by(approx):
        msg = "Approximate design is not feasible for the resource constraints"
        logger.error(msg)
        raise ValueError(msg)
    below = np.flatnonzero(approx < problem.base - FEASIBILITY_RTOL)
    if below.size:
        msg = f"Approximate design lies below the base design at points {(below + 1).tolist()}"
        logger.error(msg)
        raise ValueError(msg)
    design = np.maximum(np.floor(approx).astype(np.int64), problem.base)
    if not is_feasible(design, problem):
        msg = "Floored approximate design is infeasible"
        logger.error(msg)
        raise ValueError(msg)
    return design


def initial_design(config: SearchConfigModel, problem: DesignProblem, rng: np.random.Generator,
                   approximate: Optional[np.ndarray] = None) -> np.ndarray:
    if config.init == InitStrategy.BASE:
        return initial_from_base(problem)
    if config.init == InitStrategy.FLOOR:
        if approximate is None:
            msg = "Floor initialisation requires approximate design weights"
            logger.error(msg)
            raise ValueError(msg)
        return initial_from_approximate(approximate, problem)
    return initial_random(problem, rng, config.walk_length)
