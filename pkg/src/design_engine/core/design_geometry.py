"""
Feasibility geometry of the exact design lattice: neighbourhoods, residual
resources, headroom d(zeta) and the approximate step length gamma(zeta).

Point indices are 0-based throughout.
"""
from typing import List

import numpy as np

from design_engine.core.design_problem import DesignProblem
from design_engine.core.resource_constraints import ResourceConstraints


def _check_length(design: np.ndarray, n: int):
    if design.shape != (n,):
        raise ValueError(f"Design shape {design.shape} does not match problem size {n}")


def is_feasible(design: np.ndarray, problem: DesignProblem) -> bool:
    design = np.asarray(design)
    _check_length(design, problem.n)
    if np.any(design < problem.base):
        return False
    return problem.constraints.satisfied_by(design)


def residuals(design: np.ndarray, constraints: ResourceConstraints) -> np.ndarray:
    design = np.asarray(design)
    _check_length(design, constraints.n)
    return constraints.residuals(design)


def update_residuals(r: np.ndarray, i: int, direction: int, constraints: ResourceConstraints) -> np.ndarray:
    """Residuals after moving direction trials at point i; only the rows point i consumes change."""
    rows, coefficients = constraints.column_entries(i)
    updated = np.array(r, dtype=np.float64)
    updated[rows] -= direction * coefficients
    return updated


def headroom(design: np.ndarray, problem: DesignProblem) -> np.ndarray:
    return problem.constraints.headroom_batch(residuals(design, problem.constraints)[None, :])[0]


def headroom_from_residuals(r: np.ndarray, constraints: ResourceConstraints) -> np.ndarray:
    return constraints.headroom_batch(np.asarray(r)[None, :])[0]


def upper_neighbors(design: np.ndarray, problem: DesignProblem) -> List[int]:
    return np.flatnonzero(headroom(design, problem) > 0).tolist()


def lower_neighbors(design: np.ndarray, problem: DesignProblem) -> List[int]:
    design = np.asarray(design)
    _check_length(design, problem.n)
    return np.flatnonzero(design > problem.base).tolist()


def is_maximal(design: np.ndarray, problem: DesignProblem) -> bool:
    return not upper_neighbors(design, problem)


def gamma(design: np.ndarray, d: np.ndarray, problem: DesignProblem) -> float:
    d = np.asarray(d, dtype=np.int64)
    if not np.any(d):
        return 0.0
    r = residuals(design, problem.constraints)
    return float(problem.constraints.gamma_batch(r[None, :], d[None, :])[0])


def lookahead_design(design: np.ndarray, problem: DesignProblem) -> np.ndarray:
    """The approximate design zeta + gamma(zeta) d(zeta)."""
    d = headroom(design, problem)
    return np.asarray(design, dtype=np.float64) + gamma(design, d, problem) * d
