from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from design_engine.core.design_problem import DesignProblem


@dataclass(frozen=True, eq=False)
class InformationMatrix:
    """Symmetric accumulator sum_i w_i f_i f_i^T with a per-criterion value cache."""
    matrix: np.ndarray
    criterion_cache: Dict[str, float] = field(default_factory=dict, repr=False)

    @property
    def m(self) -> int:
        return self.matrix.shape[0]


def _mirror_upper(matrix: np.ndarray) -> np.ndarray:
    upper = np.triu(matrix)
    return upper + np.swapaxes(np.triu(matrix, 1), -1, -2)


def information_matrix(weights: np.ndarray, problem: DesignProblem) -> InformationMatrix:
    weights = np.asarray(weights, dtype=np.float64)
    if weights.shape != (problem.n,):
        raise ValueError(f"Weights shape {weights.shape} does not match problem size {problem.n}")
    regressors = problem.regressors
    return InformationMatrix(matrix=_mirror_upper((regressors * weights) @ regressors.T))


def information_matrices(weights: np.ndarray, regressors: np.ndarray) -> np.ndarray:
    """Batch assembly: weights is (c, n), result is (c, m, m)."""
    weighted = weights[:, None, :] * regressors[None, :, :]
    return _mirror_upper(weighted @ regressors.T)


def update_information(info: InformationMatrix, i: int, direction: int, problem: DesignProblem) -> InformationMatrix:
    f_i = problem.regressors[:, i]
    return InformationMatrix(matrix=info.matrix + direction * np.outer(f_i, f_i))


def rank_one_updates(matrix: np.ndarray, points: np.ndarray, direction: int, regressors: np.ndarray) -> np.ndarray:
    """Matrices M + direction * f_i f_i^T for every i in points, shape (len(points), m, m)."""
    columns = regressors[:, points].T
    return matrix[None, :, :] + direction * columns[:, :, None] * columns[:, None, :]
