from abc import ABC, abstractmethod

import numpy as np

from design_engine.core.design_problem import DesignProblem
from design_engine.criteria.information_matrix import InformationMatrix, information_matrix, information_matrices

# criterion values are nonnegative floats; 0 marks a non-informative design
CriterionValue = float


class CriterionBase(ABC):
    """
    A monotone design criterion evaluated on information matrices. Subclasses
    only implement the batched matrix evaluation.
    """
    name: str = "criterion"

    @abstractmethod
    def evaluate_matrices(self, matrices: np.ndarray) -> np.ndarray:
        """Criterion values for a stack of information matrices of shape (c, m, m)."""

    def evaluate_matrix(self, info: InformationMatrix) -> CriterionValue:
        value = info.criterion_cache.get(self.name)
        if value is None:
            value = float(self.evaluate_matrices(info.matrix[None, :, :])[0])
            info.criterion_cache[self.name] = value
        return value

    def evaluate(self, weights: np.ndarray, problem: DesignProblem) -> CriterionValue:
        return self.evaluate_matrix(information_matrix(weights, problem))

    def evaluate_batch(self, weights: np.ndarray, problem: DesignProblem) -> np.ndarray:
        weights = np.asarray(weights, dtype=np.float64)
        if weights.shape[0] == 0:
            return np.zeros(0)
        return self.evaluate_matrices(information_matrices(weights, problem.regressors))
