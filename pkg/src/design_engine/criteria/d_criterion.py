import numpy as np

from design_engine.core.design_problem import DesignProblem
from design_engine.criteria.criterion_base import CriterionBase, CriterionValue
from design_engine.criteria.information_matrix import InformationMatrix

# a Cholesky pivot at or below this fraction of the largest diagonal entry marks a singular matrix
SINGULAR_PIVOT_RTOL = 1e-12


def _cholesky_factors(matrices: np.ndarray):
    """Lower Cholesky factors; matrices that are not positive definite get a NaN factor."""
    try:
        return np.linalg.cholesky(matrices)
    except np.linalg.LinAlgError:
        factors = np.full_like(matrices, np.nan)
        for c, matrix in enumerate(matrices):
            try:
                factors[c] = np.linalg.cholesky(matrix)
            except np.linalg.LinAlgError:
                continue
        return factors


def log_determinants(matrices: np.ndarray) -> np.ndarray:
    """log det for a stack of symmetric PSD matrices; -inf for singular ones."""
    matrices = np.asarray(matrices, dtype=np.float64)
    factors = _cholesky_factors(matrices)
    pivots = np.square(np.diagonal(factors, axis1=-2, axis2=-1))
    scale = np.diagonal(matrices, axis1=-2, axis2=-1).max(axis=-1)
    with np.errstate(invalid="ignore"):
        singular = (scale <= 0) | ~np.all(pivots > SINGULAR_PIVOT_RTOL * scale[:, None], axis=-1)
    result = np.full(matrices.shape[0], -np.inf)
    regular = ~singular
    result[regular] = np.log(pivots[regular]).sum(axis=-1)
    return result


class DCriterion(CriterionBase):
    """
    D-optimality. With root=True the value is det(M)^(1/m), which is concave
    and homogeneous; root=False gives det(M) itself, a strictly monotone
    transform that ranks designs identically.
    """

    def __init__(self, root: bool = True):
        self.root = root
        self.name = "D" if root else "det"

    def evaluate_matrices(self, matrices: np.ndarray) -> np.ndarray:
        log_dets = log_determinants(matrices)
        if self.root:
            log_dets = log_dets / matrices.shape[-1]
        return np.exp(log_dets)


D_OPTIMALITY = DCriterion()


def d_criterion(info: InformationMatrix) -> CriterionValue:
    return D_OPTIMALITY.evaluate_matrix(info)


def d_efficiency(xi: np.ndarray, zeta: np.ndarray, problem: DesignProblem) -> float:
    """Relative D-efficiency phi_D(xi) / phi_D(zeta)."""
    denominator = D_OPTIMALITY.evaluate(zeta, problem)
    if denominator <= 0:
        raise ZeroDivisionError("D-efficiency is undefined against a singular reference design")
    return D_OPTIMALITY.evaluate(xi, problem) / denominator
