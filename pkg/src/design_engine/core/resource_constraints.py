from dataclasses import dataclass
from functools import cached_property

import numpy as np
from loguru import logger
from scipy import sparse

from design_engine.common.design_errors import DesignProblemError

# row r is satisfied iff sum_i a_ri * x_i <= b_r + FEASIBILITY_RTOL * max(1, |b_r|)
FEASIBILITY_RTOL = 1e-9
# coefficients below this fraction of max|A| are ignored when computing headroom
TINY_COEFFICIENT_RTOL = 1e-12


def _fail(msg: str):
    logger.error(msg)
    raise DesignProblemError(msg)


@dataclass(frozen=True, eq=False)
class ResourceConstraints:
    """
    System of resource constraints A x <= b.

    A is stored dense (row-major) for consumption and residuals, and as a
    compressed-column index of its effective (non-tiny) entries for headroom,
    so that per-point operations only touch the rows a point consumes.
    """
    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a_matrix = np.array(self.A, dtype=np.float64, ndmin=2)
        limits = np.array(self.b, dtype=np.float64).reshape(-1)
        if a_matrix.ndim != 2:
            _fail(f"Constraint matrix must be two-dimensional, got shape {a_matrix.shape}")
        if a_matrix.shape[0] != limits.shape[0]:
            _fail(f"Constraint matrix has {a_matrix.shape[0]} rows but {limits.shape[0]} limits were given")
        if not np.all(np.isfinite(a_matrix)):
            _fail("Constraint matrix contains non-finite coefficients")
        if not np.all(np.isfinite(limits)) or np.any(limits <= 0):
            bad = np.flatnonzero(~np.isfinite(limits) | (limits <= 0))
            _fail(f"Resource limits must be positive and finite; violated by rows {(bad + 1).tolist()}")
        if np.any(a_matrix < 0):
            rows, cols = np.nonzero(a_matrix < 0)
            _fail(f"Consumption coefficients must be nonnegative; "
                  f"violated at (row, point) {(rows[0] + 1, cols[0] + 1)}")
        max_coefficient = float(a_matrix.max()) if a_matrix.size else 0.0
        effective = a_matrix > TINY_COEFFICIENT_RTOL * max_coefficient
        free_points = np.flatnonzero(~effective.any(axis=0))
        if free_points.size > 0:
            _fail(f"No trial is completely free; points {(free_points + 1).tolist()} consume no resource")
        a_matrix.setflags(write=False)
        limits.setflags(write=False)
        object.__setattr__(self, "A", a_matrix)
        object.__setattr__(self, "b", limits)

    @property
    def k(self) -> int:
        return self.A.shape[0]

    @property
    def n(self) -> int:
        return self.A.shape[1]

    @cached_property
    def tolerance(self) -> np.ndarray:
        return FEASIBILITY_RTOL * np.maximum(1.0, np.abs(self.b))

    @cached_property
    def _csr(self) -> sparse.csr_array:
        return sparse.csr_array(self.A)

    @cached_property
    def _column_index(self) -> sparse.csc_array:
        max_coefficient = float(self.A.max())
        effective = np.where(self.A > TINY_COEFFICIENT_RTOL * max_coefficient, self.A, 0.0)
        index = sparse.csc_array(effective)
        index.sort_indices()
        return index

    @cached_property
    def _csc(self) -> sparse.csc_array:
        index = sparse.csc_array(self.A)
        index.sort_indices()
        return index

    def column(self, i: int) -> np.ndarray:
        return self.A[:, i]

    def column_entries(self, i: int):
        """(rows, coefficients) of the nonzero entries of column i."""
        index = self._csc
        start, stop = index.indptr[i], index.indptr[i + 1]
        return index.indices[start:stop], index.data[start:stop]

    def consumption(self, weights: np.ndarray) -> np.ndarray:
        return self._csr @ np.asarray(weights, dtype=np.float64)

    def residuals(self, weights: np.ndarray) -> np.ndarray:
        return self.b - self.consumption(weights)

    def satisfied_by(self, weights: np.ndarray) -> bool:
        return bool(np.all(self.consumption(weights) <= self.b + self.tolerance))

    def headroom_batch(self, residuals: np.ndarray) -> np.ndarray:
        """
        Largest integer step counts d[c, i] such that a design with residuals
        residuals[c] can add d[c, i] trials at point i and stay feasible.
        """
        index = self._column_index
        slack = residuals + self.tolerance
        ratios = slack[:, index.indices] / index.data
        steps = np.minimum.reduceat(ratios, index.indptr[:-1], axis=1)
        return np.maximum(np.floor(steps), 0).astype(np.int64)

    def gamma_batch(self, residuals: np.ndarray, headroom: np.ndarray) -> np.ndarray:
        """Largest gamma keeping design + gamma * headroom inside the approximate polyhedron."""
        usage = (self._csr @ headroom.T.astype(np.float64)).T
        with np.errstate(divide="ignore", invalid="ignore"):
            ratios = np.where(usage > 0, residuals / usage, np.inf)
        gammas = ratios.min(axis=1, initial=np.inf)
        gammas[~np.isfinite(gammas)] = 0.0
        return np.maximum(gammas, 0.0)
