from dataclasses import dataclass, field
from typing import Optional, List

import numpy as np
from loguru import logger

from design_engine.common.design_errors import DesignProblemError
from design_engine.core.resource_constraints import ResourceConstraints


def _fail(msg: str):
    logger.error(msg)
    raise DesignProblemError(msg)


def as_exact_design(values, n: Optional[int] = None) -> np.ndarray:
    """Coerce to a nonnegative integer replication vector."""
    raw = np.asarray(values)
    design = np.rint(raw).astype(np.int64).reshape(-1)
    if raw.size and not np.array_equal(design, raw.reshape(-1)):
        raise ValueError("Exact design must have integer components")
    if np.any(design < 0):
        raise ValueError("Exact design must have nonnegative components")
    if n is not None and design.shape[0] != n:
        raise ValueError(f"Design length {design.shape[0]} does not match problem size {n}")
    return design


@dataclass(frozen=True, eq=False)
class DesignProblem:
    """
    Resource-constrained exact design problem: regressors F (m x n, column i is
    f_i), constraints A x <= b and the protected base design that every
    feasible design must dominate.
    """
    regressors: np.ndarray
    constraints: ResourceConstraints
    base: np.ndarray = None
    labels: Optional[List[str]] = field(default=None)
    name: str = "explicit"

    def __post_init__(self):
        regressors = np.array(self.regressors, dtype=np.float64, ndmin=2)
        if regressors.ndim != 2:
            _fail(f"Regressor matrix must be two-dimensional, got shape {regressors.shape}")
        m, n = regressors.shape
        if not np.all(np.isfinite(regressors)):
            _fail("Regressor matrix contains non-finite values")
        if self.constraints.n != n:
            _fail(f"Constraint matrix has {self.constraints.n} columns but there are {n} design points")
        if m > n:
            _fail(f"m > n: {m} parameters cannot be estimated from {n} design points")
        if self.base is None:
            base = np.zeros(n, dtype=np.int64)
        else:
            try:
                base = as_exact_design(self.base, n)
            except ValueError as e:
                _fail(f"Invalid base design: {e}")
        if self.labels is not None and len(self.labels) != n:
            _fail(f"Got {len(self.labels)} labels for {n} design points")
        if not self.constraints.satisfied_by(base):
            _fail("base infeasible: the base design violates the resource constraints")
        residuals = self.constraints.residuals(base)
        if not np.any(self.constraints.headroom_batch(residuals[None, :])):
            _fail("base maximal: no forward step is feasible from the base design")
        regressors.setflags(write=False)
        base.setflags(write=False)
        object.__setattr__(self, "regressors", regressors)
        object.__setattr__(self, "base", base)
        if self.labels is not None:
            object.__setattr__(self, "labels", [str(x) for x in self.labels])

    @property
    def m(self) -> int:
        return self.regressors.shape[0]

    @property
    def n(self) -> int:
        return self.regressors.shape[1]

    @property
    def k(self) -> int:
        return self.constraints.k
