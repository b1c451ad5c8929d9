"""
Builders for the common families of resource constraints. Each returns a
ResourceConstraints block; blocks combine with stack_constraints.
"""
from typing import Sequence

import numpy as np

from design_engine.core.resource_constraints import ResourceConstraints


def standard_constraint(n: int, size_limit: float) -> ResourceConstraints:
    """At most size_limit trials in total."""
    return ResourceConstraints(A=np.ones((1, n)), b=[size_limit])


def cost_constraint(costs: Sequence[float], budget: float) -> ResourceConstraints:
    return ResourceConstraints(A=np.asarray(costs, dtype=np.float64)[None, :], b=[budget])


def direct_constraints(limits: Sequence[float]) -> ResourceConstraints:
    """At most limits[i] trials at point i (a_ri is the Kronecker delta)."""
    limits = np.asarray(limits, dtype=np.float64)
    return ResourceConstraints(A=np.eye(limits.shape[0]), b=limits)


def strata_constraints(stratum_of_point: Sequence[int], limits: Sequence[float]) -> ResourceConstraints:
    """
    Marginal (strata) restrictions over a partition of the design space:
    stratum_of_point[i] is the 0-based stratum of point i.
    """
    strata = np.asarray(stratum_of_point, dtype=np.int64)
    limits = np.asarray(limits, dtype=np.float64)
    if strata.min() < 0 or strata.max() >= limits.shape[0]:
        raise ValueError(f"Stratum labels must lie in 0..{limits.shape[0] - 1}")
    a_matrix = np.zeros((limits.shape[0], strata.shape[0]))
    a_matrix[strata, np.arange(strata.shape[0])] = 1.0
    return ResourceConstraints(A=a_matrix, b=limits)


def material_constraints(subsets: Sequence[Sequence[int]], limits: Sequence[float], n: int) -> ResourceConstraints:
    """One unit of material r is consumed by a trial at any point of subsets[r]; subsets may overlap."""
    if len(subsets) != len(limits):
        raise ValueError(f"Got {len(subsets)} subsets but {len(limits)} limits")
    a_matrix = np.zeros((len(subsets), n))
    for r, subset in enumerate(subsets):
        a_matrix[r, list(subset)] = 1.0
    return ResourceConstraints(A=a_matrix, b=limits)


def time_separation_constraints(horizon: int, delta: int) -> ResourceConstraints:
    """Consecutive trials on the time points 0..horizon-1 must be at least delta moments apart."""
    if not 1 <= delta <= horizon:
        raise ValueError(f"Separation {delta} must lie in 1..{horizon}")
    windows = horizon - delta + 1
    a_matrix = np.zeros((windows, horizon))
    for r in range(windows):
        a_matrix[r, r:r + delta] = 1.0
    return ResourceConstraints(A=a_matrix, b=np.ones(windows))


def stack_constraints(*blocks: ResourceConstraints) -> ResourceConstraints:
    if not blocks:
        raise ValueError("At least one constraint block is required")
    return ResourceConstraints(
        A=np.vstack([block.A for block in blocks]),
        b=np.concatenate([block.b for block in blocks]),
    )
