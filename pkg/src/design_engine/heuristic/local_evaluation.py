from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from design_engine.core.design_geometry import headroom_from_residuals, lookahead_design
from design_engine.core.design_problem import DesignProblem
from design_engine.criteria.criterion_base import CriterionBase
from design_engine.criteria.information_matrix import rank_one_updates
from design_engine.heuristic.attribute_token import AttributeToken, attr


def val(zeta: np.ndarray, problem: DesignProblem, criterion: CriterionBase) -> float:
    """
    Estimate of the best criterion value among augmentations of zeta: the
    criterion at the largest feasible approximate design zeta + gamma * d(zeta).
    """
    return criterion.evaluate(lookahead_design(zeta, problem), problem)


@dataclass(frozen=True)
class Neighbourhood:
    """Forward or backward neighbours of one design with their phi, val and attribute."""
    points: np.ndarray
    phis: np.ndarray
    vals: np.ndarray
    tokens: List[AttributeToken]


class DesignEvaluator:
    """
    Batched phi / val evaluation of the neighbours of a design. Both values are
    pure functions of the design, so they are memoised per design for the
    lifetime of one search, as are whole neighbourhoods and forward point sets.
    """

    def __init__(self, problem: DesignProblem, criterion: CriterionBase, incremental: bool = True,
                 n_round: int = 9, cache_limit: int = 1 << 16, neighbourhood_limit: int = 1 << 13):
        self.problem = problem
        self.criterion = criterion
        self.incremental = incremental
        self.n_round = n_round
        self.cache_limit = cache_limit
        self.neighbourhood_limit = neighbourhood_limit
        self._phi_cache: Dict[bytes, float] = {}
        self._val_cache: Dict[bytes, float] = {}
        self._up_cache: Dict[bytes, np.ndarray] = {}
        self._neighbourhoods: Dict[Tuple[bytes, int], Neighbourhood] = {}

    @staticmethod
    def _remember(cache: dict, key, value, limit: int):
        if len(cache) >= limit:
            cache.clear()
        cache[key] = value

    def phi(self, design: np.ndarray) -> float:
        key = design.tobytes()
        value = self._phi_cache.get(key)
        if value is None:
            value = self.criterion.evaluate(design, self.problem)
            self._remember(self._phi_cache, key, value, self.cache_limit)
        return value

    def upper_points(self, design: np.ndarray, residuals: np.ndarray, key: Optional[bytes] = None) -> np.ndarray:
        """Points with positive headroom, i.e. the forward neighbourhood U."""
        key = design.tobytes() if key is None else key
        up = self._up_cache.get(key)
        if up is None:
            up = np.flatnonzero(headroom_from_residuals(residuals, self.problem.constraints) > 0)
            self._remember(self._up_cache, key, up, self.neighbourhood_limit)
        return up

    def neighbourhood(self, design: np.ndarray, residuals: np.ndarray, information: np.ndarray,
                      points: np.ndarray, direction: int, key: Optional[bytes] = None) -> Neighbourhood:
        """
        All neighbours design + direction * e_i, i in points. points must be the
        full forward (or backward) set of design, so it is implied by the key.
        """
        cache_key = (design.tobytes() if key is None else key, direction)
        hood = self._neighbourhoods.get(cache_key)
        if hood is None:
            phis, vals = self.neighbors(design, residuals, information, points, direction)
            hood = Neighbourhood(points=points, phis=phis, vals=vals,
                                 tokens=[attr(phi, self.n_round) for phi in phis.tolist()])
            self._remember(self._neighbourhoods, cache_key, hood, self.neighbourhood_limit)
        return hood

    def neighbors(self, design: np.ndarray, residuals: np.ndarray, information: np.ndarray,
                  points: np.ndarray, direction: int) -> Tuple[np.ndarray, np.ndarray]:
        """phi and val of design + direction * e_i for every i in points."""
        count = points.shape[0]
        candidates = np.repeat(design[None, :], count, axis=0)
        candidates[np.arange(count), points] += direction
        keys = [row.tobytes() for row in candidates]
        phis = np.array([self._phi_cache.get(key, np.nan) for key in keys])
        vals = np.array([self._val_cache.get(key, np.nan) for key in keys])

        missing_phi = np.flatnonzero(np.isnan(phis))
        if missing_phi.size:
            if self.incremental:
                matrices = rank_one_updates(information, points[missing_phi], direction, self.problem.regressors)
                phis[missing_phi] = self.criterion.evaluate_matrices(matrices)
            else:
                phis[missing_phi] = self.criterion.evaluate_batch(candidates[missing_phi], self.problem)
            for c in missing_phi:
                self._remember(self._phi_cache, keys[c], float(phis[c]), self.cache_limit)

        missing_val = np.flatnonzero(np.isnan(vals))
        if missing_val.size:
            constraints = self.problem.constraints
            candidate_residuals = residuals[None, :] - direction * constraints.A[:, points[missing_val]].T
            steps = constraints.headroom_batch(candidate_residuals)
            gammas = constraints.gamma_batch(candidate_residuals, steps)
            lookahead = candidates[missing_val] + gammas[:, None] * steps
            vals[missing_val] = self.criterion.evaluate_batch(lookahead, self.problem)
            for c in missing_val:
                self._remember(self._val_cache, keys[c], float(vals[c]), self.cache_limit)
        return phis, vals
