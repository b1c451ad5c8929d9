"""
Exhaustive enumeration of the feasible exact designs of small problems, used
as ground truth for the heuristic.
"""
from dataclasses import dataclass, field
from typing import Iterator, List

import numpy as np
from loguru import logger
from tqdm import tqdm

from design_engine.common.design_errors import EnumerationCapError
from design_engine.core.design_geometry import headroom_from_residuals
from design_engine.core.design_problem import DesignProblem
from design_engine.criteria.criterion_base import CriterionBase
from design_engine.criteria.d_criterion import D_OPTIMALITY
from engine_utils.time_utils import timeit

DEFAULT_CANDIDATE_CAP = 10 ** 7
TIE_RTOL = 1e-12
EVALUATION_CHUNK = 4096


@dataclass
class EnumerationReport:
    feasible_count: int
    maximal_designs: List[np.ndarray] = field(default_factory=list)
    global_optima: List[np.ndarray] = field(default_factory=list)
    optimum_phi: float = 0.0
    local_optima: List[np.ndarray] = field(default_factory=list)
    local_phis: List[float] = field(default_factory=list)


def candidate_bound(problem: DesignProblem) -> int:
    """Size of the box spanned by the per-point headroom at the base design."""
    steps = headroom_from_residuals(problem.constraints.residuals(problem.base), problem.constraints)
    bound = 1
    for step in steps.tolist():
        bound *= step + 1
    return bound


def enumerate_feasible(problem: DesignProblem, cap: int = DEFAULT_CANDIDATE_CAP) -> Iterator[np.ndarray]:
    """Every feasible design exactly once, in lexicographic order of the added counts."""
    bound = candidate_bound(problem)
    if bound > cap:
        logger.error(f"Enumeration of {problem.name} refused: bound {bound} exceeds cap {cap}")
        raise EnumerationCapError(bound, cap)
    constraints = problem.constraints
    n = problem.n
    design = problem.base.copy()
    columns = [constraints.column(i) for i in range(n)]

    def walk(i: int, r: np.ndarray) -> Iterator[np.ndarray]:
        if i == n:
            yield design.copy()
            return
        extra = 0
        while True:
            yield from walk(i + 1, r)
            r = r - columns[i]
            if np.any(r < -constraints.tolerance):
                break
            extra += 1
            design[i] += 1
        design[i] -= extra

    yield from walk(0, constraints.residuals(design))


def _evaluate(designs: np.ndarray, problem: DesignProblem, criterion: CriterionBase) -> np.ndarray:
    phis = np.empty(designs.shape[0])
    for start in range(0, designs.shape[0], EVALUATION_CHUNK):
        phis[start:start + EVALUATION_CHUNK] = criterion.evaluate_batch(designs[start:start + EVALUATION_CHUNK], problem)
    return phis


def _collect(problem: DesignProblem, cap: int, progress: bool) -> np.ndarray:
    designs = enumerate_feasible(problem, cap)
    if progress:
        designs = tqdm(designs, desc=f"enumerating {problem.name}", unit="design")
    return np.array(list(designs), dtype=np.int64).reshape(-1, problem.n)


def _maximal_mask(designs: np.ndarray, problem: DesignProblem) -> np.ndarray:
    constraints = problem.constraints
    residual_rows = problem.constraints.b[None, :] - (constraints.A @ designs.T).T
    return ~np.any(constraints.headroom_batch(residual_rows) > 0, axis=1)


def _strictly_better(phi: float, other: float) -> bool:
    return phi > other + TIE_RTOL * max(abs(phi), abs(other))


def _tie_classes(phis: np.ndarray) -> np.ndarray:
    """Integer class per design, increasing with phi; values within TIE_RTOL of their neighbour share a class."""
    order = np.argsort(phis, kind="stable")
    ordered = phis[order]
    scale = np.maximum(np.abs(ordered[1:]), np.abs(ordered[:-1]))
    steps = ordered[1:] > ordered[:-1] + TIE_RTOL * scale
    classes = np.empty(phis.shape[0], dtype=np.int64)
    classes[order] = np.concatenate([[0], np.cumsum(steps)])
    return classes


def _merge_top_two(a1, a2, b1, b2):
    # top two of the union of two sorted pairs coming from disjoint cell sets
    return np.maximum(a1, b1), np.maximum(np.minimum(a1, b1), np.maximum(a2, b2))


def _local_optima(designs: np.ndarray, phis: np.ndarray, problem: DesignProblem) -> List[int]:
    """
    Strict optima under the box neighbourhood: every coordinate may move by -1,
    0 or +1. The two best tie classes over each box are found by a separable
    max filter on the candidate box, one axis at a time, so the cost is linear
    in the box size instead of exponential in n.
    """
    if designs.shape[0] == 0:
        return []
    dims = (designs.max(axis=0) - problem.base + 1).tolist()
    strides = np.ones(len(dims), dtype=np.int64)
    for j in range(len(dims) - 2, -1, -1):
        strides[j] = strides[j + 1] * dims[j + 1]
    cells = (designs - problem.base) @ strides
    size = int(np.prod(dims, dtype=np.int64))

    classes = _tie_classes(phis)
    top1 = np.full(size, -1, dtype=np.int64)
    top1[cells] = classes
    top2 = np.full(size, -1, dtype=np.int64)
    outer = 1
    for j, length in enumerate(dims):
        inner = size // (outer * length)
        if length > 1:
            shape = (outer, length, inner)
            t1, t2 = top1.reshape(shape), top2.reshape(shape)
            n1, n2 = t1.copy(), t2.copy()
            for here, there in ((np.s_[:, 1:], np.s_[:, :-1]), (np.s_[:, :-1], np.s_[:, 1:])):
                n1[here], n2[here] = _merge_top_two(n1[here], n2[here], t1[there], t2[there])
            top1, top2 = n1.reshape(-1), n2.reshape(-1)
        outer *= length
    strict = (top1[cells] == classes) & (top2[cells] < classes)
    return np.flatnonzero(strict).tolist()


@timeit
def global_optimum(problem: DesignProblem, criterion: CriterionBase = D_OPTIMALITY,
                   cap: int = DEFAULT_CANDIDATE_CAP, progress: bool = False) -> EnumerationReport:
    designs = _collect(problem, cap, progress)
    phis = _evaluate(designs, problem, criterion)
    best = float(phis.max())
    optima = np.flatnonzero(~np.array([_strictly_better(best, phi) for phi in phis]))
    local = _local_optima(designs, phis, problem)
    report = EnumerationReport(
        feasible_count=designs.shape[0],
        maximal_designs=list(designs[_maximal_mask(designs, problem)]),
        global_optima=[designs[i] for i in optima],
        optimum_phi=best,
        local_optima=[designs[i] for i in local],
        local_phis=[float(phis[i]) for i in local],
    )
    logger.info(f"Enumerated {report.feasible_count} feasible designs of {problem.name}: "
                f"{len(report.maximal_designs)} maximal, {len(report.local_optima)} strict local optima, "
                f"optimum phi {best:.10g}")
    return report


def local_optima(problem: DesignProblem, criterion: CriterionBase = D_OPTIMALITY,
                 cap: int = DEFAULT_CANDIDATE_CAP) -> List[np.ndarray]:
    designs = _collect(problem, cap, progress=False)
    phis = _evaluate(designs, problem, criterion)
    return [designs[i] for i in _local_optima(designs, phis, problem)]
