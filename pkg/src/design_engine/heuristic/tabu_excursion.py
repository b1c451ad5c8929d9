"""
Tabu excursion search over feasible exact designs.

An excursion moves by forward and backward steps, always to the neighbour with
the largest local evaluation val among the neighbours whose attribute is not
yet in the tabu list V. When every neighbour is tabu the blockage is resolved
by a uniformly random step. Maximal designs are compared with the best design
found so far; after more than back_max backward steps the excursion is
declared a failure and restarts from the best design, keeping V.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from loguru import logger

from design_engine.core.design_geometry import is_feasible, residuals, update_residuals
from design_engine.core.design_problem import DesignProblem
from design_engine.criteria.criterion_base import CriterionBase
from design_engine.criteria.d_criterion import D_OPTIMALITY
from design_engine.criteria.information_matrix import InformationMatrix, information_matrix, update_information
from design_engine.data_models.search_config_data import SearchConfigModel
from design_engine.heuristic.attribute_token import AttributeToken, attr
from design_engine.heuristic.initial_designs import initial_design
from design_engine.heuristic.local_evaluation import DesignEvaluator
from design_engine.heuristic.search_state import SearchState, SearchTrace, StepKind, TraceEvent
from engine_utils.interval_counter import IntervalCounter
from engine_utils.time_utils import Stopwatch, timeit


@dataclass
class SearchResult:
    best: np.ndarray
    best_phi: float
    token: AttributeToken
    trace: SearchTrace
    iterations: int
    restarts: int
    seed: int
    elapsed: float
    search_bests: List[float] = field(default_factory=list)

    def __iter__(self):
        # unpacks as (best, trace)
        return iter((self.best, self.trace))


class TabuExcursion:
    """One independent search: its own tabu list, random stream and best design."""

    def __init__(self, problem: DesignProblem, criterion: CriterionBase, config: SearchConfigModel,
                 search_index: int = 0):
        self.problem = problem
        self.criterion = criterion
        self.config = config
        self.search_index = search_index
        self.evaluator = DesignEvaluator(problem, criterion, incremental=config.incremental_updates,
                                         n_round=config.n_round)
        self.trace = SearchTrace()
        self.stopwatch = Stopwatch()

    def create_state(self, initial: np.ndarray, rng: np.random.Generator) -> SearchState:
        current = np.array(initial, dtype=np.int64)
        if not is_feasible(current, self.problem):
            msg = "Initial design is infeasible"
            logger.error(msg)
            raise ValueError(msg)
        phi = self.evaluator.phi(current)
        return SearchState(
            current=current,
            residuals=residuals(current, self.problem.constraints),
            information=information_matrix(current, self.problem).matrix,
            current_phi=phi,
            best=current.copy(),
            best_phi=phi,
            rng=rng,
            current_token=attr(phi, self.config.n_round),
        )

    def _record(self, kind: StepKind, phi: float, point: Optional[int] = None, force: bool = False):
        if force or self.config.record_steps:
            self.trace.append(TraceEvent(
                kind=kind, token=attr(phi, self.config.n_round), phi=phi,
                elapsed=self.stopwatch.elapsed(), search_index=self.search_index, point=point,
            ))

    def _refresh(self, state: SearchState):
        state.residuals = residuals(state.current, self.problem.constraints)
        state.information = information_matrix(state.current, self.problem).matrix
        state.steps_since_refresh = 0

    def _move(self, state: SearchState, i: int, direction: int, phi: float, token: AttributeToken,
              kind: StepKind):
        state.current[i] += direction
        state.residuals = update_residuals(state.residuals, i, direction, self.problem.constraints)
        state.information = update_information(InformationMatrix(state.information), i, direction, self.problem).matrix
        state.current_phi = phi
        state.current_token = token
        state.last_kind = kind
        state.steps_since_refresh += 1
        if state.steps_since_refresh >= self.config.refresh_interval:
            self._refresh(state)
        self._record(kind, phi, point=i)

    def _best_move(self, state: SearchState, key: bytes, points: np.ndarray,
                   direction: int) -> Optional[Tuple[int, float, AttributeToken]]:
        """Non-tabu neighbour with the largest val; ties go to the smallest point index."""
        if points.size == 0:
            return None
        hood = self.evaluator.neighbourhood(state.current, state.residuals, state.information,
                                            points, direction, key=key)
        tabu = state.tabu
        allowed = np.fromiter((token not in tabu for token in hood.tokens), dtype=bool, count=len(hood.tokens))
        if not allowed.any():
            return None
        c = int(np.argmax(np.where(allowed, hood.vals, -np.inf)))
        return int(points[c]), float(hood.phis[c]), hood.tokens[c]

    def _random_move(self, state: SearchState, up: np.ndarray, low: np.ndarray):
        total = low.size + up.size
        if total == 0:
            msg = "Design has no neighbours; the base design must not be maximal"
            logger.error(msg)
            raise RuntimeError(msg)
        pick = int(state.rng.integers(total))
        if pick < low.size:
            i, direction = int(low[pick]), -1
        else:
            i, direction = int(up[pick - low.size]), +1
        phis, _ = self.evaluator.neighbors(state.current, state.residuals, state.information,
                                           np.array([i]), direction)
        phi = float(phis[0])
        self._move(state, i, direction, phi, attr(phi, self.config.n_round), StepKind.BLOCKAGE_RANDOM)

    def _backward(self, state: SearchState, key: bytes, low: np.ndarray) -> bool:
        move = self._best_move(state, key, low, -1)
        if move is None:
            return False
        self._move(state, move[0], -1, move[1], move[2], StepKind.BACKWARD)
        state.back_count += 1
        return True

    def _forward(self, state: SearchState, key: bytes, up: np.ndarray) -> bool:
        move = self._best_move(state, key, up, +1)
        if move is None:
            return False
        self._move(state, move[0], +1, move[1], move[2], StepKind.FORWARD)
        return True

    def step(self, state: SearchState) -> SearchState:
        key = state.current.tobytes()
        up = self.evaluator.upper_points(state.current, state.residuals, key=key)
        low = np.flatnonzero(state.current > self.problem.base)
        token = state.current_token
        if token is None:
            token = attr(state.current_phi, self.config.n_round)
        if token not in state.tabu:
            state.tabu.add(token)
            if not self._forward(state, key, up):
                if up.size == 0 and state.best_phi < state.current_phi:
                    state.best = state.current.copy()
                    state.best_phi = state.current_phi
                    state.back_count = 0
                    self._record(StepKind.NEW_BEST, state.best_phi, force=True)
                    logger.debug("[search {}] new best phi {:.10g} after {} iterations",
                                 self.search_index, state.best_phi, state.iterations)
                if not self._backward(state, key, low):
                    self._random_move(state, up, low)
        elif not self._backward(state, key, low) and not self._forward(state, key, up):
            self._random_move(state, up, low)

        if state.back_count > self.config.back_max:
            state.current = state.best.copy()
            state.current_phi = state.best_phi
            state.current_token = attr(state.best_phi, self.config.n_round)
            state.back_count = 0
            self._refresh(state)
            self._record(StepKind.RESTART, state.best_phi)
        state.iterations += 1
        if self.config.check_invariants:
            assert is_feasible(state.current, self.problem), "current design left the feasible set"
            assert is_feasible(state.best, self.problem), "best design left the feasible set"
            assert state.back_count <= self.config.back_max
        return state

    def search(self, initial: np.ndarray, rng: np.random.Generator) -> SearchState:
        config = self.config
        self.stopwatch = Stopwatch()
        state = self.create_state(initial, rng)
        counter = IntervalCounter(f"search {self.search_index}", interval=config.progress_interval)

        def progress_fields():
            return {"best_phi": f"{state.best_phi:.10g}", "tabu": len(state.tabu)}

        stall = 0
        while not self.stopwatch.expired(config.time_limit):
            if config.stall_limit is not None and stall >= config.stall_limit:
                break
            previous_best = state.best_phi
            self.step(state)
            stall = 0 if state.best_phi > previous_best else stall + 1
            counter.add(fields=progress_fields)
        logger.debug("[search {}] finished: {} iterations, best phi {:.10g}, |V| = {}",
                     self.search_index, state.iterations, state.best_phi, len(state.tabu))
        return state


def excursion_step(state: SearchState, problem: DesignProblem, criterion: CriterionBase,
                   config: SearchConfigModel, excursion: Optional[TabuExcursion] = None) -> SearchState:
    """One iteration of the excursion; pass a long-lived excursion to reuse its value caches."""
    if excursion is None:
        excursion = TabuExcursion(problem, criterion, config)
    return excursion.step(state)


def derive_seed(config: SearchConfigModel) -> int:
    if config.seed is not None:
        return config.seed
    return int(np.random.SeedSequence().entropy % (2 ** 64))


@timeit
def run(problem: DesignProblem, criterion: CriterionBase = D_OPTIMALITY, config: Optional[SearchConfigModel] = None,
        approximate: Optional[np.ndarray] = None) -> SearchResult:
    """
    Independent searches, one per restart, each with its own tabu list and a
    random stream spawned from the run seed by restart index. The best design
    over all searches wins; ties go to the smallest restart index.
    """
    config = config or SearchConfigModel()
    seed = derive_seed(config)
    streams = np.random.SeedSequence(seed).spawn(config.restarts)
    stopwatch = Stopwatch()

    def run_one(index: int):
        rng = np.random.default_rng(streams[index])
        excursion = TabuExcursion(problem, criterion, config, search_index=index)
        initial = initial_design(config, problem, rng, approximate)
        return excursion.search(initial, rng), excursion.trace

    if config.workers > 1 and config.restarts > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as executor:
            outcomes = list(executor.map(run_one, range(config.restarts)))
    else:
        outcomes = [run_one(index) for index in range(config.restarts)]

    trace = SearchTrace()
    best_index = 0
    for index, (state, search_trace) in enumerate(outcomes):
        trace.extend(search_trace)
        if state.best_phi > outcomes[best_index][0].best_phi:
            best_index = index
    best_state = outcomes[best_index][0]
    result = SearchResult(
        best=best_state.best.copy(),
        best_phi=best_state.best_phi,
        token=attr(best_state.best_phi, config.n_round),
        trace=trace,
        iterations=sum(state.iterations for state, _ in outcomes),
        restarts=config.restarts,
        seed=seed,
        elapsed=stopwatch.elapsed(),
        search_bests=[state.best_phi for state, _ in outcomes],
    )
    logger.info("Search finished: best phi {:.10g} over {} restarts, {} iterations in {:.2f}s",
                result.best_phi, result.restarts, result.iterations, result.elapsed)
    return result
