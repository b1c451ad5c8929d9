from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import yaml
from loguru import logger
from tqdm import tqdm

from design_engine.common.design_errors import ProblemFileError
from design_engine.core.design_geometry import is_feasible
from design_engine.core.design_problem import DesignProblem
from design_engine.criteria.criterion_base import CriterionBase
from design_engine.criteria.d_criterion import D_OPTIMALITY
from design_engine.data_models.search_config_data import SearchConfigModel
from design_engine.heuristic.attribute_token import attr
from design_engine.heuristic.tabu_excursion import SearchResult, run
from design_engine.oracle.enumeration import DEFAULT_CANDIDATE_CAP, global_optimum
from design_engine.problems.block_designs import BlockProblemSpec
from design_engine.problems.multigraph import multipartite_reference_phi
from design_engine.problems.quadratic_regression import raw_model_phi
from service.service_data_models.problem_file_data import ProblemFamily
from service.service_data_models.run_result_data import ComparisonData, OptimumEntry, RunResult, SweepRow, \
    VerifyReport
from service.service_utils.problem_file_loader import FAMILY_BUILDERS, LoadedProblem, build_family_problem, \
    dump_yaml, emit_problem, load_problem_file
from service.service_utils.result_writer import sparse_design, write_model, write_sweep, write_trace


def run_result(loaded: LoadedProblem, result: SearchResult, config: SearchConfigModel,
               criterion: CriterionBase) -> RunResult:
    assert is_feasible(result.best, loaded.problem), "search returned an infeasible design"
    return RunResult(
        problem=loaded.problem.name,
        criterion=criterion.name,
        best_design=sparse_design(result.best),
        phi=float(result.best_phi),
        token=list(result.token),
        elapsed=float(result.elapsed),
        iterations=int(result.iterations),
        restarts=int(result.restarts),
        seed=int(result.seed),
        config=config.model_dump(mode="json"),
    )


def solve(problem_path: str, config: SearchConfigModel, out: Optional[str] = None,
          trace_path: Optional[str] = None, criterion: CriterionBase = D_OPTIMALITY) -> RunResult:
    loaded = load_problem_file(problem_path)
    if trace_path is not None and not config.record_steps:
        config = config.model_copy(update={"record_steps": True})
    result = run(loaded.problem, criterion, config, approximate=loaded.approximate)
    output = run_result(loaded, result, config, criterion)
    write_model(output, out)
    if trace_path is not None:
        write_trace(result.trace, trace_path)
    return output


def verify(problem_path: str, config: SearchConfigModel, compare: bool = False, out: Optional[str] = None,
           cap: int = DEFAULT_CANDIDATE_CAP, criterion: CriterionBase = D_OPTIMALITY) -> VerifyReport:
    loaded = load_problem_file(problem_path)
    problem = loaded.problem
    report = global_optimum(problem, criterion, cap=cap, progress=True)
    comparison = None
    if compare:
        if report.optimum_phi <= 0:
            msg = "Efficiency is undefined: every feasible design is singular"
            logger.error(msg)
            raise ZeroDivisionError(msg)
        result = run(problem, criterion, config, approximate=loaded.approximate)
        comparison = ComparisonData(
            heuristic_phi=float(result.best_phi),
            heuristic_design=sparse_design(result.best),
            efficiency=float(result.best_phi / report.optimum_phi),
            token_match=result.token == attr(report.optimum_phi, config.n_round),
            seed=int(result.seed),
        )
        logger.info(f"Heuristic efficiency against the enumerated optimum: {comparison.efficiency:.10g}")
    output = VerifyReport(
        problem=problem.name,
        criterion=criterion.name,
        feasible_count=report.feasible_count,
        maximal_count=len(report.maximal_designs),
        optimum_phi=float(report.optimum_phi),
        global_optima=[OptimumEntry(design=sparse_design(d), phi=float(report.optimum_phi))
                       for d in report.global_optima],
        local_optima=[OptimumEntry(design=sparse_design(d), phi=float(phi))
                      for d, phi in zip(report.local_optima, report.local_phis)],
        comparison=comparison,
    )
    write_model(output, out)
    return output


def gen(family: str, parameters: Dict[str, Any], explicit: bool = False, out: Optional[str] = None) -> str:
    """Emit a problem file for a family, as a family descriptor or expanded into explicit arrays."""
    family = ProblemFamily(family)
    problem = build_family_problem(family, parameters)
    if explicit:
        text = emit_problem(problem, out)
    else:
        spec_model, _ = FAMILY_BUILDERS[family]
        spec = spec_model.model_validate(parameters)
        data = {"family": family.value}
        data.update(spec.model_dump(mode="python", by_alias=True, exclude_none=True))
        text = dump_yaml(data, out)
    if out is None:
        print(text, end="")
    else:
        logger.info(f"Wrote {problem.name} problem file to {out}")
    return text


def load_reference_weights(path: str) -> Dict[Any, np.ndarray]:
    """A YAML mapping from swept parameter values to approximate designs."""
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f)
    if not isinstance(data, dict):
        msg = f"Reference file {path} must map parameter values to weight lists"
        logger.error(msg)
        raise ProblemFileError(msg)
    return {key: np.asarray(weights, dtype=np.float64) for key, weights in data.items()}


def reference_phi(family: ProblemFamily, parameters: Dict[str, Any], problem: DesignProblem,
                  criterion: CriterionBase, weights: Optional[np.ndarray] = None) -> Optional[float]:
    if weights is not None:
        if weights.shape != (problem.n,):
            msg = f"Reference design for {problem.name} has {weights.size} weights, expected {problem.n}"
            logger.error(msg)
            raise ProblemFileError(msg)
        return float(criterion.evaluate(weights, problem))
    if family != ProblemFamily.BLOCK or criterion.name != D_OPTIMALITY.name:
        return None
    spec = BlockProblemSpec.model_validate(parameters)
    if spec.treatment_limits is not None or not float(spec.block_limit).is_integer():
        return None
    return multipartite_reference_phi(spec.v, int(spec.block_limit))


def sweep(family: str, parameters: Dict[str, Any], parameter: str, values: Sequence[Any],
          config: SearchConfigModel, out: Optional[str] = None, reference_path: Optional[str] = None,
          criterion: CriterionBase = D_OPTIMALITY) -> List[SweepRow]:
    """
    Solve one family instance per value of a single parameter and tabulate the
    restart spread. Efficiency is reported against approximate designs from
    reference_path, or for block designs against the complete multipartite
    graph with N edges when one exists.
    """
    family = ProblemFamily(family)
    references = load_reference_weights(reference_path) if reference_path is not None else {}
    rows = []
    for value in tqdm(values, desc=f"sweeping {parameter}", unit="instance"):
        instance_parameters = {**parameters, parameter: value}
        problem = build_family_problem(family, instance_parameters)
        reference = reference_phi(family, instance_parameters, problem, criterion, references.get(value))
        result = run(problem, criterion, config)
        efficiency = None
        if reference is not None:
            if reference <= 0:
                logger.warning(f"Reference design for {problem.name} is singular, efficiency left empty")
            else:
                efficiency = float(result.best_phi / reference)
        bests = np.asarray(result.search_bests, dtype=np.float64)
        rows.append(SweepRow(
            instance=problem.name,
            parameter=parameter,
            value=value,
            best_phi=float(result.best_phi),
            median_phi=float(np.median(bests)),
            min_phi=float(bests.min()),
            max_phi=float(bests.max()),
            uncoded_phi=raw_model_phi(result.best_phi) if family == ProblemFamily.QUADRATIC else None,
            reference_phi=reference,
            efficiency=efficiency,
            iterations=int(result.iterations),
            seed=int(result.seed),
            elapsed=float(result.elapsed),
        ))
    write_sweep(rows, out)
    return rows
