"""
Problem files are YAML documents in one of two forms:

* family form: ``family: block|quadratic|fluoranthene|toy`` plus that
  family's parameters as sibling keys;
* explicit form: ``F`` (m x n), ``A`` (k x n), ``b`` (k), optional ``xi0``
  (n, default zero), ``labels``, ``name``.

Both forms accept ``approximate``, weights used by floor initialisation.
The grammar is documented in docs/problem_file_format.md.
"""
import os
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Tuple, Type

import numpy as np
import yaml
from loguru import logger
from pydantic import BaseModel, ValidationError

from design_engine.common.design_errors import DesignProblemError, ProblemFileError
from design_engine.core.design_problem import DesignProblem
from design_engine.core.resource_constraints import ResourceConstraints
from design_engine.problems.block_designs import BlockProblemSpec, block_problem
from design_engine.problems.fluoranthene import FluorantheneSpec, fluoranthene_problem
from design_engine.problems.quadratic_regression import QuadraticProblemSpec, quadratic_problem_from_spec
from design_engine.problems.toy_problem import ToyProblemSpec, toy_problem_from_spec
from service.service_data_models.problem_file_data import ExplicitProblemFile, FamilyProblemFile, ProblemFamily

FAMILY_BUILDERS: Dict[ProblemFamily, Tuple[Type[BaseModel], Callable[[Any], DesignProblem]]] = {
    ProblemFamily.TOY: (ToyProblemSpec, toy_problem_from_spec),
    ProblemFamily.BLOCK: (BlockProblemSpec, block_problem),
    ProblemFamily.QUADRATIC: (QuadraticProblemSpec, quadratic_problem_from_spec),
    ProblemFamily.FLUORANTHENE: (FluorantheneSpec, fluoranthene_problem),
}


@dataclass
class LoadedProblem:
    problem: DesignProblem
    approximate: Optional[np.ndarray] = None


def _fail(msg: str):
    logger.error(msg)
    raise ProblemFileError(msg)


def _describe(error: ValidationError) -> str:
    return "; ".join(f"{'.'.join(str(p) for p in e['loc']) or '<root>'}: {e['msg']}" for e in error.errors())


def build_family_problem(family: ProblemFamily, parameters: Dict[str, Any]) -> DesignProblem:
    spec_model, builder = FAMILY_BUILDERS[ProblemFamily(family)]
    try:
        spec = spec_model.model_validate(parameters)
    except ValidationError as e:
        _fail(f"Invalid parameters for family {family.value}: {_describe(e)}")
    return builder(spec)


def problem_from_data(data: Any) -> LoadedProblem:
    if not isinstance(data, dict):
        _fail("Problem file must contain a key/value mapping")
    try:
        if "family" in data:
            family_file = FamilyProblemFile.model_validate(data)
            problem = build_family_problem(family_file.family, family_file.parameters)
            approximate = family_file.approximate
        else:
            explicit = ExplicitProblemFile.model_validate(data)
            problem = DesignProblem(
                regressors=np.array(explicit.F, dtype=np.float64),
                constraints=ResourceConstraints(A=np.array(explicit.A, dtype=np.float64), b=explicit.b),
                base=explicit.xi0,
                labels=explicit.labels,
                name=explicit.name,
            )
            approximate = explicit.approximate
    except ValidationError as e:
        _fail(f"Malformed problem file: {_describe(e)}")
    except DesignProblemError as e:
        _fail(f"Invalid problem: {e}")
    if approximate is not None:
        approximate = np.asarray(approximate, dtype=np.float64)
    return LoadedProblem(problem=problem, approximate=approximate)


def load_problem_file(path: str) -> LoadedProblem:
    if not os.path.isfile(path):
        _fail(f"Problem file {path} not found")
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            _fail(f"Problem file {path} is not valid YAML: {e}")
    loaded = problem_from_data(data)
    logger.info(f"Loaded problem {loaded.problem.name} from {path}: "
                f"n={loaded.problem.n}, m={loaded.problem.m}, k={loaded.problem.k}")
    return loaded


def parse_problem(path: str) -> DesignProblem:
    return load_problem_file(path).problem


def explicit_data(problem: DesignProblem, approximate: Optional[np.ndarray] = None) -> Dict[str, Any]:
    data = {
        "name": problem.name,
        "F": problem.regressors.tolist(),
        "A": problem.constraints.A.tolist(),
        "b": problem.constraints.b.tolist(),
        "xi0": problem.base.tolist(),
    }
    if problem.labels is not None:
        data["labels"] = list(problem.labels)
    if approximate is not None:
        data["approximate"] = np.asarray(approximate, dtype=np.float64).tolist()
    return data


def dump_yaml(data: Dict[str, Any], path: Optional[str] = None) -> str:
    # PyYAML writes floats with repr, so values round-trip exactly
    text = yaml.safe_dump(data, sort_keys=False, default_flow_style=None, width=120)
    if path is not None:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    return text


def emit_problem(problem: DesignProblem, path: Optional[str] = None,
                 approximate: Optional[np.ndarray] = None) -> str:
    """Write the explicit form of a problem; returns the YAML text."""
    return dump_yaml(explicit_data(problem, approximate), path)
