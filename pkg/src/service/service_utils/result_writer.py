import csv
import sys
from typing import Dict, List, Optional

import numpy as np
from loguru import logger
from pydantic import BaseModel

from design_engine.heuristic.search_state import SearchTrace
from service.service_data_models.run_result_data import SweepRow
from service.service_utils.problem_file_loader import dump_yaml

TRACE_COLUMNS = ["step_kind", "phi", "elapsed_s"]


def sparse_design(design: np.ndarray) -> Dict[int, int]:
    """1-based point index -> replications, nonzero entries only."""
    return {int(i) + 1: int(design[i]) for i in np.flatnonzero(design)}


def dense_design(sparse: Dict[int, int], n: int) -> np.ndarray:
    design = np.zeros(n, dtype=np.int64)
    for index, count in sparse.items():
        if not 1 <= int(index) <= n:
            raise ValueError(f"Point index {index} outside 1..{n}")
        design[int(index) - 1] = int(count)
    return design


def write_model(model: BaseModel, path: Optional[str] = None) -> str:
    # python mode keeps integer point indices as mapping keys
    text = dump_yaml(model.model_dump(mode="python"))
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
        logger.info(f"Wrote {type(model).__name__} to {path}")
    return text


def write_trace(trace: SearchTrace, path: str):
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(TRACE_COLUMNS)
        for event in trace.events:
            writer.writerow([event.kind.value, repr(float(event.phi)), f"{event.elapsed:.6f}"])
    logger.info(f"Wrote {len(trace)} trace events to {path}")


def write_sweep(rows: List[SweepRow], path: Optional[str] = None):
    columns = list(SweepRow.model_fields)

    def write(f):
        writer = csv.writer(f)
        writer.writerow(columns)
        for row in rows:
            values = row.model_dump()
            writer.writerow(["" if values[c] is None else _cell(values[c]) for c in columns])

    if path is None:
        write(sys.stdout)
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="") as f:
            write(f)
        logger.info(f"Wrote {len(rows)} sweep rows to {path}")


def _cell(value) -> str:
    return repr(value) if isinstance(value, float) else str(value)
