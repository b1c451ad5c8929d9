from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Set

import numpy as np

from design_engine.heuristic.attribute_token import AttributeToken


class StepKind(str, Enum):
    FORWARD = "forward"
    BACKWARD = "backward"
    BLOCKAGE_RANDOM = "blockage-random"
    RESTART = "restart"
    NEW_BEST = "new-best"


@dataclass
class TraceEvent:
    kind: StepKind
    token: AttributeToken
    phi: float
    elapsed: float
    search_index: int = 0
    # 0-based point moved by the step, None for events that move nothing
    point: Optional[int] = None


@dataclass
class SearchTrace:
    events: List[TraceEvent] = field(default_factory=list)

    def append(self, event: TraceEvent):
        if self.events and self.events[-1].search_index == event.search_index:
            assert event.elapsed >= self.events[-1].elapsed, "trace timestamps must be nondecreasing"
        self.events.append(event)

    def extend(self, other: "SearchTrace"):
        self.events.extend(other.events)

    def of_kind(self, kind: StepKind) -> List[TraceEvent]:
        return [event for event in self.events if event.kind == kind]

    def __len__(self):
        return len(self.events)


@dataclass
class SearchState:
    """Mutable state of one excursion; owned by a single search."""
    current: np.ndarray
    residuals: np.ndarray
    information: np.ndarray
    current_phi: float
    best: np.ndarray
    best_phi: float
    rng: np.random.Generator
    tabu: Set[AttributeToken] = field(default_factory=set)
    back_count: int = 0
    iterations: int = 0
    steps_since_refresh: int = 0
    last_kind: StepKind = StepKind.FORWARD
    current_token: Optional[AttributeToken] = None
