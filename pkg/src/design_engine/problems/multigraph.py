import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from loguru import logger

from design_engine.problems.block_designs import pair_index, treatment_pairs

Edge = Tuple[int, int]


@dataclass
class Multigraph:
    """Undirected multigraph on vertices 1..v; multiplicity maps a pair (t1 < t2) to its edge count."""
    v: int
    multiplicity: Dict[Edge, int] = field(default_factory=dict)

    def __post_init__(self):
        for (t1, t2), count in self.multiplicity.items():
            if t1 == t2:
                raise ValueError(f"Self-loop at vertex {t1}")
            if not (1 <= min(t1, t2) and max(t1, t2) <= self.v):
                raise ValueError(f"Edge ({t1}, {t2}) leaves the vertex set 1..{self.v}")
            if count < 0:
                raise ValueError(f"Negative multiplicity {count} on edge ({t1}, {t2})")
        self.multiplicity = {(min(e), max(e)): int(c) for e, c in self.multiplicity.items() if c > 0}

    @property
    def edge_count(self) -> int:
        return sum(self.multiplicity.values())

    def laplacian(self) -> np.ndarray:
        lap = np.zeros((self.v, self.v))
        for (t1, t2), count in self.multiplicity.items():
            lap[t1 - 1, t1 - 1] += count
            lap[t2 - 1, t2 - 1] += count
            lap[t1 - 1, t2 - 1] -= count
            lap[t2 - 1, t1 - 1] -= count
        return lap

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(1, self.v + 1))
        for (t1, t2), count in self.multiplicity.items():
            graph.add_edges_from([(t1, t2)] * count)
        return graph


def concurrence_graph(design: Sequence[int], v: int) -> Multigraph:
    design = np.asarray(design)
    if design.shape[0] != v * (v - 1) // 2:
        raise ValueError(f"Block design over v={v} treatments needs {v * (v - 1) // 2} points, got {design.shape[0]}")
    return Multigraph(v, {pair: int(design[pair_index(*pair, v) - 1]) for pair in treatment_pairs(v)})


def complete_multipartite_graph(partition_sizes: Sequence[int]) -> Multigraph:
    part_of = [p for p, size in enumerate(partition_sizes) for _ in range(size)]
    v = len(part_of)
    return Multigraph(v, {(t1, t2): 1 for t1, t2 in treatment_pairs(v) if part_of[t1 - 1] != part_of[t2 - 1]})


def matrix_tree_count(graph: Multigraph) -> int:
    """Number of spanning trees: determinant of the Laplacian with its last row and column removed."""
    if graph.v < 2:
        raise ValueError("Spanning trees need at least two vertices")
    sign, log_det = np.linalg.slogdet(graph.laplacian()[:-1, :-1])
    if sign <= 0:
        return 0
    value = math.exp(log_det)
    count = round(value)
    assert abs(value - count) < 1e-6 * max(count, 1), f"Laplacian minor {value} is not integral"
    return int(count)


def multipartite_tree_count(v: int, partition_sizes: Sequence[int]) -> int:
    """Spanning trees of the complete multipartite graph, v^(p-2) * prod (v - k_j)^(k_j - 1), exactly."""
    p = len(partition_sizes)
    if p < 2 or sum(partition_sizes) != v or min(partition_sizes) < 1:
        msg = f"Partition sizes {list(partition_sizes)} must be at least two positive parts summing to {v}"
        logger.error(msg)
        raise ValueError(msg)
    count = v ** (p - 2)
    for size in partition_sizes:
        count *= (v - size) ** (size - 1)
    return count


def almost_regular_partition(v: int, p: int) -> List[int]:
    """Sizes of p parts of v vertices differing by at most one, largest first."""
    if not 1 <= p <= v:
        raise ValueError(f"Cannot split {v} vertices into {p} nonempty parts")
    size, extra = divmod(v, p)
    return [size + 1] * extra + [size] * (p - extra)


def multipartite_reference_phi(v: int, edges: int) -> Optional[float]:
    """
    D-criterion value of the complete almost-regular multipartite graph with
    exactly `edges` edges on v vertices, or None if no such graph exists.
    These graphs maximise the spanning tree count among simple graphs of
    their size, so the value is the optimum of the block problem with N = edges.
    """
    for p in range(2, v + 1):
        sizes = almost_regular_partition(v, p)
        if (v * v - sum(k * k for k in sizes)) // 2 == edges:
            return multipartite_tree_count(v, sizes) ** (1.0 / (v - 1))
    return None
