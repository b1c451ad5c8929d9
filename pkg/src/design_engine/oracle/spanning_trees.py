import itertools

from loguru import logger
from networkx.utils import UnionFind

from design_engine.common.design_errors import EnumerationCapError
from design_engine.problems.multigraph import Multigraph

MAX_VERTICES = 8
MAX_EDGES = 20


def spanning_tree_brute(graph: Multigraph) -> int:
    """Count spanning trees by testing every (v-1)-subset of edges; parallel edges are distinct."""
    if graph.v > MAX_VERTICES or graph.edge_count > MAX_EDGES:
        msg = f"Brute-force spanning trees are limited to {MAX_VERTICES} vertices and {MAX_EDGES} edges, " \
              f"got {graph.v} and {graph.edge_count}"
        logger.error(msg)
        if graph.v > MAX_VERTICES:
            raise EnumerationCapError(graph.v, MAX_VERTICES)
        raise EnumerationCapError(graph.edge_count, MAX_EDGES)
    if graph.v == 1:
        return 1
    edges = [edge for edge, count in graph.multiplicity.items() for _ in range(count)]
    count = 0
    for subset in itertools.combinations(edges, graph.v - 1):
        components = UnionFind(range(1, graph.v + 1))
        for t1, t2 in subset:
            if components[t1] == components[t2]:
                break
            components.union(t1, t2)
        else:
            # v - 1 merges without a cycle connect all v vertices
            count += 1
    return count
