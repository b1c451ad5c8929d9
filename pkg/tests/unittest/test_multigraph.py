import unittest

import numpy as np

from design_engine.criteria.d_criterion import D_OPTIMALITY, DCriterion
from design_engine.oracle.spanning_trees import MAX_EDGES, spanning_tree_brute
from design_engine.problems.block_designs import BlockProblemSpec, block_problem, pair_index
from design_engine.problems.multigraph import Multigraph, almost_regular_partition, complete_multipartite_graph, \
    concurrence_graph, matrix_tree_count, multipartite_reference_phi, multipartite_tree_count

DETERMINANT = DCriterion(root=False)


def integer_partitions(v, largest=None):
    largest = largest or v
    if v == 0:
        yield []
        return
    for part in range(min(v, largest), 0, -1):
        for rest in integer_partitions(v - part, part):
            yield [part] + rest


class TestConcurrenceGraph(unittest.TestCase):

    def test_triangle(self):
        graph = concurrence_graph(np.array([1, 1, 1]), 3)
        self.assertEqual(graph.multiplicity, {(1, 2): 1, (1, 3): 1, (2, 3): 1})
        self.assertEqual(graph.edge_count, 3)

    def test_complete_bipartite(self):
        design = np.zeros(6, dtype=np.int64)
        for pair in [(1, 3), (1, 4), (2, 3), (2, 4)]:
            design[pair_index(*pair, 4) - 1] = 1
        graph = concurrence_graph(design, 4)
        self.assertEqual(set(graph.multiplicity), {(1, 3), (1, 4), (2, 3), (2, 4)})
        self.assertEqual(matrix_tree_count(graph), 4)

    def test_zero_design(self):
        graph = concurrence_graph(np.zeros(6, dtype=np.int64), 4)
        self.assertEqual(graph.edge_count, 0)
        self.assertEqual(matrix_tree_count(graph), 0)

    def test_wrong_length(self):
        with self.assertRaises(ValueError):
            concurrence_graph(np.zeros(5), 4)

    def test_invalid_multigraphs(self):
        with self.assertRaises(ValueError):
            Multigraph(3, {(1, 1): 1})
        with self.assertRaises(ValueError):
            Multigraph(3, {(1, 2): -1})

    def test_networkx_export(self):
        graph = Multigraph(3, {(1, 2): 2, (2, 3): 1}).to_networkx()
        self.assertEqual(graph.number_of_nodes(), 3)
        self.assertEqual(graph.number_of_edges(), 3)


class TestTreeCounts(unittest.TestCase):

    def test_matrix_tree_examples(self):
        self.assertEqual(matrix_tree_count(Multigraph(3, {(1, 2): 1, (1, 3): 1, (2, 3): 1})), 3)
        self.assertEqual(matrix_tree_count(Multigraph(4, {(1, 2): 1, (3, 4): 1})), 0)
        self.assertEqual(matrix_tree_count(Multigraph(2, {(1, 2): 2})), 2)

    def test_multipartite_examples(self):
        self.assertEqual(multipartite_tree_count(4, [2, 2]), 4)
        self.assertEqual(multipartite_tree_count(16, [8, 8]), 4398046511104)
        self.assertEqual(multipartite_tree_count(6, [3, 3]), 81)

    def test_multipartite_contract(self):
        with self.assertRaises(ValueError):
            multipartite_tree_count(5, [2, 2])
        with self.assertRaises(ValueError):
            multipartite_tree_count(4, [4])

    def test_multipartite_agrees_with_laplacian(self):
        for v in range(2, 10):
            for partition in integer_partitions(v):
                if len(partition) < 2:
                    continue
                graph = complete_multipartite_graph(partition)
                self.assertEqual(matrix_tree_count(graph), multipartite_tree_count(v, partition), partition)

    def test_kirchhoff_equivalence(self):
        rng = np.random.default_rng(12)
        problems = {v: block_problem(BlockProblemSpec(v=v, block_limit=100)) for v in range(3, 9)}
        for _ in range(200):
            v = int(rng.integers(3, 9))
            problem = problems[v]
            design = rng.integers(0, 3, size=problem.n)
            graph = concurrence_graph(design, v)
            count = matrix_tree_count(graph)
            self.assertEqual(round(DETERMINANT.evaluate(design, problem)), count)
            if graph.edge_count <= MAX_EDGES:
                self.assertEqual(spanning_tree_brute(graph), count)


class TestMultipartiteReference(unittest.TestCase):

    def test_almost_regular_partition(self):
        self.assertEqual(almost_regular_partition(16, 3), [6, 5, 5])
        self.assertEqual(almost_regular_partition(16, 5), [4, 3, 3, 3, 3])
        self.assertEqual(almost_regular_partition(4, 4), [1, 1, 1, 1])
        with self.assertRaises(ValueError):
            almost_regular_partition(3, 4)

    def test_reference_block_sizes(self):
        # 16 treatments: edge counts of the almost-regular multipartite graphs
        known = [64, 85, 96, 102, 106, 109, 112] + list(range(113, 121))
        self.assertEqual([e for e in range(15, 121) if multipartite_reference_phi(16, e) is not None], known)
        self.assertAlmostEqual(multipartite_reference_phi(16, 64), 4398046511104 ** (1 / 15), delta=1e-9)

    def test_reference_matches_design_value(self):
        v = 6
        problem = block_problem(BlockProblemSpec(v=v, block_limit=12))
        graph = complete_multipartite_graph(almost_regular_partition(v, 3))
        design = np.zeros(problem.n, dtype=np.int64)
        for pair in graph.multiplicity:
            design[pair_index(*pair, v) - 1] = 1
        self.assertEqual(int(design.sum()), 12)
        self.assertAlmostEqual(multipartite_reference_phi(v, 12), D_OPTIMALITY.evaluate(design, problem),
                               delta=1e-9)
