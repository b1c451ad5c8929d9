import unittest

import numpy as np

from design_engine.criteria.information_matrix import information_matrices, information_matrix, rank_one_updates, \
    update_information
from tests.unittest.problem_factory import random_problem


class TestInformationMatrix(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(7)
        self.problem = random_problem(self.rng, n=6, m=3, k=2)
        self.weights = self.rng.integers(0, 4, size=6).astype(np.float64)

    def test_matches_definition(self):
        f = self.problem.regressors
        expected = f @ np.diag(self.weights) @ f.T
        info = information_matrix(self.weights, self.problem)
        self.assertTrue(np.allclose(info.matrix, expected))
        self.assertTrue(np.array_equal(info.matrix, info.matrix.T))
        self.assertEqual(info.m, 3)

    def test_rejects_wrong_length(self):
        with self.assertRaises(ValueError):
            information_matrix(np.ones(5), self.problem)

    def test_batch_matches_single(self):
        batch = self.rng.integers(0, 4, size=(5, 6)).astype(np.float64)
        matrices = information_matrices(batch, self.problem.regressors)
        for c in range(5):
            self.assertTrue(np.allclose(matrices[c], information_matrix(batch[c], self.problem).matrix))

    def test_update_matches_recompute(self):
        info = information_matrix(self.weights, self.problem)
        updated = update_information(info, 2, +1, self.problem)
        weights = self.weights.copy()
        weights[2] += 1
        self.assertTrue(np.allclose(updated.matrix, information_matrix(weights, self.problem).matrix))
        restored = update_information(updated, 2, -1, self.problem)
        self.assertTrue(np.allclose(restored.matrix, info.matrix))

    def test_rank_one_updates(self):
        info = information_matrix(self.weights, self.problem)
        points = np.array([0, 3, 5])
        updates = rank_one_updates(info.matrix, points, -1, self.problem.regressors)
        self.assertEqual(updates.shape, (3, 3, 3))
        for c, i in enumerate(points):
            self.assertTrue(np.allclose(updates[c], update_information(info, int(i), -1, self.problem).matrix))

    def test_long_update_chain_matches_recompute(self):
        weights = self.weights.copy()
        info = information_matrix(weights, self.problem)
        for _ in range(1000):
            i = int(self.rng.integers(self.problem.n))
            direction = -1 if weights[i] > 0 and self.rng.random() < 0.5 else 1
            info = update_information(info, i, direction, self.problem)
            weights[i] += direction
        np.testing.assert_allclose(info.matrix, information_matrix(weights, self.problem).matrix, rtol=0, atol=1e-9)
        self.assertTrue(np.array_equal(info.matrix, info.matrix.T))
