import unittest

import numpy as np

from design_engine.criteria.d_criterion import D_OPTIMALITY
from design_engine.problems.quadratic_regression import MARGINAL_LIMITS, RAW_PHI_FACTOR, design_points, point_index, \
    quadratic_problem, raw_model_phi


class TestQuadraticProblem(unittest.TestCase):
    def setUp(self):
        self.problem = quadratic_problem(1965)

    def test_dimensions(self):
        self.assertEqual((self.problem.n, self.problem.m, self.problem.k), (54, 6, 19))

    def test_point_index(self):
        self.assertEqual(point_index(949, 0), 1)
        self.assertEqual(point_index(949, 20), 3)
        self.assertEqual(point_index(951, 0), 4)
        self.assertEqual(point_index(967, 20), 54)
        with self.assertRaises(ValueError):
            point_index(950, 0)
        indices = sorted(point_index(x1, x2) for x1 in [949] + list(range(951, 968)) for x2 in (0, 10, 20))
        self.assertEqual(indices, list(range(1, 55)))

    def test_labels_keep_raw_levels(self):
        self.assertEqual(self.problem.labels[3], "(95.1, 0)")
        self.assertEqual(design_points()[53], (96.7, 20))

    def test_marginal_rows_partition_points(self):
        marginal = self.problem.constraints.A[:18]
        self.assertEqual(marginal.sum(axis=0).tolist(), [1.0] * 54)
        self.assertEqual(self.problem.constraints.b[:18].tolist(), [float(x) for x in MARGINAL_LIMITS])
        for r in range(18):
            self.assertEqual(np.flatnonzero(marginal[r]).tolist(), [3 * r, 3 * r + 1, 3 * r + 2])

    def test_cost_row(self):
        costs = self.problem.constraints.A[18]
        self.assertEqual(costs[:6].tolist(), [0.0, 10.0, 20.0, 0.0, 10.0, 20.0])
        self.assertEqual(self.problem.constraints.b[18], 1965.0)

    def test_regressors_are_full_quadratic(self):
        f = self.problem.regressors
        u1, u2 = f[1], f[2]
        self.assertTrue(np.allclose(f[0], 1.0))
        self.assertTrue(np.allclose(f[3], u1 ** 2))
        self.assertTrue(np.allclose(f[4], u2 ** 2))
        self.assertTrue(np.allclose(f[5], u1 * u2))
        self.assertAlmostEqual(u1[0], -1.0)
        self.assertAlmostEqual(u2[2], 1.0)

    def test_budget_sweep(self):
        for budget in range(1100, 3901, 50):
            self.assertEqual(quadratic_problem(budget).constraints.b[-1], float(budget))

    def test_raw_model_factor(self):
        # centring leaves phi unchanged, so the centred uncoded model stands in for the raw one
        raw = np.array(design_points(), dtype=np.float64)
        d1, d2 = raw[:, 0] - 95.8, raw[:, 1] - 10.0
        centred = np.vstack([np.ones_like(d1), d1, d2, d1 ** 2, d2 ** 2, d1 * d2])
        self.assertAlmostEqual(RAW_PHI_FACTOR, 9.0 ** (4.0 / 3.0))
        rng = np.random.default_rng(5)
        for _ in range(20):
            weights = rng.integers(0, 4, size=self.problem.n).astype(np.float64)
            sign, log_det = np.linalg.slogdet((centred * weights) @ centred.T)
            if sign <= 0:
                continue
            coded = D_OPTIMALITY.evaluate(weights, self.problem)
            self.assertAlmostEqual(raw_model_phi(coded) / np.exp(log_det / 6), 1.0, delta=1e-6)
