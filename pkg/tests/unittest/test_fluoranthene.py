import unittest

import numpy as np

from design_engine.core.design_geometry import is_feasible
from design_engine.criteria.d_criterion import D_OPTIMALITY
from design_engine.data_models.search_config_data import SearchConfigModel
from design_engine.heuristic.tabu_excursion import run
from design_engine.problems.fluoranthene import FluorantheneSpec, cost_class, fluoranthene_problem, \
    mean_concentration, mu_gradient
from tests.unittest.problem_factory import random_feasible_design

THETA2 = 0.2381


class TestMeanGradient(unittest.TestCase):

    def test_zero_at_start(self):
        self.assertTrue(np.array_equal(mu_gradient(0, 1.0, THETA2), np.zeros(2)))

    def test_matches_finite_differences(self):
        gradients = np.array([mu_gradient(t, 1.0, THETA2) for t in range(145)])
        scale = np.abs(gradients).max(axis=0)
        for t in range(145):
            h1, h2 = 1e-6, 1e-6 * THETA2
            d1 = (mean_concentration(t, 1 + h1, THETA2) - mean_concentration(t, 1 - h1, THETA2)) / (2 * h1)
            d2 = (mean_concentration(t, 1.0, THETA2 + h2) - mean_concentration(t, 1.0, THETA2 - h2)) / (2 * h2)
            self.assertAlmostEqual(gradients[t, 0], d1, delta=1e-6 * max(abs(d1), scale[0] * 1e-3))
            self.assertAlmostEqual(gradients[t, 1], d2, delta=1e-6 * max(abs(d2), scale[1] * 1e-3))


class TestCostClass(unittest.TestCase):

    def test_examples(self):
        self.assertEqual(cost_class(34, 0), 1.0)
        self.assertEqual(cost_class(0, 132), 2.0)
        self.assertEqual(cost_class(7, 0), 1.5)
        self.assertEqual(cost_class(0, 0), 2.0)
        self.assertEqual(cost_class(0, 115), 2.0)
        self.assertEqual(cost_class(0, 114), 1.5)
        self.assertEqual(cost_class(0, 6), 1.5)

    def test_weekly_counts(self):
        classes = [cost_class(h, 0) for h in range(168)]
        self.assertEqual(classes.count(1.0), 45)
        self.assertEqual(classes.count(2.0), 59)
        self.assertEqual(classes.count(1.5), 64)

    def test_periodic(self):
        for s in range(168):
            for t in (0, 50, 144):
                self.assertEqual(cost_class(s, t), cost_class((s + t) % 168, 0))


class TestFluorantheneProblem(unittest.TestCase):

    def test_shape(self):
        problem = fluoranthene_problem(FluorantheneSpec(s=0))
        self.assertEqual((problem.n, problem.m, problem.k), (145, 2, 146))
        self.assertEqual(np.flatnonzero(problem.base).tolist(), [0, 72, 144])
        self.assertAlmostEqual(float(problem.constraints.A[0] @ problem.base), 5.5)

    def test_every_start_hour_is_valid(self):
        for s in range(168):
            problem = fluoranthene_problem(FluorantheneSpec(s=s))
            self.assertTrue(problem.constraints.satisfied_by(problem.base))
            self.assertLessEqual(float(problem.constraints.A[0] @ problem.base), 13.0)

    def test_designs_are_zero_one(self):
        problem = fluoranthene_problem(FluorantheneSpec(s=30))
        rng = np.random.default_rng(4)
        for _ in range(20):
            design = random_feasible_design(problem, rng, steps=50)
            self.assertLessEqual(int(design.max()), 1)

    def test_search_output_respects_budget(self):
        for s in (0, 100):
            problem = fluoranthene_problem(FluorantheneSpec(s=s))
            config = SearchConfigModel(stall_limit=300, restarts=1, seed=s, time_limit=30)
            result = run(problem, D_OPTIMALITY, config)
            self.assertLessEqual(int(result.best.max()), 1)
            self.assertTrue(np.all(result.best[[0, 72, 144]] == 1))
            self.assertLessEqual(float(problem.constraints.A[0] @ result.best), 13.0 + 1e-9)
            self.assertGreater(result.best_phi, 0.0)

    def test_search_output_for_every_start_hour(self):
        config = SearchConfigModel(stall_limit=50, restarts=1, seed=3, time_limit=30)
        for s in range(168):
            problem = fluoranthene_problem(FluorantheneSpec(s=s))
            result = run(problem, D_OPTIMALITY, config)
            with self.subTest(s=s):
                self.assertTrue(np.all((result.best == 0) | (result.best == 1)))
                self.assertTrue(np.all(result.best[[0, 72, 144]] == 1))
                self.assertLessEqual(float(problem.constraints.A[0] @ result.best), 13.0 + 1e-9)
                self.assertTrue(is_feasible(result.best, problem))

    def test_uptake_scale_does_not_change_ranking(self):
        rng = np.random.default_rng(9)
        problems = {theta1: fluoranthene_problem(FluorantheneSpec(s=10, theta1=theta1)) for theta1 in (0.5, 1.0, 2.0)}
        for _ in range(30):
            design = random_feasible_design(problems[1.0], rng, steps=6)
            reference = D_OPTIMALITY.evaluate(design, problems[1.0])
            for theta1, problem in problems.items():
                self.assertAlmostEqual(D_OPTIMALITY.evaluate(design, problem), theta1 * reference,
                                       delta=1e-9 * max(1.0, reference))
