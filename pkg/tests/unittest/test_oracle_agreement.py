import time
import unittest

import numpy as np

from design_engine.criteria.d_criterion import D_OPTIMALITY
from design_engine.data_models.search_config_data import SearchConfigModel
from design_engine.heuristic.attribute_token import attr
from design_engine.heuristic.tabu_excursion import run
from design_engine.oracle.enumeration import global_optimum
from tests.unittest.problem_factory import random_problem

SUITE_SECONDS = 60


class TestOracleAgreement(unittest.TestCase):
    """The heuristic reaches the enumerated optimum on small random problems."""

    def test_random_small_problems(self):
        rng = np.random.default_rng(7)
        started = time.monotonic()
        for index in range(20):
            # every size from 2 to 5 points, five problems each
            n = 2 + index % 4
            m = int(rng.integers(1, min(n, 3) + 1))
            k = int(rng.integers(1, 5))
            problem = random_problem(rng, n=n, m=m, k=k)
            report = global_optimum(problem, D_OPTIMALITY)
            config = SearchConfigModel(stall_limit=2000, restarts=5, seed=index, time_limit=60)
            result = run(problem, D_OPTIMALITY, config)
            with self.subTest(index=index, problem=problem.name):
                self.assertEqual(result.token, attr(report.optimum_phi, config.n_round))
                self.assertTrue(any(np.array_equal(result.best, d) for d in report.global_optima)
                                or abs(result.best_phi - report.optimum_phi) <= 1e-9 * max(1.0, report.optimum_phi))
        self.assertLess(time.monotonic() - started, SUITE_SECONDS)
