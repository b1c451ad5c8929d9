import unittest

import numpy as np

from design_engine.core.constraint_builders import cost_constraint, direct_constraints, material_constraints, \
    stack_constraints, standard_constraint, strata_constraints, time_separation_constraints


class TestConstraintBuilders(unittest.TestCase):

    def test_standard_constraint(self):
        constraints = standard_constraint(4, 10)
        self.assertEqual(constraints.A.tolist(), [[1.0, 1.0, 1.0, 1.0]])
        self.assertEqual(constraints.b.tolist(), [10.0])

    def test_cost_constraint(self):
        constraints = cost_constraint([1.0, 2.0, 0.5], 7)
        self.assertEqual(constraints.k, 1)
        self.assertTrue(constraints.satisfied_by(np.array([1, 1, 8])))
        self.assertFalse(constraints.satisfied_by(np.array([1, 1, 9])))

    def test_direct_constraints(self):
        constraints = direct_constraints([1, 2, 3])
        self.assertTrue(np.array_equal(constraints.A, np.eye(3)))
        self.assertEqual(constraints.headroom_batch(constraints.b[None, :])[0].tolist(), [1, 2, 3])

    def test_strata_constraints_partition(self):
        constraints = strata_constraints([0, 0, 1, 2, 1], [2, 3, 4])
        self.assertEqual(constraints.A.sum(axis=0).tolist(), [1.0] * 5)
        self.assertEqual(constraints.A[1].tolist(), [0.0, 0.0, 1.0, 0.0, 1.0])
        with self.assertRaises(ValueError):
            strata_constraints([0, 3], [1, 1])

    def test_material_constraints_overlap(self):
        constraints = material_constraints([[0, 1], [1, 2]], [2, 2], n=3)
        self.assertEqual(constraints.A.tolist(), [[1.0, 1.0, 0.0], [0.0, 1.0, 1.0]])
        with self.assertRaises(ValueError):
            material_constraints([[0, 1]], [2, 2], n=3)

    def test_time_separation(self):
        constraints = time_separation_constraints(5, 2)
        self.assertEqual(constraints.k, 4)
        self.assertTrue(constraints.satisfied_by(np.array([1, 0, 1, 0, 1])))
        self.assertFalse(constraints.satisfied_by(np.array([1, 1, 0, 0, 0])))
        with self.assertRaises(ValueError):
            time_separation_constraints(3, 4)

    def test_stack_constraints(self):
        stacked = stack_constraints(standard_constraint(3, 5), direct_constraints([1, 1, 1]))
        self.assertEqual(stacked.k, 4)
        self.assertEqual(stacked.b.tolist(), [5.0, 1.0, 1.0, 1.0])
        with self.assertRaises(ValueError):
            stack_constraints()
