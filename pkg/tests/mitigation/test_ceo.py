import unittest

import numpy as np

from fair_world.data.dataset import PRIVILEGED, UNPRIVILEGED
from fair_world.exceptions import MethodFailedError
from fair_world.metrics.report import Prediction
from fair_world.mitigation import CostConstraint, apply, fit_ceo, generalized_costs, group_cost


class TestGroupCost(unittest.TestCase):
    # Tests the generalized costs of a small score vector
    def test_costs(self):
        scores = np.array([0.9, 0.7, 0.2, 0.4])
        truth = np.array([1, 1, 0, 0])
        fn_cost, fp_cost = generalized_costs(scores, truth)
        self.assertAlmostEqual(fn_cost, 0.2)
        self.assertAlmostEqual(fp_cost, 0.3)
        self.assertAlmostEqual(group_cost(scores, truth, CostConstraint.WEIGHTED), 0.5 * 0.3 * 0.5 + 0.5 * 0.2 * 0.5)
        self.assertIsNone(group_cost(scores[:2], truth[:2], CostConstraint.FPR))


class TestFitCeo(unittest.TestCase):
    # Tests that groups with equal costs are left alone
    def test_equal_costs(self):
        scores = np.array([0.8, 0.3, 0.6, 0.1] * 2)
        truth = np.array([1, 0, 1, 0] * 2)
        groups = np.repeat([1, 0], 4)
        post = fit_ceo(scores, truth, groups)
        self.assertEqual(post.mix_rates, {UNPRIVILEGED: 0.0, PRIVILEGED: 0.0})

    # Tests the interpolation endpoint where the cheap group mixes completely
    def test_full_mix(self):
        scores = np.array([0.8, 0.8, 0.8, 0.1, 0.1, 0.6, 0.2])
        truth = np.array([1, 1, 1, 0, 0, 1, 0])
        groups = np.array([1, 1, 1, 1, 1, 0, 0])
        post = fit_ceo(scores, truth, groups, CostConstraint.FNR)
        self.assertAlmostEqual(post.costs[UNPRIVILEGED], 0.2)
        self.assertAlmostEqual(post.costs[PRIVILEGED], 0.4)
        self.assertAlmostEqual(post.mix_rates[UNPRIVILEGED], 1.0)
        self.assertEqual(post.mix_rates[PRIVILEGED], 0.0)

    # Tests that the expected cost after mixing matches the other group's cost
    def test_expected_costs_equal(self):
        rng = np.random.default_rng(50)
        for constraint in CostConstraint:
            groups = np.repeat([1, 0], 200)
            truth = rng.integers(0, 2, size=400)
            noise = np.where(groups == 1, 0.1, 0.35)
            scores = np.clip(truth + rng.normal(scale=noise), 0, 1)
            post = fit_ceo(scores, truth, groups, constraint)

            expected = {}
            for a in (UNPRIVILEGED, PRIVILEGED):
                in_group = groups == a
                rate = post.mix_rates[a]
                mixed = (1 - rate) * scores[in_group] + rate * post.base_rates[a]
                expected[a] = group_cost(mixed, truth[in_group], constraint)
            self.assertLess(abs(expected[UNPRIVILEGED] - expected[PRIVILEGED]), 1e-6, constraint)
            self.assertGreater(post.mix_rates[UNPRIVILEGED], 0.0)

    # Tests that a group with one truth class fails the method
    def test_missing_truth_class(self):
        with self.assertRaises(MethodFailedError):
            fit_ceo(np.array([0.2, 0.7, 0.4, 0.9]), np.array([1, 1, 0, 1]), np.array([1, 1, 0, 0]))
        with self.assertRaises(MethodFailedError):
            fit_ceo(np.array([0.2, 0.7]), np.array([0, 1]), np.array([1, 1]))


class TestApplyCeo(unittest.TestCase):
    # Tests that withheld members receive their group base rate, reproducibly
    def test_apply(self):
        scores = np.array([0.9, 0.8, 0.1, 0.2, 0.6, 0.3])
        truth = np.array([1, 1, 0, 0, 1, 0])
        groups = np.array([1, 1, 1, 1, 0, 0])
        post = fit_ceo(scores, truth, groups, CostConstraint.FNR)
        pred = Prediction(np.arange(6), (scores >= 0.5).astype(int), scores)

        first = apply(post, pred, groups, 4)
        second = apply(post, pred, groups, 4)
        np.testing.assert_array_equal(first.scores, second.scores)
        changed = first.scores != scores
        self.assertTrue(np.all(groups[changed] == UNPRIVILEGED))
        np.testing.assert_array_equal(first.scores[changed], np.full(int(changed.sum()), 0.5))
        self.assertEqual(post.describe()['constraint'], 'fnr')

    # Tests that label-only predictions are refused
    def test_needs_scores(self):
        post = fit_ceo(np.array([0.8, 0.3, 0.6, 0.1]), np.array([1, 0, 1, 0]), np.array([1, 1, 0, 0]))
        with self.assertRaises(ValueError):
            apply(post, Prediction(np.arange(4), np.array([1, 0, 1, 0])), np.array([1, 1, 0, 0]), 0)


if __name__ == '__main__':
    unittest.main()
