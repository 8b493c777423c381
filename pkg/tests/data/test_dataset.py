import unittest

import numpy as np
import pandas as pd

from fair_world.data.dataset import PRIVILEGED, UNPRIVILEGED, Dataset, make_fold_plan
from fair_world.exceptions import DatasetError
from fair_world.ingestion.synthetic import make_synthetic

from ..toys import toy_dataset


class TestDataset(unittest.TestCase):
    def setUp(self) -> None:
        self.dataset = toy_dataset(sensitive=[1, 1, 0, 0, 1, 0], label=[1, 0, 1, 1, 0, 0])

    # Tests that duplicate instance ids are rejected
    def test_duplicate_ids(self):
        with self.assertRaises(DatasetError):
            toy_dataset(sensitive=[0, 1], label=[0, 1], instance_ids=[3, 3])

    # Tests that non-positive weights are rejected
    def test_non_positive_weights(self):
        with self.assertRaises(DatasetError):
            self.dataset.replace(weight=np.array([1, 1, 1, 0, 1, 1]))

    # Tests that the sensitive column may not be part of the feature table
    def test_sensitive_column_not_a_feature(self):
        with self.assertRaises(DatasetError):
            toy_dataset(sensitive=[0, 1], label=[0, 1], features=pd.DataFrame({'a': [0, 1]}))

    # Tests that weights default to one and the manifest ends with the sensitive column
    def test_defaults(self):
        np.testing.assert_array_equal(self.dataset.weight, np.ones(6))
        self.assertEqual(self.dataset.feature_names, ['x', 'a'])

    # Tests that select keeps the dataset's own row order and drop is its complement
    def test_select_and_drop(self):
        selected = self.dataset.select([4, 0, 2])
        np.testing.assert_array_equal(selected.instance_ids, [0, 2, 4])
        np.testing.assert_array_equal(selected.label, [1, 1, 0])
        dropped = self.dataset.drop([4, 0, 2])
        np.testing.assert_array_equal(dropped.instance_ids, [1, 3, 5])

    # Tests that positions follow the order of the requested ids
    def test_positions(self):
        np.testing.assert_array_equal(self.dataset.positions([5, 1]), [5, 1])
        with self.assertRaises(DatasetError):
            self.dataset.positions([42])

    # Tests that an empty group is only accepted on group-removed datasets
    def test_require_both_groups(self):
        privileged_only = self.dataset.select([2, 3, 5])
        self.assertEqual(privileged_only.group_size(UNPRIVILEGED), 0)
        with self.assertRaises(DatasetError):
            privileged_only.require_both_groups()
        privileged_only.replace(group_removed=True).require_both_groups()

    # Tests that the flattened frame carries every role column
    def test_to_frame(self):
        frame = self.dataset.to_frame()
        self.assertEqual(list(frame.columns), ['instance_id', 'x', 'a', 'score', 'label', 'weight'])
        self.assertEqual(len(frame), 6)

    # Tests that value equality compares every column
    def test_equals(self):
        self.assertTrue(self.dataset.equals(self.dataset.replace()))
        self.assertFalse(self.dataset.equals(self.dataset.replace(label=1 - self.dataset.label)))


class TestFoldPlan(unittest.TestCase):
    # Tests that 20 rows over 5 folds give folds of exactly 4 rows
    def test_equal_fold_sizes(self):
        dataset = toy_dataset(sensitive=[0, 1] * 10, label=[0, 0, 1, 1] * 5)
        plan = make_fold_plan(dataset, 5, seed=7)
        self.assertEqual(plan.fold_sizes(), [4, 4, 4, 4, 4])

    # Tests that the assignment is deterministic given the seed
    def test_deterministic(self):
        dataset = make_synthetic(n=200, seed=1)
        self.assertEqual(make_fold_plan(dataset, 5, 3).assignment, make_fold_plan(dataset, 5, 3).assignment)
        self.assertNotEqual(make_fold_plan(dataset, 5, 3).assignment, make_fold_plan(dataset, 5, 4).assignment)

    # Tests that the assignment only depends on ids, not on row order
    def test_row_order_invariant(self):
        dataset = make_synthetic(n=150, seed=2)
        order = np.random.default_rng(0).permutation(len(dataset))
        shuffled = Dataset(
            name=dataset.name,
            instance_ids=dataset.instance_ids[order],
            features=dataset.features.iloc[order],
            sensitive=dataset.sensitive[order],
            score=dataset.score[order],
            label=dataset.label[order],
            threshold=dataset.threshold,
            sensitive_name=dataset.sensitive_name,
        )
        self.assertEqual(make_fold_plan(dataset, 5, 11).assignment, make_fold_plan(shuffled, 5, 11).assignment)

    # Tests that the folds partition the dataset and are stratified by (A, Y)
    def test_partition_and_stratification(self):
        dataset = make_synthetic(n=1000, seed=3)
        plan = make_fold_plan(dataset, 10, seed=1)
        self.assertTrue(plan.stratified)
        self.assertEqual(sum(plan.fold_sizes()), len(dataset))
        overall = dataset.positive_rate()
        for fold in range(10):
            rows = dataset.select(plan.fold_ids(fold))
            self.assertAlmostEqual(rows.positive_rate(), overall, delta=0.03)

    # Tests that stratification falls back to plain random folds when a cell is too small
    def test_stratification_fallback(self):
        dataset = toy_dataset(sensitive=[1] + [0] * 11, label=[1] + [0, 1] * 5 + [0])
        with self.assertLogs('fair_world.data.dataset', level='WARNING'):
            plan = make_fold_plan(dataset, 3, seed=0)
        self.assertFalse(plan.stratified)

    # Tests that rotations hold out fold i for testing and fold i + 1 for validation
    def test_rotation(self):
        dataset = make_synthetic(n=60, seed=4)
        plan = make_fold_plan(dataset, 3, seed=0).rotation(2)
        self.assertEqual((plan.test_fold, plan.validation_fold), (2, 0))
        held_out = set(plan.test_ids()) | set(plan.validation_ids())
        self.assertFalse(held_out & set(plan.train_ids()))
        self.assertEqual(len(held_out) + len(plan.train_ids()), 60)

    # Tests that fewer than 3 folds or an empty dataset are rejected
    def test_invalid_plans(self):
        dataset = make_synthetic(n=30, seed=5)
        with self.assertRaises(DatasetError):
            make_fold_plan(dataset, 2, seed=0)
        with self.assertRaises(DatasetError):
            make_fold_plan(dataset.select([]), 3, seed=0)

    # Tests that the privileged and unprivileged constants match the sensitive encoding
    def test_group_constants(self):
        self.assertEqual((UNPRIVILEGED, PRIVILEGED), (1, 0))


if __name__ == '__main__':
    unittest.main()
