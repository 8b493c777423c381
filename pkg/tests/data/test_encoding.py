import unittest

import numpy as np
import pandas as pd

from fair_world.data.encoding import FeatureEncoder, encode
from fair_world.exceptions import DatasetError

from ..toys import toy_dataset


class TestFeatureEncoder(unittest.TestCase):
    def setUp(self) -> None:
        features = pd.DataFrame(
            {
                'age': [10.0, 20.0, 30.0, 40.0, 50.0, 60.0],
                'city': ['b', 'a', 'c', 'a', 'b', 'd'],
                'flat': [1.0] * 6,
            }
        )
        self.dataset = toy_dataset(sensitive=[1, 0, 1, 0, 1, 0], label=[1, 1, 0, 0, 1, 0], features=features)

    # Tests that one categorical column with 3 categories becomes 3 encoded columns
    def test_one_hot_width(self):
        matrix = encode(self.dataset, [0, 1, 2, 3, 4], include_sensitive=False)
        self.assertEqual(matrix.columns, ('age', 'city=a', 'city=b', 'city=c', 'flat'))

    # Tests that standardization statistics come from the training rows only
    def test_train_only_statistics(self):
        matrix = encode(self.dataset, [0, 1, 2], include_sensitive=False)
        age = matrix.values[:, 0]
        self.assertAlmostEqual(age[:3].mean(), 0.0)
        self.assertAlmostEqual(age[:3].std(), 1.0)
        self.assertGreater(age[5], 3.0)

    # Tests that categories unseen at fit time encode as the all-zeros block
    def test_unseen_category(self):
        matrix = encode(self.dataset, [0, 1, 2, 3, 4], include_sensitive=False)
        block = [i for i, c in enumerate(matrix.columns) if c.startswith('city=')]
        np.testing.assert_array_equal(matrix.values[5, block], [0.0, 0.0, 0.0])

    # Tests that a zero variance column passes through as constant 0 with a warning
    def test_zero_variance(self):
        with self.assertLogs('fair_world.data.encoding', level='WARNING'):
            matrix = encode(self.dataset, self.dataset.instance_ids, include_sensitive=False)
        np.testing.assert_array_equal(matrix.values[:, matrix.columns.index('flat')], np.zeros(6))

    # Tests that the manifest reports whether the sensitive column is present
    def test_sensitive_flag(self):
        blind = encode(self.dataset, self.dataset.instance_ids, include_sensitive=False)
        aware = encode(self.dataset, self.dataset.instance_ids, include_sensitive=True)
        self.assertFalse(blind.includes_sensitive)
        self.assertEqual(blind.sensitive_columns(), [])
        self.assertTrue(aware.includes_sensitive)
        self.assertEqual([aware.columns[i] for i in aware.sensitive_columns()], ['a'])

    # Tests that decoding the manifest recovers the source feature list
    def test_manifest_round_trip(self):
        matrix = encode(self.dataset, self.dataset.instance_ids, include_sensitive=True)
        self.assertEqual(matrix.source_features(), ['age', 'city', 'flat', 'a'])

    # Tests that rows are looked up by instance id
    def test_rows_by_id(self):
        matrix = encode(self.dataset, self.dataset.instance_ids, include_sensitive=False)
        np.testing.assert_array_equal(matrix.rows([3, 1]), matrix.values[[3, 1]])
        with self.assertRaises(DatasetError):
            matrix.rows([99])

    # Tests that training ids must belong to the dataset and the encoder must be fitted
    def test_invalid_usage(self):
        with self.assertRaises(DatasetError):
            encode(self.dataset, [0, 99], include_sensitive=False)
        with self.assertRaises(DatasetError):
            FeatureEncoder().transform(self.dataset)


if __name__ == '__main__':
    unittest.main()
