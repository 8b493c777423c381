import unittest

import numpy as np

from fair_world.metrics import accuracy, balanced_accuracy


class TestClassificationMetrics(unittest.TestCase):
    # Tests that a perfect predictor scores 1 on both accuracies
    def test_perfect(self):
        truth = np.array([1, 0, 1, 1, 0])
        self.assertEqual(accuracy(truth, truth), 1.0)
        self.assertEqual(balanced_accuracy(truth, truth), 1.0)

    # Tests that an always wrong predictor scores 0 on both accuracies
    def test_inverted(self):
        truth = np.array([1, 0, 1, 1, 0])
        self.assertEqual(accuracy(1 - truth, truth), 0.0)
        self.assertEqual(balanced_accuracy(1 - truth, truth), 0.0)

    # Tests an 8-row case with 6 correct predictions and a 5/3 class split
    def test_hand_case(self):
        truth = np.array([1, 1, 1, 1, 1, 0, 0, 0])
        pred = np.array([1, 1, 1, 1, 0, 0, 0, 1])
        self.assertAlmostEqual(accuracy(pred, truth), 0.75)
        self.assertAlmostEqual(balanced_accuracy(pred, truth), (4 / 5 + 2 / 3) / 2)

    # Tests that balanced accuracy is undefined for one-class truth and accuracy for no rows
    def test_undefined(self):
        self.assertIsNone(balanced_accuracy(np.array([1, 0]), np.array([1, 1])))
        self.assertIsNone(accuracy(np.array([]), np.array([])))


if __name__ == '__main__':
    unittest.main()
