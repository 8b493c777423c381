import unittest

import numpy as np

from fair_world.bias import BiasKind, BiasSpec, inject_label_bias, score_scale
from fair_world.exceptions import BiasInjectionError
from fair_world.ingestion import make_synthetic

from ..toys import toy_dataset


class TestBiasSpec(unittest.TestCase):
    # Tests that intensities outside [0, 1] and negative noise are rejected
    def test_validation(self):
        with self.assertRaises(BiasInjectionError):
            BiasSpec(BiasKind.LABEL, 1.2)
        with self.assertRaises(BiasInjectionError):
            BiasSpec(BiasKind.SELECT_SELF, 0.5, noise=-0.1)
        self.assertTrue(BiasSpec('select_random', 0.0).is_identity)
        self.assertTrue(BiasSpec('select_random', 0.3).kind.is_selection)


class TestLabelBias(unittest.TestCase):
    def setUp(self) -> None:
        self.dataset = make_synthetic(n=400, seed=2)

    # Tests that intensity 0 is a strict identity, noise included
    def test_identity(self):
        self.assertIs(inject_label_bias(self.dataset, 0.0, 0.5, seed=1), self.dataset)

    # Tests the noiseless algebra on the top unprivileged score
    def test_noiseless_algebra(self):
        dataset = toy_dataset(sensitive=[1, 0, 1], label=[1, 0, 1], score=[10.0, 0.0, 4.0], threshold=6.0)
        biased = inject_label_bias(dataset, 1.0, 0.0, seed=0)
        # scale = 5: the top unprivileged score lands on the midrange
        np.testing.assert_allclose(biased.score, [5.0, 0.0, -1.0])
        np.testing.assert_array_equal(biased.label, [0, 0, 0])
        flipped = inject_label_bias(dataset.replace(threshold=5.0), 1.0, 0.0, seed=0)
        self.assertEqual(flipped.label[0], 1)

    # Tests the module against a standalone recomputation of the biased score
    def test_independent_oracle(self):
        beta_l, beta_n, seed = 0.5, 0.1, 123
        biased = inject_label_bias(self.dataset, beta_l, beta_n, seed)

        scores = self.dataset.score
        scale = (scores.max() - scores.min()) / 2
        order = np.argsort(self.dataset.instance_ids)
        noise = np.empty(len(scores))
        noise[order] = np.random.default_rng(seed).normal(0.0, beta_n * scale, size=len(scores))
        expected = scores - beta_l * self.dataset.sensitive * scale + noise
        np.testing.assert_array_equal(biased.score, expected)
        np.testing.assert_array_equal(biased.label, (expected >= self.dataset.threshold).astype(int))

    # Tests that privileged rows receive noise but no penalty
    def test_privileged_noise(self):
        biased = inject_label_bias(self.dataset, 0.5, 0.1, seed=3)
        privileged = self.dataset.sensitive == 0
        self.assertFalse(np.array_equal(biased.score[privileged], self.dataset.score[privileged]))
        self.assertLess(abs(np.mean(biased.score[privileged] - self.dataset.score[privileged])), 0.25)

    # Tests that label bias never changes rows or features and lowers the unprivileged positive rate
    def test_membership_unchanged(self):
        biased = inject_label_bias(self.dataset, 0.7, 0.1, seed=4)
        np.testing.assert_array_equal(biased.instance_ids, self.dataset.instance_ids)
        self.assertTrue(biased.features.equals(self.dataset.features))
        unprivileged = self.dataset.sensitive == 1
        self.assertLess(biased.label[unprivileged].mean(), self.dataset.label[unprivileged].mean())

    # Tests that constant scores cannot be biased
    def test_constant_scores(self):
        dataset = toy_dataset(sensitive=[1, 0], label=[1, 1], score=[3.0, 3.0])
        self.assertEqual(score_scale(dataset), 0.0)
        with self.assertRaises(BiasInjectionError):
            inject_label_bias(dataset, 0.5, 0.1, seed=0)

    # Tests that the same seed reproduces the same view bit for bit
    def test_reproducible(self):
        first = inject_label_bias(self.dataset, 0.4, 0.1, seed=8)
        self.assertTrue(first.equals(inject_label_bias(self.dataset, 0.4, 0.1, seed=8)))


if __name__ == '__main__':
    unittest.main()
