import unittest

import numpy as np

from fair_world.bias import BiasKind, BiasSpec, biased_view
from fair_world.ingestion import make_synthetic
from fair_world.metrics import spd
from fair_world.metrics.report import MetricReport
from fair_world.pipeline import AggregateRecord, RecordStatus, ResultRecord, aggregate, diagonal_scatter, run
from tests.pipeline.plans import tiny_plan


def record(fold, accuracy=None, status=RecordStatus.OK, eval_mode='fair', spd_value=None):
    return ResultRecord(
        dataset='toy',
        kind='label',
        level=0.3,
        method='reweighing',
        fold=fold,
        eval_mode=eval_mode,
        learner='forest',
        status=status,
        metrics=MetricReport(accuracy=accuracy, spd=spd_value) if status == RecordStatus.OK else MetricReport(),
    )


def aggregate_record(eval_mode, spd_value, failed=False):
    return AggregateRecord(
        dataset='toy',
        kind='select_malicious',
        level=0.5,
        method='unmitigated',
        eval_mode=eval_mode,
        learner='forest',
        means={'spd': spd_value},
        stds={'spd': 0.0},
        n_folds=5,
        fail_count=5 if failed else 0,
        failed=failed,
    )


class TestAggregate(unittest.TestCase):
    # Tests that identical fold values give that mean and zero deviation
    def test_identical(self):
        (cell,) = aggregate([record(f, 0.7) for f in range(5)])
        self.assertAlmostEqual(cell.mean('accuracy'), 0.7)
        self.assertAlmostEqual(cell.stds['accuracy'], 0.0)
        self.assertFalse(cell.failed)

    # Tests mean and population deviation against a recomputation
    def test_moments(self):
        values = [0.1, 0.2, 0.3, 0.6]
        (cell,) = aggregate([record(f, v) for f, v in enumerate(values)])
        self.assertAlmostEqual(cell.mean('accuracy'), float(np.mean(values)))
        self.assertAlmostEqual(cell.stds['accuracy'], float(np.sqrt(0.035)))
        self.assertIsNone(cell.mean('bcc'))

    # Tests the majority-failure rule
    def test_failure_rule(self):
        six_failed = [record(f, status=RecordStatus.METHOD_FAILED) for f in range(6)]
        six_failed += [record(f, 0.5) for f in range(6, 10)]
        (cell,) = aggregate(six_failed)
        self.assertTrue(cell.failed)
        self.assertEqual(cell.fail_count, 6)
        self.assertAlmostEqual(cell.mean('accuracy'), 0.5)

        five_failed = [record(f, status=RecordStatus.METHOD_FAILED) for f in range(5)]
        five_failed += [record(f, 0.5) for f in range(5, 10)]
        (cell,) = aggregate(five_failed)
        self.assertFalse(cell.failed)
        self.assertEqual(cell.n_folds, 10)

    # Tests that a cell without any ok fold is failed and undefined
    def test_all_failed(self):
        (cell,) = aggregate([record(f, status=RecordStatus.METHOD_FAILED) for f in range(3)])
        self.assertTrue(cell.failed)
        self.assertIsNone(cell.mean('accuracy'))
        self.assertEqual(aggregate([]), [])

    # Tests that evaluation modes aggregate separately
    def test_modes_apart(self):
        cells = aggregate([record(0, 0.4, eval_mode='fair'), record(0, 0.8, eval_mode='biased')])
        self.assertEqual({c.eval_mode: c.mean('accuracy') for c in cells}, {'fair': 0.4, 'biased': 0.8})


class TestDiagonalScatter(unittest.TestCase):
    # Tests that label bias leaves parity and consistency on the diagonal
    def test_label_bias_diagonal(self):
        points = diagonal_scatter(aggregate(run(tiny_plan())), ['spd', 'bcc', 'accuracy'])
        for metric in ('spd', 'bcc'):
            self.assertTrue(points[metric])
            self.assertTrue(all(p.on_diagonal for p in points[metric]), metric)
        self.assertTrue(all(p.on_diagonal for p in points['accuracy'] if p.level == 0.0))

    # Tests that malicious selection makes the biased parity underestimate the fair one
    def test_malicious_below_diagonal(self):
        dataset = make_synthetic(n=400, seed=12)
        biased = biased_view(dataset, BiasSpec(BiasKind.SELECT_MALICIOUS, 0.5, seed=2))
        fair_spd = spd(dataset.label, dataset.sensitive)
        biased_spd = spd(biased.label, biased.sensitive)

        points = diagonal_scatter([aggregate_record('fair', fair_spd), aggregate_record('biased', biased_spd)])
        (point,) = points['spd']
        self.assertLess(point.biased, point.fair)
        self.assertFalse(point.on_diagonal)

    # Tests that failed cells are left out and large values are flagged
    def test_failed_and_clipped(self):
        self.assertEqual(
            diagonal_scatter([aggregate_record('fair', 0.1, True), aggregate_record('biased', 0.2)])['spd'], []
        )
        (point,) = diagonal_scatter([aggregate_record('fair', -1.0), aggregate_record('biased', 0.2)])['spd']
        self.assertTrue(point.clipped)


if __name__ == '__main__':
    unittest.main()
