import os
import tempfile
import unittest

import numpy as np

from fair_world.bias import BiasKind
from fair_world.ingestion.cache import read_cache, read_removal_manifest
from fair_world.pipeline import dump_biased_views, view_name
from tests.pipeline.plans import tiny_plan


class TestDumpBiasedViews(unittest.TestCase):
    # Tests that every (kind, level) view is written, with removal manifests for selection
    def test_dump(self):
        plan = tiny_plan(bias_kinds=(BiasKind.LABEL, BiasKind.SELECT_RANDOM), folds={})
        with tempfile.TemporaryDirectory() as directory:
            paths = dump_biased_views(plan, directory)
            self.assertEqual(len(paths), 6)

            untouched = read_cache(os.path.join(directory, view_name(plan.dataset.name, 'label', 0.0) + '.parquet'))
            np.testing.assert_array_equal(untouched.label, plan.dataset.label)

            name = view_name(plan.dataset.name, 'select_random', 0.5)
            reduced = read_cache(os.path.join(directory, f"{name}.parquet"))
            removed = read_removal_manifest(os.path.join(directory, f"{name}.removed.txt"))
            self.assertEqual(len(reduced) + len(removed), len(plan.dataset))
            self.assertFalse(set(removed) & set(reduced.instance_ids.tolist()))

    # Tests the view file naming
    def test_view_name(self):
        self.assertEqual(view_name('student', 'select_self', 0.3), 'student_select_self_0.30')


if __name__ == '__main__':
    unittest.main()
