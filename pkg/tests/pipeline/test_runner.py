import unittest

from fair_world.bias import BiasKind
from fair_world.data.dataset import make_fold_plan
from fair_world.learners import ForestParams, LearnerKind, TreeParams
from fair_world.mitigation import MitigationMethod, MitigationSpec
from fair_world.pipeline import ExperimentRunner, RecordStatus, run, run_metadata
from fair_world.seeds import derive_seed
from tests.pipeline.plans import tiny_plan


class TestExperimentRunner(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        cls.plan = tiny_plan()
        cls.runner = ExperimentRunner(cls.plan)
        cls.records = cls.runner.run()

    # Tests that every planned cell yields exactly one record
    def test_record_count(self):
        self.assertEqual(len(self.records), 36)
        self.assertEqual(len({r.key for r in self.records}), 36)
        self.assertEqual({r.method for r in self.records}, {'unmitigated', 'reweighing', 'eop'})

    # Tests that fair and biased evaluations coincide at level zero
    def test_level_zero(self):
        cells = {}
        for record in self.records:
            if record.level == 0.0 and record.ok:
                cells.setdefault((record.method, record.fold), {})[record.eval_mode] = record.metrics
        self.assertTrue(cells)
        for reports in cells.values():
            self.assertEqual(reports['fair'], reports['biased'])

    # Tests that a rerun with the same seed reproduces every record
    def test_deterministic(self):
        self.assertEqual(run(tiny_plan()), self.records)

    # Tests that parallel execution yields the same ordered records
    def test_parallel(self):
        self.assertEqual(run(tiny_plan(jobs=2)), self.records)

    # Tests that every cell leaves an audit entry with its fitted parameters
    def test_audit(self):
        self.assertEqual(len(self.runner.audit), 18)
        reweighing = [e for e in self.runner.audit if e['method'] == 'reweighing' and e['status'] == 'ok']
        self.assertTrue(reweighing)
        self.assertEqual(len(reweighing[0]['params']['weights']), 4)

    # Tests that the run metadata records the rotation and every knob of the plan
    def test_metadata(self):
        metadata = run_metadata(self.plan)
        self.assertEqual(metadata['seed'], 7)
        self.assertEqual(metadata['folds'], {'label': 3})
        self.assertEqual(metadata['validation_view'], 'biased')
        self.assertEqual([m['method'] for m in metadata['methods']], ['reweighing', 'eop'])


class TestFoldIsolation(unittest.TestCase):
    # Tests that no fitted object ever sees a test-fold instance
    def test_id_audit(self):
        plan = tiny_plan(
            methods=(
                MitigationSpec(MitigationMethod.MASSAGING),
                MitigationSpec(MitigationMethod.ROC_SPD, roc_threshold_grid=5, roc_margin_grid=3),
            ),
            audit_ids=True,
        )
        runner = ExperimentRunner(plan)
        runner.run()
        folds = make_fold_plan(plan.dataset, 3, derive_seed(plan.seed, plan.dataset.name, 'folds', 3))
        components = set()
        for kind, level, fold, method, component, ids in runner.id_audit:
            test_ids = set(folds.rotation(fold).test_ids().tolist())
            self.assertFalse(ids & test_ids, (kind, level, fold, method, component))
            components.add(component)
        self.assertEqual(components, {'metric_encoder', 'learner', 'ranker', 'postprocessor'})


class TestFailedCells(unittest.TestCase):
    # Tests that a failing method marks its own cells and leaves the others intact
    def test_method_failed(self):
        plan = tiny_plan(
            bias_kinds=(BiasKind.SELECT_MALICIOUS,),
            folds={BiasKind.SELECT_MALICIOUS: 3},
            grid=(0.0, 1.0),
            methods=(MitigationSpec(MitigationMethod.REWEIGHING),),
        )
        records = run(plan)
        failed = [r for r in records if r.method == 'reweighing' and r.level == 1.0]
        self.assertEqual(len(failed), 6)
        for record in failed:
            self.assertEqual(record.status, RecordStatus.METHOD_FAILED)
            self.assertIsNone(record.metrics.accuracy)
        self.assertTrue(all(r.ok for r in records if r.method == 'unmitigated'))


class TestSharedLearnerSeed(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        cls.plan = tiny_plan(
            bias_kinds=(BiasKind.SELECT_SELF,),
            folds={BiasKind.SELECT_SELF: 3},
            grid=(0.0, 0.3, 0.6),
            learner=LearnerKind.FOREST,
            learner_params=ForestParams(n_trees=5, tree=TreeParams(max_depth=3)),
            methods=(
                MitigationSpec(MitigationMethod.MASSAGING),
                MitigationSpec(MitigationMethod.ROC_SPD, roc_threshold_grid=10, roc_margin_grid=5),
            ),
        )
        cls.runner = ExperimentRunner(cls.plan)
        records = cls.runner.run()
        cls.cells = {(r.method, r.level, r.fold, r.eval_mode): r for r in records}

    # Tests that massaging without flips reproduces the unmitigated records exactly
    def test_massaging_without_flips(self):
        massaging = [e for e in self.runner.audit if e['method'] == 'massaging' and e['status'] == 'ok']
        unflipped = [e for e in massaging if e['params']['flips'] == 0]
        self.assertTrue(unflipped)
        for entry in unflipped:
            for mode in self.plan.eval_modes:
                massaged = self.cells[('massaging', entry['level'], entry['fold'], mode)]
                unmitigated = self.cells[('unmitigated', entry['level'], entry['fold'], mode)]
                self.assertEqual(massaged.metrics, unmitigated.metrics)
                self.assertEqual(massaged.sensitive_usage, unmitigated.sensitive_usage)

    # Tests that reject-option SPD never lowers the fair SPD of the unmitigated model
    def test_roc_direction(self):
        for level in (0.3, 0.6):
            for fold in range(3):
                roc = self.cells[('roc_spd', level, fold, 'fair')]
                unmitigated = self.cells[('unmitigated', level, fold, 'fair')]
                self.assertTrue(roc.ok)
                self.assertGreaterEqual(roc.metrics.spd, unmitigated.metrics.spd)


if __name__ == '__main__':
    unittest.main()
