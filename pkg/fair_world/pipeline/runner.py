import logging
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

import numpy as np
from joblib import Parallel, delayed

from .. import __version__
from ..bias.label import score_scale
from ..bias.selection import SELF_SELECTION_WEIGHTING, removal_priority
from ..bias.spec import BiasKind, BiasSpec
from ..bias.views import biased_view
from ..data.dataset import Dataset, make_fold_plan
from ..data.encoding import FeatureEncoder
from ..exceptions import MethodFailedError
from ..learners.factory import LearnerFactory
from ..learners.model import TrainedModel
from ..learners.params import LearnerKind
from ..learners.trees import sensitive_usage
from ..metrics.evaluate import report_for
from ..metrics.individual import nearest_neighbours
from ..metrics.report import MetricReport, Prediction
from ..mitigation.factory import MitigationFactory
from ..mitigation.postprocessing import apply
from ..mitigation.spec import MitigationMethod, MitigationSpec
from ..seeds import derive_seed
from .plan import ExperimentPlan
from .records import EvalMode, RecordStatus, ResultRecord

logger = logging.getLogger(__name__)

UNMITIGATED = MitigationMethod.UNMITIGATED.value


@dataclass
class FoldOutcome:
    records: List[ResultRecord] = field(default_factory=list)
    audit: List[Dict[str, Any]] = field(default_factory=list)
    id_audit: List[Tuple[str, float, int, str, str, FrozenSet[int]]] = field(default_factory=list)


@dataclass(frozen=True, eq=False)
class CellViews:
    """
    Views of one (fold rotation, level) cell.
    """

    train: Dataset
    validation: Dataset
    biased_test: Dataset
    fair_test: Dataset


@dataclass
class FittedModel:
    model: TrainedModel
    encoder: FeatureEncoder

    def predict(self, rows: Dataset) -> Prediction:
        return self.model.predict(self.encoder.transform(rows))

    def usage(self) -> Optional[float]:
        if self.model.kind == LearnerKind.FOREST and self.model.includes_sensitive:
            return sensitive_usage(self.model)
        return None


class FoldRunner:
    """
    Runs every level and method of one (bias kind, fold rotation).
    """

    def __init__(self, plan: ExperimentPlan, kind: BiasKind, fold: int):
        self.plan = plan
        self.kind = kind
        self.fold = fold
        self.dataset = plan.dataset
        self.outcome = FoldOutcome()

        n_folds = plan.folds_for(kind)
        folds = make_fold_plan(
            self.dataset, n_folds, derive_seed(plan.seed, self.dataset.name, 'folds', n_folds), plan.stratified_folds
        ).rotation(fold)
        self.train_ids = folds.train_ids()
        self.validation_ids = folds.validation_ids()
        self.test_ids = folds.test_ids()
        self.fair_test = self.dataset.select(self.test_ids)
        # BCC distances: fair features of the train pool, sensitive column excluded
        self.metric_encoder = FeatureEncoder(include_sensitive=False).fit(self.dataset, self.train_ids)
        self._neighbours: Dict[bytes, np.ndarray] = {}
        self._audit_ids(0.0, UNMITIGATED, 'metric_encoder', self.train_ids)

        self.priority = None
        self.scale = None
        if kind.is_selection:
            self.priority = removal_priority(self.dataset, kind, derive_seed(plan.seed, self.dataset.name, kind.value))
        else:
            self.scale = score_scale(self.dataset)

    def _seed(self, level: float, method: str, *parts) -> int:
        return derive_seed(self.plan.seed, self.dataset.name, self.kind.value, level, self.fold, method, *parts)

    def _learner_seed(self, level: float) -> int:
        # shared by every method of a cell, so an unchanged training set refits the same model
        return derive_seed(self.plan.seed, self.dataset.name, self.kind.value, level, self.fold, 'learner')

    def _audit_ids(self, level: float, method: str, component: str, ids) -> None:
        if self.plan.audit_ids:
            entry = (self.kind.value, level, self.fold, method, component, frozenset(int(i) for i in ids))
            self.outcome.id_audit.append(entry)

    def views(self, level: float) -> CellViews:
        seed = derive_seed(self.plan.seed, self.dataset.name, self.kind.value, level)
        spec = BiasSpec(self.kind, level, noise=self.dataset.noise_intensity, seed=seed)
        biased = biased_view(self.dataset, spec, self.priority, self.scale)
        return CellViews(
            train=biased.select(self.train_ids),
            validation=biased.select(self.validation_ids),
            biased_test=biased.select(self.test_ids),
            fair_test=self.fair_test,
        )

    def fit(self, train: Dataset, level: float, method: str) -> FittedModel:
        if len(train) == 0:
            raise MethodFailedError(method, "the training view is empty")
        encoder = FeatureEncoder(include_sensitive=train.sensitive_visible).fit(train, train.instance_ids)
        model = LearnerFactory.fit(
            self.plan.learner,
            encoder.transform(train),
            train.label,
            train.weight,
            self.plan.learner_params,
            seed=self._learner_seed(level),
        )
        self._audit_ids(level, method, 'learner', train.instance_ids)
        return FittedModel(model, encoder)

    def neighbours(self, rows: Dataset) -> np.ndarray:
        """
        BCC neighbourhoods of a test view, computed once per row set.
        """
        key = rows.instance_ids.tobytes()
        if key not in self._neighbours:
            features = self.metric_encoder.transform(rows).values
            self._neighbours[key] = nearest_neighbours(features, rows.instance_ids)
        return self._neighbours[key]

    def evaluate(self, pred: Prediction, views: CellViews) -> Dict[str, MetricReport]:
        targets = {EvalMode.FAIR.value: views.fair_test, EvalMode.BIASED.value: views.biased_test}
        return {
            mode: report_for(pred, targets[mode], self.metric_encoder, neighbours=self.neighbours(targets[mode]))
            for mode in self.plan.eval_modes
        }

    def _emit(
        self,
        level: float,
        method: str,
        reports: Optional[Dict[str, MetricReport]],
        usage: Optional[float] = None,
        params: Optional[Dict[str, Any]] = None,
        reason: str = '',
    ) -> None:
        status = RecordStatus.OK if reports is not None else RecordStatus.METHOD_FAILED
        for mode in self.plan.eval_modes:
            self.outcome.records.append(
                ResultRecord(
                    dataset=self.dataset.name,
                    kind=self.kind.value,
                    level=float(level),
                    method=method,
                    fold=self.fold,
                    eval_mode=mode,
                    learner=self.plan.learner.value,
                    status=status,
                    metrics=reports[mode] if reports is not None else MetricReport(),
                    sensitive_usage=usage if reports is not None else None,
                )
            )
        self.outcome.audit.append(
            {
                'dataset': self.dataset.name,
                'kind': self.kind.value,
                'level': float(level),
                'fold': self.fold,
                'method': method,
                'status': status.value,
                'params': params or {},
                'reason': reason,
            }
        )
        if status == RecordStatus.OK:
            logger.info("%s %s %.2f fold %d %s ok", self.dataset.name, self.kind.value, level, self.fold, method)
        else:
            logger.warning(
                "%s %s %.2f fold %d %s method_failed: %s",
                self.dataset.name,
                self.kind.value,
                level,
                self.fold,
                method,
                reason,
            )

    def _preprocessed(
        self, spec: MitigationSpec, views: CellViews, level: float, base: Optional[FittedModel] = None
    ) -> None:
        method = spec.method.value
        processor = MitigationFactory.preprocessor(spec, seed=self._seed(level, method))
        try:
            train = processor.transform(views.train)  # type: ignore[union-attr]
            if spec.method == MitigationMethod.MASSAGING:
                self._audit_ids(level, method, 'ranker', views.train.instance_ids)
            if train is views.train and base is not None:
                fitted = base
                self._audit_ids(level, method, 'learner', train.instance_ids)
            else:
                fitted = self.fit(train, level, method)
        except MethodFailedError as e:
            self._emit(level, method, None, reason=e.reason)
            return
        pred = fitted.predict(views.fair_test)
        self._emit(level, method, self.evaluate(pred, views), fitted.usage(), processor.describe())  # type: ignore

    def _postprocessed(
        self, spec: MitigationSpec, views: CellViews, level: float, base: FittedModel, base_pred: Prediction
    ) -> None:
        method = spec.method.value
        seed = self._seed(level, method)
        try:
            if len(views.validation) == 0:
                raise MethodFailedError(method, "the validation view is empty")
            validation_pred = base.predict(views.validation)
            processor = MitigationFactory.fit_postprocessor(
                spec, validation_pred, views.validation.label, views.validation.sensitive, seed
            )
            self._audit_ids(level, method, 'postprocessor', views.validation.instance_ids)
        except MethodFailedError as e:
            self._emit(level, method, None, reason=e.reason)
            return
        pred = apply(processor, base_pred, views.fair_test.sensitive, seed)
        self._emit(level, method, self.evaluate(pred, views), base.usage(), processor.describe())

    def run_level(self, level: float) -> None:
        views = self.views(level)
        try:
            base = self.fit(views.train, level, UNMITIGATED)
        except MethodFailedError as e:
            self._emit(level, UNMITIGATED, None, reason=e.reason)
            for spec in self.plan.methods:
                if spec.method.is_postprocessing:
                    self._emit(level, spec.method.value, None, reason=e.reason)
                else:
                    self._preprocessed(spec, views, level)
            return

        base_pred = base.predict(views.fair_test)
        self._emit(level, UNMITIGATED, self.evaluate(base_pred, views), base.usage())
        for spec in self.plan.methods:
            if spec.method.is_postprocessing:
                self._postprocessed(spec, views, level, base, base_pred)
            else:
                self._preprocessed(spec, views, level, base)

    def run(self) -> FoldOutcome:
        for level in self.plan.grid:
            self.run_level(float(level))
        return self.outcome


def _run_fold(plan: ExperimentPlan, kind: BiasKind, fold: int) -> FoldOutcome:
    return FoldRunner(plan, kind, fold).run()


class ExperimentRunner:
    """
    Runs a plan's (kind, fold) tasks, optionally in parallel, and returns the records in a
    fixed order whatever order tasks complete in.
    """

    def __init__(self, plan: ExperimentPlan):
        self.plan = plan
        self.audit: List[Dict[str, Any]] = []
        self.id_audit: List[Tuple[str, float, int, str, str, FrozenSet[int]]] = []

    def _order(self, record: ResultRecord) -> Tuple:
        kinds = [k.value for k in self.plan.bias_kinds]
        methods = list(self.plan.method_names)
        modes = list(self.plan.eval_modes)
        return (
            kinds.index(record.kind),
            record.level,
            methods.index(record.method),
            record.fold,
            modes.index(record.eval_mode),
        )

    def run(self) -> List[ResultRecord]:
        tasks = [(kind, fold) for kind in self.plan.bias_kinds for fold in range(self.plan.folds_for(kind))]
        logger.info("Running %d (kind, fold) tasks of %s", len(tasks), self.plan.dataset.name)
        outcomes = Parallel(n_jobs=self.plan.jobs)(delayed(_run_fold)(self.plan, kind, fold) for kind, fold in tasks)

        records: List[ResultRecord] = []
        self.audit, self.id_audit = [], []
        for outcome in outcomes:
            records.extend(outcome.records)
            self.audit.extend(outcome.audit)
            self.id_audit.extend(outcome.id_audit)
        records.sort(key=self._order)
        self.audit.sort(key=lambda e: (e['kind'], e['level'], e['fold'], e['method']))
        return records


def run(plan: ExperimentPlan) -> List[ResultRecord]:
    """
    Evaluate every (kind, level, method, fold, eval mode) cell of a plan.
    """
    return ExperimentRunner(plan).run()


def run_metadata(plan: ExperimentPlan) -> Dict[str, Any]:
    """
    Every knob a run depends on, for the run metadata file.
    """
    params = plan.learner_params or LearnerFactory.default_params(plan.learner)
    return {
        'version': __version__,
        'dataset': plan.dataset.name,
        'rows': len(plan.dataset),
        'seed': plan.seed,
        'bias_kinds': [k.value for k in plan.bias_kinds],
        'grid': [float(level) for level in plan.grid],
        'folds': {k.value: plan.folds_for(k) for k in plan.bias_kinds},
        'stratified_folds': plan.stratified_folds,
        'rotation': 'test fold i, validation fold (i + 1) mod k',
        'validation_view': 'biased',
        'selection_scope': 'one removal order shared by train, validation and biased test',
        'label_noise': plan.dataset.noise_intensity,
        'self_selection_weighting': SELF_SELECTION_WEIGHTING,
        'massaging_rule': 'no flips when label SPD >= 0',
        'learner': plan.learner.value,
        'learner_params': repr(params),
        'methods': [
            {
                'method': spec.method.value,
                'roc_bounds': list(spec.roc_bounds),
                'roc_threshold_grid': spec.roc_threshold_grid,
                'roc_margin_grid': spec.roc_margin_grid,
                'roc_directional': spec.roc_directional,
                'ceo_cost_constraint': spec.ceo_cost_constraint.value,
            }
            for spec in plan.methods
        ],
        'eval_modes': list(plan.eval_modes),
    }
