from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Tuple

from ..metrics.report import METRIC_NAMES, MetricReport, MetricValue


class EvalMode(str, Enum):
    FAIR = 'fair'
    BIASED = 'biased'


EVAL_MODES: Tuple[str, ...] = tuple(m.value for m in EvalMode)


class RecordStatus(str, Enum):
    OK = 'ok'
    METHOD_FAILED = 'method_failed'


RECORD_KEYS: Tuple[str, ...] = ('dataset', 'kind', 'level', 'method', 'fold', 'eval_mode', 'learner')
AGGREGATE_KEYS: Tuple[str, ...] = ('dataset', 'kind', 'level', 'method', 'eval_mode', 'learner')


@dataclass(frozen=True)
class ResultRecord:
    """
    Evaluation of one (dataset, kind, level, method, fold, eval mode) cell.

    Failed cells carry an empty MetricReport.
    """

    dataset: str
    kind: str
    level: float
    method: str
    fold: int
    eval_mode: str
    learner: str
    status: RecordStatus = RecordStatus.OK
    metrics: MetricReport = field(default_factory=MetricReport)
    sensitive_usage: Optional[float] = None

    @property
    def key(self) -> Tuple:
        return tuple(getattr(self, k) for k in RECORD_KEYS)

    @property
    def ok(self) -> bool:
        return self.status == RecordStatus.OK

    def to_dict(self) -> Dict[str, Any]:
        row: Dict[str, Any] = {k: getattr(self, k) for k in RECORD_KEYS}
        row['status'] = self.status.value
        row.update(self.metrics.to_dict())
        row['sensitive_usage'] = self.sensitive_usage
        return row

    @classmethod
    def from_dict(cls, row: Dict[str, Any]) -> 'ResultRecord':
        return cls(
            dataset=str(row['dataset']),
            kind=str(row['kind']),
            level=float(row['level']),
            method=str(row['method']),
            fold=int(row['fold']),
            eval_mode=str(row['eval_mode']),
            learner=str(row['learner']),
            status=RecordStatus(row['status']),
            metrics=MetricReport.from_dict({name: row.get(name) for name in METRIC_NAMES}),
            sensitive_usage=row.get('sensitive_usage'),
        )


@dataclass(frozen=True)
class AggregateRecord:
    """
    Mean and population standard deviation of every metric over the ok folds of a cell.

    ``failed`` marks cells where more than half of the folds failed, or none succeeded.
    """

    dataset: str
    kind: str
    level: float
    method: str
    eval_mode: str
    learner: str
    means: Dict[str, MetricValue]
    stds: Dict[str, MetricValue]
    n_folds: int
    fail_count: int
    failed: bool

    @property
    def key(self) -> Tuple:
        return tuple(getattr(self, k) for k in AGGREGATE_KEYS)

    def mean(self, metric: str) -> MetricValue:
        return self.means.get(metric)

    def to_dict(self) -> Dict[str, Any]:
        row: Dict[str, Any] = {k: getattr(self, k) for k in AGGREGATE_KEYS}
        for name in self.means:
            row[f"{name}_mean"] = self.means[name]
            row[f"{name}_std"] = self.stds[name]
        row['n_folds'] = self.n_folds
        row['fail_count'] = self.fail_count
        row['failed'] = self.failed
        return row

    @classmethod
    def from_dict(cls, row: Dict[str, Any]) -> 'AggregateRecord':
        names = [c[: -len('_mean')] for c in row if c.endswith('_mean')]
        return cls(
            dataset=str(row['dataset']),
            kind=str(row['kind']),
            level=float(row['level']),
            method=str(row['method']),
            eval_mode=str(row['eval_mode']),
            learner=str(row['learner']),
            means={name: row[f"{name}_mean"] for name in names},
            stds={name: row[f"{name}_std"] for name in names},
            n_folds=int(row['n_folds']),
            fail_count=int(row['fail_count']),
            failed=bool(row['failed']),
        )
