from dataclasses import asdict, dataclass, fields
from typing import Dict, Optional, Tuple

import numpy as np

# None is the undefined marker everywhere a rate has an empty denominator
MetricValue = Optional[float]


@dataclass(frozen=True, eq=False)
class Prediction:
    """
    Predicted labels (and optionally scores) keyed by instance id.
    """

    instance_ids: np.ndarray
    labels: np.ndarray
    scores: Optional[np.ndarray] = None

    def __post_init__(self):
        object.__setattr__(self, 'instance_ids', np.asarray(self.instance_ids, dtype=np.int64))
        object.__setattr__(self, 'labels', np.asarray(self.labels, dtype=np.int8))
        if self.scores is not None:
            object.__setattr__(self, 'scores', np.asarray(self.scores, dtype=float))
            if len(self.scores) != len(self.instance_ids):
                raise ValueError("Scores must be aligned with instance ids")
            if np.any((self.scores < 0) | (self.scores > 1)):
                raise ValueError("Scores must lie in [0, 1]")
        if len(self.labels) != len(self.instance_ids):
            raise ValueError("Labels must be aligned with instance ids")
        if not np.isin(self.labels, (0, 1)).all():
            raise ValueError("Predicted labels must be binary")

    def __len__(self) -> int:
        return len(self.instance_ids)

    def _positions(self, ids: np.ndarray) -> np.ndarray:
        order = np.argsort(self.instance_ids, kind='stable')
        ids = np.asarray(ids, dtype=np.int64)
        found = np.searchsorted(self.instance_ids, ids, sorter=order)
        found = np.clip(found, 0, max(len(order) - 1, 0))
        positions = order[found] if len(order) else np.array([], dtype=np.int64)
        if len(ids) and (len(order) == 0 or np.any(self.instance_ids[positions] != ids)):
            raise ValueError("Prediction does not cover every instance id of the evaluation rows")
        return positions

    def labels_for(self, ids: np.ndarray) -> np.ndarray:
        """
        Predicted labels aligned to ``ids``; a missing id is an error.
        """
        return self.labels[self._positions(ids)]

    def scores_for(self, ids: np.ndarray) -> np.ndarray:
        if self.scores is None:
            raise ValueError("Prediction carries no scores")
        return self.scores[self._positions(ids)]

    def restrict(self, ids: np.ndarray) -> 'Prediction':
        positions = self._positions(ids)
        scores = None if self.scores is None else self.scores[positions]
        return Prediction(self.instance_ids[positions], self.labels[positions], scores)


@dataclass(frozen=True)
class MetricReport:
    """
    Every evaluation measure for one prediction against one ground truth.

    ``None`` marks a metric that is undefined for the evaluated rows.
    """

    accuracy: MetricValue = None
    balanced_accuracy: MetricValue = None
    spd: MetricValue = None
    eqod: MetricValue = None
    avod: MetricValue = None
    eqop: MetricValue = None
    fnr_diff: MetricValue = None
    fpr_diff: MetricValue = None
    bcc: MetricValue = None
    gei: MetricValue = None

    def to_dict(self) -> Dict[str, MetricValue]:
        return asdict(self)

    @classmethod
    def from_dict(cls, values: Dict[str, MetricValue]) -> 'MetricReport':
        return cls(**{name: values.get(name) for name in METRIC_NAMES})


METRIC_NAMES: Tuple[str, ...] = tuple(f.name for f in fields(MetricReport))
