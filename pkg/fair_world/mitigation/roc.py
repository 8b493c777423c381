import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..data.dataset import PRIVILEGED, UNPRIVILEGED
from ..exceptions import MethodFailedError
from ..learners.model import DECISION_THRESHOLD
from ..metrics.classification import accuracy, balanced_accuracy
from ..metrics.group import odds_metrics, spd
from ..metrics.report import MetricValue, Prediction
from .postprocessing import PostProcessor
from .spec import MitigationMethod, RocCriterion

logger = logging.getLogger(__name__)

METHODS = {
    RocCriterion.SPD: MitigationMethod.ROC_SPD,
    RocCriterion.EQOP: MitigationMethod.ROC_EQOP,
    RocCriterion.AVOD: MitigationMethod.ROC_AVOD,
}


def base_labels(scores: np.ndarray) -> np.ndarray:
    """
    Labels the scores give at the learners' decision threshold.
    """
    return (np.asarray(scores) >= DECISION_THRESHOLD).astype(int)


def keep_direction(labels: np.ndarray, base: np.ndarray, groups: np.ndarray) -> np.ndarray:
    """
    Undo every change from ``base`` that lowers an unprivileged label or raises a privileged one.
    """
    return np.where(groups == UNPRIVILEGED, np.maximum(labels, base), np.minimum(labels, base))


def roc_label_rows(
    scores: np.ndarray,
    groups: np.ndarray,
    threshold: float,
    margins: Sequence[float],
    base: Optional[np.ndarray] = None,
) -> np.ndarray:
    """
    One row of reject-option labels per margin, shape ``(len(margins), len(scores))``.
    """
    margins = np.asarray(margins, dtype=float)
    labels = np.tile((scores >= threshold).astype(int), (len(margins), 1))
    critical = np.abs(scores - threshold)[None, :] <= margins[:, None]
    labels[critical & (groups == UNPRIVILEGED)] = 1
    labels[critical & (groups == PRIVILEGED)] = 0
    if base is not None:
        labels = keep_direction(labels, base, groups)
    return labels


def roc_labels(
    scores: np.ndarray, groups: np.ndarray, threshold: float, margin: float, base: Optional[np.ndarray] = None
) -> np.ndarray:
    """
    Labels of the reject-option rule: inside ``|score - threshold| <= margin`` the
    unprivileged get 1 and the privileged get 0, elsewhere ``score >= threshold``.

    With ``base`` labels, a label only moves from ``base`` upwards for the unprivileged and
    downwards for the privileged.
    """
    return roc_label_rows(scores, groups, threshold, [margin], base)[0]


def roc_thresholds(threshold_grid: int = 100) -> np.ndarray:
    return np.linspace(0.01, 0.99, threshold_grid)


def roc_margins(threshold: float, margin_grid: int = 50) -> np.ndarray:
    limit = min(threshold, 1 - threshold)
    return np.array([limit * j / margin_grid for j in range(1, margin_grid + 1)])


def roc_grid(threshold_grid: int = 100, margin_grid: int = 50) -> Iterator[Tuple[float, float]]:
    """
    Thresholds evenly spread over [0.01, 0.99] and, per threshold, margins evenly spread
    over (0, min(t, 1 - t)].
    """
    for threshold in roc_thresholds(threshold_grid):
        for margin in roc_margins(float(threshold), margin_grid):
            yield float(threshold), float(margin)


def criterion_value(labels: np.ndarray, truth: np.ndarray, groups: np.ndarray, criterion: RocCriterion) -> MetricValue:
    if criterion == RocCriterion.SPD:
        return spd(labels, groups)
    odds = odds_metrics(labels, truth, groups)
    return odds.eqop if criterion == RocCriterion.EQOP else odds.avod


@dataclass(frozen=True)
class RocCell:
    threshold: float
    margin: float
    criterion: MetricValue
    balanced_accuracy: MetricValue
    accuracy: MetricValue

    @property
    def objective(self) -> float:
        value = self.balanced_accuracy if self.balanced_accuracy is not None else self.accuracy
        return -np.inf if value is None else value

    def feasible(self, bounds: Tuple[float, float]) -> bool:
        return self.criterion is not None and bounds[0] <= self.criterion <= bounds[1]


def evaluate_cell(
    scores: np.ndarray,
    truth: np.ndarray,
    groups: np.ndarray,
    criterion: RocCriterion,
    threshold: float,
    margin: float,
    base: Optional[np.ndarray] = None,
) -> RocCell:
    labels = roc_labels(scores, groups, threshold, margin, base)
    return RocCell(
        threshold=threshold,
        margin=margin,
        criterion=criterion_value(labels, truth, groups, criterion),
        balanced_accuracy=balanced_accuracy(labels, truth),
        accuracy=accuracy(labels, truth),
    )


def _rates(labels: np.ndarray, mask: np.ndarray) -> Optional[np.ndarray]:
    # positive rate of each label row over the masked columns
    count = int(np.sum(mask))
    return labels[:, mask].sum(axis=1) / count if count else None


def _criterion_rows(
    labels: np.ndarray, truth: np.ndarray, groups: np.ndarray, criterion: RocCriterion
) -> Optional[np.ndarray]:
    unprivileged, privileged = groups == UNPRIVILEGED, groups == PRIVILEGED
    if criterion == RocCriterion.SPD:
        pairs = [(unprivileged, privileged)]
    else:
        pairs = [(unprivileged & (truth == 1), privileged & (truth == 1))]
        if criterion == RocCriterion.AVOD:
            pairs.append((unprivileged & (truth == 0), privileged & (truth == 0)))
    gaps = []
    for unprivileged_mask, privileged_mask in pairs:
        rate_u, rate_p = _rates(labels, unprivileged_mask), _rates(labels, privileged_mask)
        if rate_u is None or rate_p is None:
            return None
        gaps.append(rate_u - rate_p)
    return gaps[0] if len(gaps) == 1 else (gaps[0] + gaps[1]) / 2


def evaluate_threshold(
    scores: np.ndarray,
    truth: np.ndarray,
    groups: np.ndarray,
    criterion: RocCriterion,
    threshold: float,
    margins: Sequence[float],
    base: Optional[np.ndarray] = None,
) -> List[RocCell]:
    """
    Every margin of one threshold evaluated at once; each cell equals :func:`evaluate_cell`.
    """
    labels = roc_label_rows(scores, groups, threshold, margins, base)
    values = _criterion_rows(labels, truth, groups, criterion)
    tpr, tnr = _rates(labels, truth == 1), _rates(1 - labels, truth == 0)
    balanced = None if tpr is None or tnr is None else (tpr + tnr) / 2
    correct = _rates((labels == truth).astype(int), np.ones(len(truth), dtype=bool))
    return [
        RocCell(
            threshold=threshold,
            margin=float(margin),
            criterion=None if values is None else float(values[i]),
            balanced_accuracy=None if balanced is None else float(balanced[i]),
            accuracy=None if correct is None else float(correct[i]),
        )
        for i, margin in enumerate(margins)
    ]


class RejectOptionPostProcessor(PostProcessor):
    """
    Reject-option classification with a fitted threshold and critical-region margin.

    A directional processor only promotes unprivileged and demotes privileged labels
    relative to the labels the scores give at the decision threshold.
    """

    def __init__(
        self,
        criterion: RocCriterion,
        cell: RocCell,
        feasible: bool,
        bounds: Tuple[float, float],
        directional: bool = True,
    ):
        self.criterion = criterion
        self.method = METHODS[criterion]
        self.cell = cell
        self.feasible = feasible
        self.bounds = bounds
        self.directional = directional

    @property
    def threshold(self) -> float:
        return self.cell.threshold

    @property
    def margin(self) -> float:
        return self.cell.margin

    def apply(self, pred: Prediction, groups: np.ndarray, seed: Optional[int] = None) -> Prediction:
        if pred.scores is None:
            raise ValueError("Reject option classification needs prediction scores")
        base = base_labels(pred.scores) if self.directional else None
        labels = roc_labels(pred.scores, groups, self.threshold, self.margin, base)
        return Prediction(pred.instance_ids, labels, pred.scores)

    def describe(self) -> Dict[str, Any]:
        return {
            'criterion': self.criterion.value,
            'threshold': self.threshold,
            'margin': self.margin,
            'directional': self.directional,
            'feasible': self.feasible,
            'validation_criterion': self.cell.criterion,
            'validation_balanced_accuracy': self.cell.balanced_accuracy,
        }


def fit_roc(
    validation_scores: np.ndarray,
    validation_truth: np.ndarray,
    groups: np.ndarray,
    criterion: RocCriterion = RocCriterion.SPD,
    bounds: Tuple[float, float] = (-0.05, 0.05),
    threshold_grid: int = 100,
    margin_grid: int = 50,
    directional: bool = True,
) -> RejectOptionPostProcessor:
    """
    Grid-search the threshold and margin of reject-option classification.

    Among cells whose criterion lies within ``bounds`` the one with the highest balanced
    accuracy wins (accuracy when balanced accuracy is undefined); ties go to the smaller
    margin, then the lower threshold. Without a feasible cell the one closest to zero
    criterion is kept and the infeasibility is logged.

    :param directional: Keep labels from moving against the promote-unprivileged,
        demote-privileged direction relative to the decision-threshold labels
    :raises MethodFailedError: the criterion is undefined on every grid cell
    """
    method = METHODS[RocCriterion(criterion)]
    criterion = RocCriterion(criterion)
    scores = np.asarray(validation_scores, dtype=float)
    truth = np.asarray(validation_truth, dtype=int)
    groups = np.asarray(groups, dtype=int)
    base = base_labels(scores) if directional else None

    best_feasible, best_feasible_key = None, None
    closest, closest_key = None, None
    for threshold in roc_thresholds(threshold_grid):
        margins = roc_margins(float(threshold), margin_grid)
        for cell in evaluate_threshold(scores, truth, groups, criterion, float(threshold), margins, base):
            if cell.criterion is None:
                continue
            if cell.feasible(bounds):
                key = (-cell.objective, cell.margin, cell.threshold)
                if best_feasible_key is None or key < best_feasible_key:
                    best_feasible, best_feasible_key = cell, key
            key = (abs(cell.criterion), -cell.objective, cell.margin, cell.threshold)
            if closest_key is None or key < closest_key:
                closest, closest_key = cell, key

    if closest is None:
        raise MethodFailedError(method.value, f"{criterion.value} is undefined on every grid cell")
    if best_feasible is None:
        logger.warning(
            "%s found no cell within %s, keeping criterion %.4f", method.value, bounds, closest.criterion
        )
        return RejectOptionPostProcessor(criterion, closest, False, bounds, directional)
    logger.debug("%s chose threshold %.4f margin %.4f", method.value, best_feasible.threshold, best_feasible.margin)
    return RejectOptionPostProcessor(criterion, best_feasible, True, bounds, directional)
