from typing import NamedTuple, Optional

import numpy as np

from ..data.dataset import PRIVILEGED, UNPRIVILEGED
from .classification import group_rates
from .report import MetricValue


class OddsMetrics(NamedTuple):
    eqod: MetricValue
    avod: MetricValue
    eqop: MetricValue
    fnr_diff: MetricValue
    fpr_diff: MetricValue


def _diff(unprivileged: Optional[float], privileged: Optional[float]) -> MetricValue:
    if unprivileged is None or privileged is None:
        return None
    return unprivileged - privileged


def spd(pred: np.ndarray, groups: np.ndarray) -> MetricValue:
    """
    Statistical parity difference P(Ŷ=1 | A=1) - P(Ŷ=1 | A=0).

    Only predictions are used, so the value cannot depend on which labels are taken as truth.
    """
    pred, groups = np.asarray(pred), np.asarray(groups)
    unprivileged = groups == UNPRIVILEGED
    privileged = groups == PRIVILEGED
    if not unprivileged.any() or not privileged.any():
        return None
    return float(np.mean(pred[unprivileged]) - np.mean(pred[privileged]))


def odds_metrics(pred: np.ndarray, truth: np.ndarray, groups: np.ndarray) -> OddsMetrics:
    """
    Equalized odds family, every difference taken as unprivileged minus privileged.

    :return: EqOd, AvOd, EqOp, FNR difference and FPR difference; each is None when
        one of the rates it needs has an empty denominator
    """
    pred, truth, groups = np.asarray(pred), np.asarray(truth), np.asarray(groups)
    unprivileged = group_rates(pred[groups == UNPRIVILEGED], truth[groups == UNPRIVILEGED])
    privileged = group_rates(pred[groups == PRIVILEGED], truth[groups == PRIVILEGED])

    delta_tpr = _diff(unprivileged.tpr, privileged.tpr)
    delta_fpr = _diff(unprivileged.fpr, privileged.fpr)
    both = delta_tpr is not None and delta_fpr is not None

    return OddsMetrics(
        eqod=max(abs(delta_tpr), abs(delta_fpr)) if both else None,  # type: ignore[arg-type]
        avod=(delta_tpr + delta_fpr) / 2 if both else None,  # type: ignore[operator]
        eqop=delta_tpr,
        # FNR = 1 - TPR, so the FNR gap is the negated TPR gap
        fnr_diff=None if delta_tpr is None else -delta_tpr,
        fpr_diff=delta_fpr,
    )
