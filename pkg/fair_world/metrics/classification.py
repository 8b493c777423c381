from typing import NamedTuple

import numpy as np

from .report import MetricValue


def _ratio(numerator: float, denominator: float) -> MetricValue:
    return float(numerator / denominator) if denominator > 0 else None


def accuracy(pred: np.ndarray, truth: np.ndarray) -> MetricValue:
    """
    Proportion of predicted labels matching the ground truth.
    """
    pred, truth = np.asarray(pred), np.asarray(truth)
    return _ratio(np.sum(pred == truth), len(truth))


def balanced_accuracy(pred: np.ndarray, truth: np.ndarray) -> MetricValue:
    """
    Mean of true positive and true negative rates; undefined for one-class truth.
    """
    pred, truth = np.asarray(pred), np.asarray(truth)
    tpr = _ratio(np.sum((pred == 1) & (truth == 1)), np.sum(truth == 1))
    tnr = _ratio(np.sum((pred == 0) & (truth == 0)), np.sum(truth == 0))
    if tpr is None or tnr is None:
        return None
    return (tpr + tnr) / 2


class GroupRates(NamedTuple):
    tpr: MetricValue
    fpr: MetricValue


def group_rates(pred: np.ndarray, truth: np.ndarray) -> GroupRates:
    pred, truth = np.asarray(pred), np.asarray(truth)
    return GroupRates(
        tpr=_ratio(np.sum((pred == 1) & (truth == 1)), np.sum(truth == 1)),
        fpr=_ratio(np.sum((pred == 1) & (truth == 0)), np.sum(truth == 0)),
    )
