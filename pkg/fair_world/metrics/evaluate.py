from typing import Optional, Tuple

import numpy as np

from ..data.dataset import Dataset
from ..data.encoding import FeatureEncoder
from .classification import accuracy, balanced_accuracy
from .group import odds_metrics, spd
from .individual import bcc, gei
from .report import MetricReport, Prediction


def metric_report(
    pred: np.ndarray,
    truth: np.ndarray,
    groups: np.ndarray,
    features: np.ndarray,
    instance_ids: Optional[np.ndarray] = None,
    k: int = 5,
    delta: float = 0.8,
    alpha: float = 2,
    neighbours: Optional[np.ndarray] = None,
) -> MetricReport:
    """
    Compute the full metric suite for aligned arrays; ``neighbours`` reuses BCC neighbourhoods.
    """
    odds = odds_metrics(pred, truth, groups)
    return MetricReport(
        accuracy=accuracy(pred, truth),
        balanced_accuracy=balanced_accuracy(pred, truth),
        spd=spd(pred, groups),
        eqod=odds.eqod,
        avod=odds.avod,
        eqop=odds.eqop,
        fnr_diff=odds.fnr_diff,
        fpr_diff=odds.fpr_diff,
        bcc=bcc(pred, features, instance_ids, k=k, delta=delta, neighbours=neighbours),
        gei=gei(pred, truth, alpha=alpha),
    )


def report_for(
    pred: Prediction,
    dataset: Dataset,
    encoder: FeatureEncoder,
    k: int = 5,
    delta: float = 0.8,
    alpha: float = 2,
    neighbours: Optional[np.ndarray] = None,
) -> MetricReport:
    """
    Evaluate a prediction against the labels of ``dataset``.
    """
    labels = pred.labels_for(dataset.instance_ids)
    features = encoder.transform(dataset).values
    return metric_report(
        labels, dataset.label, dataset.sensitive, features, dataset.instance_ids, k, delta, alpha, neighbours
    )


def evaluate(
    pred: Prediction,
    dataset_fair: Dataset,
    dataset_biased: Dataset,
    encoder: Optional[FeatureEncoder] = None,
    k: int = 5,
    delta: float = 0.8,
    alpha: float = 2,
) -> Tuple[MetricReport, MetricReport]:
    """
    Fair and biased evaluation of one prediction.

    :param pred: Prediction covering every id of both views
    :param dataset_fair: The untouched test fold
    :param dataset_biased: The biased view of the same fold (relabelled or row subset)
    :param encoder: Encoder without the sensitive column used for BCC distances; when omitted
        one is fitted on the fair rows
    :return: (fair report, biased report)
    """
    if encoder is None:
        encoder = FeatureEncoder(include_sensitive=False).fit(dataset_fair, dataset_fair.instance_ids)
    elif encoder.include_sensitive:
        raise ValueError("BCC distances must exclude the sensitive attribute")
    fair = report_for(pred, dataset_fair, encoder, k, delta, alpha)
    biased = report_for(pred, dataset_biased, encoder, k, delta, alpha)
    return fair, biased
