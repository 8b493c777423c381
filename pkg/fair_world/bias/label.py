import logging
from typing import Optional

import numpy as np

from ..data.dataset import Dataset
from ..exceptions import BiasInjectionError

logger = logging.getLogger(__name__)


def score_scale(dataset: Dataset) -> float:
    """
    Half the score range of a dataset.
    """
    if len(dataset) == 0:
        return 0.0
    return float(np.max(dataset.score) - np.min(dataset.score)) / 2


def inject_label_bias(
    dataset: Dataset, beta_l: float, beta_n: float, seed: int, scale: Optional[float] = None
) -> Dataset:
    """
    Penalize the scores of the unprivileged group, add gaussian noise to everyone and
    relabel against the dataset threshold.

    ``S_b = S - beta_l * A * scale + N`` with ``N ~ Normal(0, beta_n * scale)``, drawn in
    ascending instance-id order. ``beta_l == 0`` returns the dataset untouched.

    :param dataset: Fair dataset
    :param beta_l: Bias intensity in [0, 1]
    :param beta_n: Noise intensity, non-negative
    :param seed: Seed of the noise draw
    :param scale: Score scale; defaults to half the score range of ``dataset``
    :return: Dataset with biased scores and labels, same rows and features
    """
    if not 0.0 <= beta_l <= 1.0:
        raise BiasInjectionError(f"Label bias intensity must lie in [0, 1], got {beta_l}")
    if beta_n < 0:
        raise BiasInjectionError(f"Noise intensity must be non-negative, got {beta_n}")
    if beta_l == 0.0:
        return dataset

    scale = score_scale(dataset) if scale is None else scale
    if scale <= 0:
        raise BiasInjectionError(f"Scores of '{dataset.name}' are constant, label bias has no scale")

    order = np.argsort(dataset.instance_ids, kind='stable')
    noise = np.zeros(len(dataset))
    noise[order] = np.random.default_rng(seed).normal(0.0, beta_n * scale, size=len(dataset))

    biased_score = dataset.score - beta_l * dataset.sensitive * scale + noise
    biased_label = (biased_score >= dataset.threshold).astype(int)
    logger.debug(
        "Label bias %.2f on %s flipped %d labels", beta_l, dataset.name, int(np.sum(biased_label != dataset.label))
    )
    return dataset.replace(score=biased_score, label=biased_label)
