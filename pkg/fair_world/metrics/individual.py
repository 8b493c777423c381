from typing import Optional

import numpy as np
from scipy.spatial.distance import cdist

from .report import MetricValue

DISTANCE_CHUNK = 512


def nearest_neighbours(features: np.ndarray, instance_ids: Optional[np.ndarray] = None, k: int = 5) -> np.ndarray:
    """
    Positions of the ``k`` nearest neighbours of every row, shape ``(n, k)``.

    Distances are Euclidean on ``features`` with the row itself excluded; ties go to the
    lower instance id. Fewer than ``k + 1`` rows give an empty ``(n, 0)`` array.
    """
    features = np.asarray(features, dtype=float)
    n = len(features)
    if n < k + 1:
        return np.empty((n, 0), dtype=np.int64)
    if features.ndim == 1 or features.shape[1] == 0:
        features = features.reshape(n, -1) if features.size else np.zeros((n, 1))
    ids = np.arange(n) if instance_ids is None else np.asarray(instance_ids)

    neighbours = np.empty((n, k), dtype=np.int64)
    for start in range(0, n, DISTANCE_CHUNK):
        stop = min(start + DISTANCE_CHUNK, n)
        distances = cdist(features[start:stop], features, 'sqeuclidean')
        distances[np.arange(stop - start), np.arange(start, stop)] = np.inf
        for offset, row in enumerate(distances):
            neighbours[start + offset] = _nearest(row, ids, k)
    return neighbours


def bcc(
    pred: np.ndarray,
    features: np.ndarray,
    instance_ids: Optional[np.ndarray] = None,
    k: int = 5,
    delta: float = 0.8,
    neighbours: Optional[np.ndarray] = None,
) -> MetricValue:
    """
    Balanced conditioned consistency of binary predictions.

    Each row is compared with its ``k`` nearest neighbours (Euclidean distance on
    ``features``, the row itself excluded, ties broken by lower instance id). Consistency
    scores below ``delta`` count as zero.

    :param pred: Binary predictions
    :param features: Encoded features without the sensitive attribute
    :param instance_ids: Ids used for tie-breaking, defaults to row positions
    :param k: Neighbourhood size
    :param delta: Consistency threshold
    :param neighbours: Output of :func:`nearest_neighbours` for the same rows, computed when omitted
    :return: The mean thresholded consistency, None with fewer than k + 1 rows
    """
    pred = np.asarray(pred, dtype=np.int64)
    n = len(pred)
    if n < k + 1:
        return None
    if neighbours is None:
        neighbours = nearest_neighbours(features, instance_ids, k)

    # |k * y_i - sum of neighbour predictions| <= k * (1 - delta), integer-exact
    tolerance = k * (1 - delta) + 1e-9
    gap = np.abs(k * pred - pred[neighbours].sum(axis=1))
    consistency = np.where(gap <= tolerance, 1 - gap / k, 0.0)
    return float(consistency.sum() / n)


def _nearest(distances: np.ndarray, ids: np.ndarray, k: int) -> np.ndarray:
    kth = np.partition(distances, k - 1)[k - 1]
    candidates = np.flatnonzero(distances <= kth)
    if len(candidates) > k:
        order = np.lexsort((ids[candidates], distances[candidates]))
        candidates = candidates[order[:k]]
    return candidates


def gei(pred: np.ndarray, truth: np.ndarray, alpha: float = 2) -> MetricValue:
    """
    Generalized entropy index of the benefits ``b_i = ŷ_i - y_i + 1``.

    :return: The index, None when the mean benefit is zero
    """
    benefits = np.asarray(pred, dtype=float) - np.asarray(truth, dtype=float) + 1
    if len(benefits) == 0:
        return None
    mu = benefits.mean()
    if mu == 0:
        return None
    if alpha == 1:
        ratio = benefits / mu
        with np.errstate(divide='ignore', invalid='ignore'):
            terms = np.where(ratio > 0, ratio * np.log(ratio), 0.0)
        return float(np.mean(terms))
    if alpha == 0:
        if np.any(benefits == 0):
            return None
        return float(-np.mean(np.log(benefits / mu)))
    return float(np.sum((benefits / mu) ** alpha - 1) / (len(benefits) * alpha * (alpha - 1)))
