import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, Optional

import numpy as np

from ..bias.views import exclude_group
from ..data.dataset import PRIVILEGED, UNPRIVILEGED, Dataset
from ..data.encoding import encode
from ..exceptions import MethodFailedError
from ..learners.logistic import fit_logistic
from ..learners.params import LogisticParams
from .spec import MitigationMethod

logger = logging.getLogger(__name__)


class PreProcessor(ABC):
    """
    Transforms a training set before the learner sees it.
    """

    method: MitigationMethod

    @abstractmethod
    def transform(self, train: Dataset) -> Dataset:
        pass  # pragma: no cover

    @abstractmethod
    def describe(self) -> Dict[str, Any]:
        """
        Parameters of the last transformation, for the audit log.
        """
        pass  # pragma: no cover


class Reweighing(PreProcessor):
    """
    Weights each (A, Y) cell by ``P(A=a) P(Y=y) / P(A=a, Y=y)`` so that the weighted
    training set satisfies statistical parity.
    """

    method = MitigationMethod.REWEIGHING

    def __init__(self):
        self.weights: Dict[str, float] = {}

    def transform(self, train: Dataset) -> Dataset:
        n = len(train)
        weights = np.ones(n)
        self.weights = {}
        for a in (UNPRIVILEGED, PRIVILEGED):
            for y in (1, 0):
                cell = (train.sensitive == a) & (train.label == y)
                count = int(np.sum(cell))
                if count == 0:
                    raise MethodFailedError(self.method.value, f"empty cell (A={a}, Y={y})")
                p_a = np.sum(train.sensitive == a) / n
                p_y = np.sum(train.label == y) / n
                weight = float(p_a * p_y / (count / n))
                weights[cell] = weight
                self.weights[f"A={a},Y={y}"] = weight
        logger.debug("Reweighing weights: %s", self.weights)
        return train.replace(weight=weights)

    def describe(self) -> Dict[str, Any]:
        return {'weights': dict(self.weights)}


def flip_count(train: Dataset) -> int:
    """
    Flips per group that bring the label SPD of ``train`` to zero; 0 when SPD >= 0.
    """
    n1, n0 = train.group_size(UNPRIVILEGED), train.group_size(PRIVILEGED)
    p1 = np.mean(train.label[train.group_mask(UNPRIVILEGED)])
    p0 = np.mean(train.label[train.group_mask(PRIVILEGED)])
    if p1 >= p0:
        return 0
    return int(np.ceil((p0 - p1) * n1 * n0 / (n1 + n0) - 1e-9))


class Massaging(PreProcessor):
    """
    Promotes the highest-ranked unprivileged negatives and demotes the lowest-ranked
    privileged positives, the same number in each group, until the label SPD is zero.

    Ranking uses a logistic scorer fitted on the training set with the sensitive column.
    """

    method = MitigationMethod.MASSAGING

    def __init__(self, seed: int = 0, ranker_params: Optional[LogisticParams] = None):
        self.seed = seed
        self.ranker_params = ranker_params or LogisticParams()
        self.flips = 0
        self.promoted: np.ndarray = np.array([], dtype=np.int64)
        self.demoted: np.ndarray = np.array([], dtype=np.int64)
        self.saturated = False

    def _ranked(self, train: Dataset, candidates: np.ndarray, scores: np.ndarray, descending: bool) -> np.ndarray:
        # equal ranker scores are ordered by a seeded shuffle
        tiebreak = np.random.default_rng(self.seed).permutation(len(train))
        key = -scores if descending else scores
        order = np.lexsort((tiebreak[candidates], key[candidates]))
        return candidates[order]

    def transform(self, train: Dataset) -> Dataset:
        if not train.has_both_groups():
            raise MethodFailedError(self.method.value, "both groups are needed to massage labels")

        self.flips = flip_count(train)
        self.promoted = np.array([], dtype=np.int64)
        self.demoted = np.array([], dtype=np.int64)
        self.saturated = False
        if self.flips == 0:
            return train

        matrix = encode(train, train.instance_ids, include_sensitive=True)
        ranker = fit_logistic(matrix, train.label, params=self.ranker_params)
        scores = ranker.predict_scores(matrix)

        unprivileged_negatives = np.flatnonzero(train.group_mask(UNPRIVILEGED) & (train.label == 0))
        privileged_positives = np.flatnonzero(train.group_mask(PRIVILEGED) & (train.label == 1))
        promote = self._ranked(train, unprivileged_negatives, scores, descending=True)[: self.flips]
        demote = self._ranked(train, privileged_positives, scores, descending=False)[: self.flips]
        if len(promote) < self.flips or len(demote) < self.flips:
            self.saturated = True
            logger.warning(
                "Massaging saturated: %d flips needed, %d promotions and %d demotions available",
                self.flips,
                len(promote),
                len(demote),
            )

        labels = train.label.copy()
        labels[promote] = 1
        labels[demote] = 0
        self.promoted = train.instance_ids[promote]
        self.demoted = train.instance_ids[demote]
        return train.replace(label=labels)

    def describe(self) -> Dict[str, Any]:
        return {
            'flips': self.flips,
            'promoted': sorted(int(i) for i in self.promoted),
            'demoted': sorted(int(i) for i in self.demoted),
            'saturated': self.saturated,
        }


class FairnessThroughUnawareness(PreProcessor):
    """
    Hides the sensitive column from the learner; it stays available for evaluation.
    """

    method = MitigationMethod.FTU

    def transform(self, train: Dataset) -> Dataset:
        return train.replace(sensitive_visible=False)

    def describe(self) -> Dict[str, Any]:
        return {'sensitive_visible': False}


class GroupExclusion(PreProcessor):
    """
    Trains on the privileged group only.
    """

    method = MitigationMethod.EXCLUSION

    def __init__(self):
        self.excluded = 0

    def transform(self, train: Dataset) -> Dataset:
        if train.group_size(PRIVILEGED) == 0:
            raise MethodFailedError(self.method.value, "no privileged rows left to train on")
        self.excluded = train.group_size(UNPRIVILEGED)
        return exclude_group(train, UNPRIVILEGED)

    def describe(self) -> Dict[str, Any]:
        return {'excluded_rows': self.excluded}


def reweigh(train: Dataset) -> Dataset:
    return Reweighing().transform(train)


def massage(train: Dataset, ranker_seed: int = 0) -> Dataset:
    return Massaging(seed=ranker_seed).transform(train)


def ftu(train: Dataset) -> Dataset:
    return FairnessThroughUnawareness().transform(train)
