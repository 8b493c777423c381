from abc import ABC, abstractmethod
from typing import Any, Dict

import numpy as np

from ..metrics.report import Prediction
from .spec import MitigationMethod


def coin_flips(instance_ids: np.ndarray, seed: int) -> np.ndarray:
    """
    One uniform draw per instance, assigned in ascending instance-id order.
    """
    order = np.argsort(instance_ids, kind='stable')
    draws = np.empty(len(instance_ids))
    draws[order] = np.random.default_rng(seed).random(len(instance_ids))
    return draws


class PostProcessor(ABC):
    """
    Transformation of (prediction, group) into a label, fitted on a validation fold.

    It never looks at non-sensitive features.
    """

    method: MitigationMethod

    @abstractmethod
    def apply(self, pred: Prediction, groups: np.ndarray, seed: int) -> Prediction:
        """
        Post-process a prediction.

        :param pred: Prediction of the unmitigated model
        :param groups: Sensitive attribute aligned with ``pred.instance_ids``
        :param seed: Seed of randomized decisions
        """
        pass  # pragma: no cover

    @abstractmethod
    def describe(self) -> Dict[str, Any]:
        pass  # pragma: no cover


class IdentityPostProcessor(PostProcessor):
    method = MitigationMethod.UNMITIGATED

    def apply(self, pred: Prediction, groups: np.ndarray, seed: int) -> Prediction:
        return pred

    def describe(self) -> Dict[str, Any]:
        return {}


def apply(post: PostProcessor, pred: Prediction, groups: np.ndarray, seed: int) -> Prediction:
    groups = np.asarray(groups)
    if len(groups) != len(pred):
        raise ValueError("Groups must be aligned with the prediction")
    return post.apply(pred, groups, seed)
