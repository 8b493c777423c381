import itertools
import logging
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..data.dataset import PRIVILEGED, UNPRIVILEGED
from ..exceptions import MethodFailedError
from ..metrics.report import Prediction
from .postprocessing import PostProcessor, coin_flips
from .spec import MitigationMethod

logger = logging.getLogger(__name__)

# variable order of the mixing program: (group, base prediction)
VARIABLES: Tuple[Tuple[int, int], ...] = ((UNPRIVILEGED, 0), (UNPRIVILEGED, 1), (PRIVILEGED, 0), (PRIVILEGED, 1))
TOLERANCE = 1e-12


class EqualizedOddsPostProcessor(PostProcessor):
    """
    Flips predicted labels at random with group- and label-dependent probabilities so that
    both groups share true and false positive rates.

    Attributes:
        mix_rates: ``P(new label = 1 | group, base label)`` per (group, base label)
    """

    method = MitigationMethod.EOP

    def __init__(self, mix_rates: Dict[Tuple[int, int], float], seed: int = 0):
        self.mix_rates = dict(mix_rates)
        self.seed = seed

    def positive_probability(self, labels: np.ndarray, groups: np.ndarray) -> np.ndarray:
        return np.array([self.mix_rates[(int(a), int(b))] for a, b in zip(groups, labels)], dtype=float)

    def apply(self, pred: Prediction, groups: np.ndarray, seed: Optional[int] = None) -> Prediction:
        seed = self.seed if seed is None else seed
        probability = self.positive_probability(pred.labels, groups)
        labels = (coin_flips(pred.instance_ids, seed) < probability).astype(int)
        return Prediction(pred.instance_ids, labels)

    def expected_rates(
        self, labels: np.ndarray, truth: np.ndarray, groups: np.ndarray
    ) -> Dict[int, Tuple[float, float]]:
        """
        Expected (TPR, FPR) per group after mixing.
        """
        probability = self.positive_probability(labels, groups)
        rates = {}
        for a in (UNPRIVILEGED, PRIVILEGED):
            in_group = groups == a
            rates[a] = (
                float(np.mean(probability[in_group & (truth == 1)])),
                float(np.mean(probability[in_group & (truth == 0)])),
            )
        return rates

    def describe(self) -> Dict[str, Any]:
        return {f"p[A={a},Yhat={b}]": p for (a, b), p in sorted(self.mix_rates.items())}


def _group_statistics(labels: np.ndarray, truth: np.ndarray, groups: np.ndarray):
    tpr, fpr, counts = {}, {}, {}
    for a in (UNPRIVILEGED, PRIVILEGED):
        in_group = groups == a
        positives = in_group & (truth == 1)
        negatives = in_group & (truth == 0)
        if not positives.any() or not negatives.any():
            raise MethodFailedError(MitigationMethod.EOP.value, f"group A={a} lacks positive or negative truth labels")
        predicted = labels[in_group]
        if predicted.min() == predicted.max():
            raise MethodFailedError(MitigationMethod.EOP.value, f"group A={a} receives a single predicted class")
        tpr[a] = np.mean(labels[positives])
        fpr[a] = np.mean(labels[negatives])
        for b in (0, 1):
            for y in (0, 1):
                counts[(a, b, y)] = int(np.sum(in_group & (labels == b) & (truth == y)))
    return tpr, fpr, counts


def _constraints(tpr: Dict[int, float], fpr: Dict[int, float]) -> np.ndarray:
    # post-mix rate of group a: p[a,1] * rate_a + p[a,0] * (1 - rate_a); rows equalize TPR then FPR
    rows = []
    for rate in (tpr, fpr):
        row = []
        for a, b in VARIABLES:
            sign = 1.0 if a == UNPRIVILEGED else -1.0
            row.append(sign * (rate[a] if b == 1 else 1 - rate[a]))
        rows.append(row)
    return np.array(rows)


def _vertices(constraints: np.ndarray) -> List[np.ndarray]:
    """
    Vertices of ``{x in [0, 1]^4 : constraints @ x = 0}``.
    """
    vertices: List[np.ndarray] = []
    n = constraints.shape[1]
    for n_fixed in range(n - constraints.shape[0], n + 1):
        for fixed in itertools.combinations(range(n), n_fixed):
            free = [i for i in range(n) if i not in fixed]
            for values in itertools.product((0.0, 1.0), repeat=n_fixed):
                x = np.zeros(n)
                x[list(fixed)] = values
                if free:
                    system = constraints[:, free]
                    if np.linalg.matrix_rank(system) < len(free):
                        continue
                    target = -constraints[:, list(fixed)] @ np.array(values) if fixed else np.zeros(len(constraints))
                    x[free] = np.linalg.lstsq(system, target, rcond=None)[0]
                if np.all(x >= -TOLERANCE) and np.all(x <= 1 + TOLERANCE) and np.all(np.abs(constraints @ x) < 1e-10):
                    vertices.append(np.clip(x, 0.0, 1.0))
    return vertices


def fit_eop(
    validation_pred_labels: np.ndarray, validation_truth: np.ndarray, groups: np.ndarray, seed: int = 0
) -> EqualizedOddsPostProcessor:
    """
    Solve the equalized-odds mixing program exactly on validation labels.

    The program maximizes expected validation accuracy over the four mixing probabilities
    subject to equal expected TPR and FPR across groups. Its optimum is a vertex of the
    feasible polytope, so every vertex is enumerated; ties go to the smallest expected
    number of flipped labels.

    :raises MethodFailedError: a group lacks a truth class or receives a single predicted class
    """
    labels = np.asarray(validation_pred_labels, dtype=int)
    truth = np.asarray(validation_truth, dtype=int)
    groups = np.asarray(groups, dtype=int)
    tpr, fpr, counts = _group_statistics(labels, truth, groups)

    gain = np.array([counts[(a, b, 1)] - counts[(a, b, 0)] for a, b in VARIABLES], dtype=float)
    constant = sum(counts[(a, b, 0)] for a, b in VARIABLES)
    size = np.array([counts[(a, b, 0)] + counts[(a, b, 1)] for a, b in VARIABLES], dtype=float)

    best, best_key = None, None
    for x in _vertices(_constraints(tpr, fpr)):
        correct = constant + gain @ x
        # a base label 1 flips with probability 1 - p, a base label 0 with probability p
        flips = sum(size[i] * (x[i] if b == 0 else 1 - x[i]) for i, (_, b) in enumerate(VARIABLES))
        key = (-round(correct, 9), round(flips, 9))
        if best_key is None or key < best_key:
            best, best_key = x, key

    mix_rates = {variable: float(p) for variable, p in zip(VARIABLES, best)}  # type: ignore
    logger.debug("EOP mix rates: %s", mix_rates)
    return EqualizedOddsPostProcessor(mix_rates, seed)
