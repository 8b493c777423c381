import logging
from typing import Any, Dict, Optional

import numpy as np

from ..data.dataset import PRIVILEGED, UNPRIVILEGED
from ..exceptions import MethodFailedError
from ..metrics.report import Prediction
from .postprocessing import PostProcessor, coin_flips
from .spec import CostConstraint, MitigationMethod

logger = logging.getLogger(__name__)


def generalized_costs(scores: np.ndarray, truth: np.ndarray):
    """
    Generalized false negative and false positive costs, ``None`` when a truth class is empty.
    """
    positives, negatives = truth == 1, truth == 0
    fn_cost = float(1 - np.mean(scores[positives])) if positives.any() else None
    fp_cost = float(np.mean(scores[negatives])) if negatives.any() else None
    return fn_cost, fp_cost


def group_cost(scores: np.ndarray, truth: np.ndarray, constraint: CostConstraint) -> Optional[float]:
    """
    Cost of one group's scores under a cost constraint.
    """
    fn_cost, fp_cost = generalized_costs(scores, truth)
    if constraint == CostConstraint.FNR:
        return fn_cost
    if constraint == CostConstraint.FPR:
        return fp_cost
    if fn_cost is None or fp_cost is None:
        return None
    base_rate = float(np.mean(truth))
    return 0.5 * fp_cost * (1 - base_rate) + 0.5 * fn_cost * base_rate


class CalibratedEqualizedOddsPostProcessor(PostProcessor):
    """
    Replaces the score of randomly chosen members of the cheaper group by the group base
    rate, at a mixing rate that equalizes the expected cost of both groups.
    """

    method = MitigationMethod.CEO

    def __init__(
        self,
        mix_rates: Dict[int, float],
        base_rates: Dict[int, float],
        costs: Dict[int, float],
        constraint: CostConstraint,
        seed: int = 0,
    ):
        self.mix_rates = dict(mix_rates)
        self.base_rates = dict(base_rates)
        self.costs = dict(costs)
        self.constraint = constraint
        self.seed = seed

    def apply(self, pred: Prediction, groups: np.ndarray, seed: Optional[int] = None) -> Prediction:
        if pred.scores is None:
            raise ValueError("Calibrated equalized odds needs prediction scores")
        seed = self.seed if seed is None else seed
        draws = coin_flips(pred.instance_ids, seed)
        scores = pred.scores.copy()
        for a in (UNPRIVILEGED, PRIVILEGED):
            withheld = (groups == a) & (draws < self.mix_rates[a])
            scores[withheld] = self.base_rates[a]
        return Prediction(pred.instance_ids, (scores >= 0.5).astype(int), scores)

    def describe(self) -> Dict[str, Any]:
        return {
            'constraint': self.constraint.value,
            'mix_rates': {f"A={a}": r for a, r in self.mix_rates.items()},
            'base_rates': {f"A={a}": r for a, r in self.base_rates.items()},
            'costs': {f"A={a}": c for a, c in self.costs.items()},
        }


def fit_ceo(
    validation_scores: np.ndarray,
    validation_truth: np.ndarray,
    groups: np.ndarray,
    cost_constraint: CostConstraint = CostConstraint.WEIGHTED,
    seed: int = 0,
) -> CalibratedEqualizedOddsPostProcessor:
    """
    Fit the mixing rates of calibrated equalized odds.

    The cheaper group mixes in its trivial predictor (every score at the group base rate)
    with rate ``(other - self) / (trivial - self)``, which makes both expected costs equal;
    the other group keeps its scores.

    :raises MethodFailedError: a group is empty, lacks a truth class, or its cost cannot be
        raised to the other group's
    """
    method = MitigationMethod.CEO.value
    constraint = CostConstraint(cost_constraint)
    scores = np.asarray(validation_scores, dtype=float)
    truth = np.asarray(validation_truth, dtype=int)
    groups = np.asarray(groups, dtype=int)

    costs, trivial_costs, base_rates = {}, {}, {}
    for a in (UNPRIVILEGED, PRIVILEGED):
        in_group = groups == a
        if not in_group.any():
            raise MethodFailedError(method, f"group A={a} is empty")
        group_truth = truth[in_group]
        if group_truth.min() == group_truth.max():
            raise MethodFailedError(method, f"group A={a} lacks positive or negative truth labels")
        base_rates[a] = float(np.mean(group_truth))
        costs[a] = group_cost(scores[in_group], group_truth, constraint)
        trivial_costs[a] = group_cost(np.full(len(group_truth), base_rates[a]), group_truth, constraint)

    cheap = UNPRIVILEGED if costs[UNPRIVILEGED] < costs[PRIVILEGED] else PRIVILEGED
    expensive = PRIVILEGED if cheap == UNPRIVILEGED else UNPRIVILEGED
    mix_rates = {UNPRIVILEGED: 0.0, PRIVILEGED: 0.0}
    gap = costs[expensive] - costs[cheap]
    if gap > 0:
        headroom = trivial_costs[cheap] - costs[cheap]
        if headroom <= 0:
            raise MethodFailedError(method, f"trivial predictor of group A={cheap} is not costlier than its scores")
        mix_rates[cheap] = gap / headroom
        if mix_rates[cheap] > 1:
            logger.warning("CEO mixing rate %.3f capped at 1, costs stay unequal", mix_rates[cheap])
            mix_rates[cheap] = 1.0

    logger.debug("CEO mixing rates %s for costs %s", mix_rates, costs)
    return CalibratedEqualizedOddsPostProcessor(mix_rates, base_rates, costs, constraint, seed)
