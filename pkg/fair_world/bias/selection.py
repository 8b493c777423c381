import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..data.dataset import PRIVILEGED, UNPRIVILEGED, Dataset
from ..exceptions import BiasInjectionError
from .label import score_scale
from .spec import BiasKind

logger = logging.getLogger(__name__)

SELF_SELECTION_EPSILON = 0.01
SELF_SELECTION_WEIGHTING = 'linear'


@dataclass(frozen=True, eq=False)
class RemovalCell:
    """
    Candidate ids of one targeted cell, in removal order, and the size the removal
    proportion applies to.
    """

    order: np.ndarray
    base: int

    def take(self, proportion: float) -> np.ndarray:
        count = int(np.floor(proportion * self.base + 1e-9))
        return self.order[: min(count, len(self.order))]


@dataclass(frozen=True, eq=False)
class RemovalPriority:
    """
    Removal order of a dataset for one selection kind and seed.

    Every level removes a prefix of each cell's order, so removal sets nest across levels.
    """

    kind: BiasKind
    seed: int
    cells: Tuple[RemovalCell, ...]

    def removal_set(self, proportion: float) -> np.ndarray:
        if not 0.0 <= proportion <= 1.0:
            raise BiasInjectionError(f"Removal proportion must lie in [0, 1], got {proportion}")
        if not self.cells:
            return np.array([], dtype=np.int64)
        return np.sort(np.concatenate([cell.take(proportion) for cell in self.cells]))


def _self_selection_weights(dataset: Dataset, scores: np.ndarray) -> np.ndarray:
    # linear in the distance to the top score; epsilon keeps top scorers removable
    epsilon = SELF_SELECTION_EPSILON * score_scale(dataset)
    weights = np.max(dataset.score) - scores + epsilon
    if weights.sum() <= 0:
        return np.full(len(scores), 1.0 / max(len(scores), 1))
    return weights / weights.sum()


def removal_priority(dataset: Dataset, kind: BiasKind, seed: int) -> RemovalPriority:
    """
    Draw the removal order of a selection kind once, for every level to share.

    :param dataset: Fair dataset the order is drawn over
    :param kind: Selection kind
    :param seed: Seed of the order
    """
    kind = BiasKind(kind)
    if not kind.is_selection:
        raise BiasInjectionError("Label bias has no removal priority")

    rng = np.random.default_rng(seed)
    order = np.argsort(dataset.instance_ids, kind='stable')
    ids = dataset.instance_ids[order]
    groups = dataset.sensitive[order]
    labels = dataset.label[order]
    unprivileged = groups == UNPRIVILEGED
    n_unprivileged = int(np.sum(unprivileged))

    if kind == BiasKind.SELECT_RANDOM:
        cells = (RemovalCell(rng.permutation(ids[unprivileged]), n_unprivileged),)
    elif kind == BiasKind.SELECT_SELF:
        candidates = ids[unprivileged]
        if len(candidates):
            p = _self_selection_weights(dataset, dataset.score[order][unprivileged])
            drawn = rng.choice(candidates, size=len(candidates), replace=False, p=p)
        else:
            drawn = candidates
        cells = (RemovalCell(drawn, n_unprivileged),)
    elif kind == BiasKind.SELECT_MALICIOUS:
        positives = ids[unprivileged & (labels == 1)]
        negatives = ids[(groups == PRIVILEGED) & (labels == 0)]
        cells = (
            RemovalCell(rng.permutation(positives), len(positives)),
            RemovalCell(rng.permutation(negatives), len(negatives)),
        )
    else:
        cells = (RemovalCell(rng.permutation(ids), n_unprivileged),)
    return RemovalPriority(kind=kind, seed=seed, cells=cells)


def removal_set(dataset: Dataset, kind: BiasKind, p_u: float, seed: int) -> np.ndarray:
    """
    Instance ids a selection bias of proportion ``p_u`` removes, ascending.

    Removal sets with the same dataset, kind and seed nest: a lower proportion removes
    a subset of what a higher one removes.
    """
    return removal_priority(dataset, kind, seed).removal_set(p_u)
