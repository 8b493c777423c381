import logging
from typing import Optional

from ..data.dataset import PRIVILEGED, UNPRIVILEGED, Dataset
from ..exceptions import BiasInjectionError
from .label import inject_label_bias
from .selection import SELF_SELECTION_WEIGHTING, RemovalPriority, removal_priority
from .spec import BiasKind, BiasSpec

logger = logging.getLogger(__name__)


def _flag_if_group_missing(dataset: Dataset) -> Dataset:
    if not dataset.has_both_groups() and not dataset.group_removed:
        return dataset.replace(group_removed=True)
    return dataset


def biased_view(
    dataset: Dataset,
    spec: BiasSpec,
    priority: Optional[RemovalPriority] = None,
    scale: Optional[float] = None,
) -> Dataset:
    """
    Inject one bias into a fair dataset.

    Instance ids are preserved, so fold membership carries over from the fair dataset.

    :param dataset: Fair dataset (or fold subset of it)
    :param spec: Bias to inject
    :param priority: Precomputed removal order, shared across levels and folds; drawn from
        ``dataset`` and ``spec.seed`` when omitted
    :param scale: Label-bias score scale when ``dataset`` is a subset of the scaled dataset
    :return: The biased view, flagged group-removed when a group became empty
    """
    if spec.is_identity:
        return dataset
    if spec.kind == BiasKind.LABEL:
        return inject_label_bias(dataset, spec.intensity, spec.noise, spec.seed, scale=scale)

    if priority is None:
        priority = removal_priority(dataset, spec.kind, spec.seed)
    elif priority.kind != spec.kind:
        raise BiasInjectionError(f"Removal priority of kind {priority.kind.value} used for {spec.kind.value}")

    view = dataset.drop(priority.removal_set(spec.intensity))
    if spec.kind == BiasKind.SELECT_SELF:
        view = view.replace(metadata={**view.metadata, 'self_selection_weighting': SELF_SELECTION_WEIGHTING})
    return _flag_if_group_missing(view)


def exclude_group(dataset: Dataset, group: int) -> Dataset:
    """
    Remove every row of one group and flag the result group-removed.
    """
    if group not in (PRIVILEGED, UNPRIVILEGED):
        raise BiasInjectionError(f"Unknown group {group}")
    kept = dataset.instance_ids[~dataset.group_mask(group)]
    return dataset.select(kept).replace(group_removed=True)
