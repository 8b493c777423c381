import logging
import os
from typing import List

from ..bias.label import score_scale
from ..bias.selection import removal_priority
from ..bias.spec import BiasSpec
from ..bias.views import biased_view
from ..ingestion.cache import write_cache, write_removal_manifest
from ..seeds import derive_seed
from .plan import ExperimentPlan

logger = logging.getLogger(__name__)


def view_name(dataset: str, kind: str, level: float) -> str:
    return f"{dataset}_{kind}_{level:.2f}"


def dump_biased_views(plan: ExperimentPlan, directory: str) -> List[str]:
    """
    Write the whole-dataset biased view of every (kind, level) of a plan, with the seeds the
    runner uses, plus a removal manifest for selection kinds.

    :return: Paths written
    """
    os.makedirs(directory, exist_ok=True)
    dataset = plan.dataset
    paths = []
    for kind in plan.bias_kinds:
        priority = scale = None
        if kind.is_selection:
            priority = removal_priority(dataset, kind, derive_seed(plan.seed, dataset.name, kind.value))
        else:
            scale = score_scale(dataset)
        for level in plan.grid:
            level = float(level)
            seed = derive_seed(plan.seed, dataset.name, kind.value, level)
            spec = BiasSpec(kind, level, noise=dataset.noise_intensity, seed=seed)
            view = biased_view(dataset, spec, priority, scale)
            name = view_name(dataset.name, kind.value, level)
            paths.append(write_cache(view, os.path.join(directory, f"{name}.parquet")))
            if priority is not None:
                removed = priority.removal_set(level)
                paths.append(write_removal_manifest(removed, os.path.join(directory, f"{name}.removed.txt")))
    logger.info("Dumped %d biased view files of %s to %s", len(paths), dataset.name, directory)
    return paths
