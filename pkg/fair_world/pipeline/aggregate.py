from typing import Iterable, List

import numpy as np
import pandas as pd

from ..metrics.report import METRIC_NAMES
from .records import AGGREGATE_KEYS, AggregateRecord, RecordStatus, ResultRecord

AGGREGATED_METRICS = METRIC_NAMES + ('sensitive_usage',)


def _finite(value) -> bool:
    return value is not None and not (isinstance(value, float) and np.isnan(value))


def _moments(values: pd.Series):
    present = np.array([v for v in values if _finite(v)], dtype=float)
    if len(present) == 0:
        return None, None
    # population standard deviation over the folds
    return float(np.mean(present)), float(np.std(present))


def aggregate(records: Iterable[ResultRecord]) -> List[AggregateRecord]:
    """
    Mean and population standard deviation of each metric over the ok folds of every cell.

    A cell is failed when more than half of its folds failed or none succeeded.
    """
    frame = pd.DataFrame([r.to_dict() for r in records])
    if frame.empty:
        return []

    aggregates = []
    for key, group in frame.groupby(list(AGGREGATE_KEYS), sort=False):
        ok = group[group['status'] == RecordStatus.OK.value]
        n_folds = len(group)
        fail_count = n_folds - len(ok)
        means, stds = {}, {}
        for name in AGGREGATED_METRICS:
            means[name], stds[name] = _moments(ok[name])
        aggregates.append(
            AggregateRecord(
                **dict(zip(AGGREGATE_KEYS, key)),
                means=means,
                stds=stds,
                n_folds=n_folds,
                fail_count=fail_count,
                failed=fail_count > n_folds / 2 or len(ok) == 0,
            )
        )
    return aggregates
