from typing import List, Optional

from fair_world.metrics.report import METRIC_NAMES
from fair_world.pipeline import AggregateRecord


def cell(
    method: str,
    level: float,
    accuracy: Optional[float],
    spd: Optional[float],
    eval_mode: str = 'fair',
    failed: bool = False,
    kind: str = 'label',
    dataset: str = 'student',
    sensitive_usage: Optional[float] = None,
) -> AggregateRecord:
    means = {name: None for name in METRIC_NAMES}
    means.update(accuracy=accuracy, spd=spd)
    if sensitive_usage is not None:
        means['sensitive_usage'] = sensitive_usage
    stds = {name: (None if value is None else 0.01) for name, value in means.items()}
    return AggregateRecord(
        dataset=dataset,
        kind=kind,
        level=level,
        method=method,
        eval_mode=eval_mode,
        learner='forest',
        means=means,
        stds=stds,
        n_folds=10,
        fail_count=6 if failed else 0,
        failed=failed,
    )


def sample_aggregates() -> List[AggregateRecord]:
    """
    Two levels of the unmitigated model and two methods, for both evaluation modes.
    """
    cells = []
    for mode, shift in (('fair', 0.0), ('biased', 0.02)):
        cells += [
            cell('unmitigated', 0.0, 0.80, -0.10, mode),
            cell('unmitigated', 0.5, 0.70 + shift, -0.30 + shift, mode),
            cell('reweighing', 0.0, 0.82, -0.05, mode),
            cell('reweighing', 0.5, 0.72 + shift, -0.35 + shift, mode),
            cell('eop', 0.0, 0.78, -0.02, mode),
            cell('eop', 0.5, None, None, mode, failed=True),
        ]
    return cells
