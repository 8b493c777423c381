from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional

from ..metrics.report import METRIC_NAMES
from .records import AggregateRecord, EvalMode


@dataclass(frozen=True)
class ScatterPoint:
    """
    Fair and biased evaluation of the same aggregated cell.

    ``clipped`` marks pairs with a value of magnitude 1 or more, drawn outside a unit view.
    """

    dataset: str
    kind: str
    level: float
    method: str
    learner: str
    fair: float
    biased: float
    clipped: bool

    @property
    def on_diagonal(self) -> bool:
        return self.fair == self.biased


def diagonal_scatter(
    aggregates: Iterable[AggregateRecord], metrics: Optional[Iterable[str]] = None
) -> Dict[str, List[ScatterPoint]]:
    """
    Pair the fair and biased means of every (dataset, kind, level, method, learner) cell,
    per metric. Failed cells and undefined values are left out.
    """
    metrics = list(metrics or METRIC_NAMES)
    fair: Dict[tuple, AggregateRecord] = {}
    biased: Dict[tuple, AggregateRecord] = {}
    for record in aggregates:
        cell = (record.dataset, record.kind, record.level, record.method, record.learner)
        if record.eval_mode == EvalMode.FAIR.value:
            fair[cell] = record
        elif record.eval_mode == EvalMode.BIASED.value:
            biased[cell] = record

    points: Dict[str, List[ScatterPoint]] = {metric: [] for metric in metrics}
    for cell in sorted(set(fair) & set(biased)):
        if fair[cell].failed or biased[cell].failed:
            continue
        for metric in metrics:
            x, y = fair[cell].mean(metric), biased[cell].mean(metric)
            if x is None or y is None:
                continue
            points[metric].append(ScatterPoint(*cell, fair=x, biased=y, clipped=abs(x) >= 1 or abs(y) >= 1))
    return points
