import logging
import os
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use('Agg')

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from ..exceptions import EmptySelectionError  # noqa: E402
from ..metrics.report import METRIC_NAMES  # noqa: E402
from ..mitigation.spec import MitigationMethod  # noqa: E402
from ..pipeline.aggregate import AGGREGATED_METRICS  # noqa: E402
from ..pipeline.records import EVAL_MODES, AggregateRecord, EvalMode  # noqa: E402
from ..pipeline.scatter import diagonal_scatter  # noqa: E402
from .tables import select  # noqa: E402

logger = logging.getLogger(__name__)

UNMITIGATED = MitigationMethod.UNMITIGATED.value
PADDING = 0.05
PLOT_SUFFIX = '.svg'


class PlotFamily(str, Enum):
    IMPACT = 'impact'
    COMPARISON = 'comparison'
    SCATTER = 'scatter'


def padded_limits(values: Iterable[float], padding: float = PADDING) -> Tuple[float, float]:
    """
    Data range widened by ``padding`` of its span on both sides.

    A zero span is padded relative to the value itself, or by ``padding`` around zero.
    """
    finite = [float(v) for v in values if v is not None and np.isfinite(v)]
    if not finite:
        return -1.0, 1.0
    low, high = min(finite), max(finite)
    span = high - low
    if span == 0:
        span = abs(high) or 1.0
    return low - padding * span, high + padding * span


def plot_path(out_dir: str, family: PlotFamily, dataset: str, kind: str, metric: str) -> str:
    return os.path.join(out_dir, f"{family.value}_{dataset}_{kind}_{metric}{PLOT_SUFFIX}")


def _save(fig, path: str) -> str:
    with plt.rc_context({'svg.hashsalt': 'fair_world', 'svg.fonttype': 'none'}):
        fig.savefig(path, format='svg', metadata={'Date': None})
    plt.close(fig)
    logger.debug("Wrote %s", path)
    return path


def _by_panel(aggregates: Iterable[AggregateRecord]) -> Dict[Tuple[str, str], List[AggregateRecord]]:
    panels: Dict[Tuple[str, str], List[AggregateRecord]] = {}
    for record in aggregates:
        panels.setdefault((record.dataset, record.kind), []).append(record)
    return panels


def _series(records: Iterable[AggregateRecord], metric: str) -> Tuple[List[float], List[float], List[float]]:
    ok = sorted((r for r in records if not r.failed and r.mean(metric) is not None), key=lambda r: r.level)
    return [r.level for r in ok], [r.mean(metric) for r in ok], [r.stds.get(metric) or 0.0 for r in ok]


def _decorate(ax, dataset: str, kind: str, metric: str, xs: List[float], ys: List[float]) -> None:
    ax.set_xlim(*padded_limits(xs))
    ax.set_ylim(*padded_limits(ys))
    ax.set_xlabel('bias intensity')
    ax.set_ylabel(metric)
    ax.set_title(f"{dataset} / {kind}")
    ax.legend(loc='best', fontsize='small')


def impact_plots(
    aggregates: Iterable[AggregateRecord], out_dir: str, metrics: Sequence[str] = METRIC_NAMES
) -> List[str]:
    """
    Metric vs. level of the unmitigated model, one curve per evaluation mode.
    """
    paths = []
    for (dataset, kind), records in _by_panel(select(aggregates, methods=[UNMITIGATED])).items():
        for metric in metrics:
            fig, ax = plt.subplots(figsize=(6, 4))
            xs, ys = [], []
            for mode in EVAL_MODES:
                levels, means, stds = _series([r for r in records if r.eval_mode == mode], metric)
                if not levels:
                    continue
                linestyle = '-' if mode == EvalMode.FAIR.value else '--'
                ax.errorbar(levels, means, yerr=stds, marker='o', linestyle=linestyle, capsize=2, label=f"{mode} test")
                xs += levels
                ys += [m - s for m, s in zip(means, stds)] + [m + s for m, s in zip(means, stds)]
            if not xs:
                plt.close(fig)
                logger.debug("No %s values for %s / %s", metric, dataset, kind)
                continue
            _decorate(ax, dataset, kind, metric, xs, ys)
            paths.append(_save(fig, plot_path(out_dir, PlotFamily.IMPACT, dataset, kind, metric)))
    return paths


def fair_baseline(aggregates: Iterable[AggregateRecord], dataset: str, kind: str, metric: str) -> Optional[float]:
    """
    Fair-test value of the unmitigated model at level 0, if the run has one.
    """
    for record in aggregates:
        if (
            record.dataset == dataset
            and record.kind == kind
            and record.method == UNMITIGATED
            and record.eval_mode == EvalMode.FAIR.value
            and record.level == 0.0
            and not record.failed
        ):
            return record.mean(metric)
    return None


def comparison_plots(
    aggregates: Iterable[AggregateRecord],
    out_dir: str,
    metrics: Sequence[str] = METRIC_NAMES,
    eval_mode: str = EvalMode.FAIR.value,
) -> List[str]:
    """
    Per-method curves of one evaluation mode against a dashed black fair baseline.

    Failed cells are drawn as crosses at the baseline, or at the panel's mean when there is none.
    """
    aggregates = list(aggregates)
    paths = []
    for (dataset, kind), records in _by_panel(select(aggregates, eval_mode=eval_mode)).items():
        methods = list(dict.fromkeys(r.method for r in records))
        for metric in metrics:
            baseline = fair_baseline(aggregates, dataset, kind, metric)
            fig, ax = plt.subplots(figsize=(6, 4))
            xs, ys, crosses = [], [], []
            for method in methods:
                rows = [r for r in records if r.method == method]
                levels, means, _ = _series(rows, metric)
                color = None
                if levels:
                    (line,) = ax.plot(levels, means, marker='o', label=method)
                    color = line.get_color()
                    xs += levels
                    ys += means
                failed = sorted(r.level for r in rows if r.failed)
                if failed:
                    crosses.append((method, color, failed))
                    xs += failed
            if not xs:
                plt.close(fig)
                continue
            if baseline is not None:
                ax.axhline(baseline, color='black', linestyle='--', linewidth=1, label='fair baseline')
                ys.append(baseline)
            cross_y = baseline if baseline is not None else (float(np.mean(ys)) if ys else 0.0)
            for method, color, levels in crosses:
                ax.scatter(levels, [cross_y] * len(levels), marker='x', s=60, color=color or 'red', zorder=3)
            ys += [cross_y] if crosses else []
            _decorate(ax, dataset, kind, metric, xs, ys)
            paths.append(_save(fig, plot_path(out_dir, PlotFamily.COMPARISON, dataset, kind, metric)))
    return paths


def scatter_plots(
    aggregates: Iterable[AggregateRecord], out_dir: str, metrics: Sequence[str] = METRIC_NAMES
) -> List[str]:
    """
    Fair-test against biased-test mean of every cell, with the x = y diagonal.
    """
    points = diagonal_scatter(aggregates, metrics)
    paths = []
    for metric in metrics:
        panels: Dict[Tuple[str, str], list] = {}
        for point in points[metric]:
            panels.setdefault((point.dataset, point.kind), []).append(point)
        for (dataset, kind), panel in panels.items():
            fig, ax = plt.subplots(figsize=(5, 5))
            for method in dict.fromkeys(p.method for p in panel):
                chosen = [p for p in panel if p.method == method]
                ax.scatter([p.fair for p in chosen], [p.biased for p in chosen], s=18, label=method)
            low, high = padded_limits([p.fair for p in panel] + [p.biased for p in panel])
            ax.plot([low, high], [low, high], color='black', linewidth=1)
            ax.set_xlim(low, high)
            ax.set_ylim(low, high)
            ax.set_aspect('equal')
            ax.set_xlabel(f"{metric}, fair test")
            ax.set_ylabel(f"{metric}, biased test")
            ax.set_title(f"{dataset} / {kind}")
            ax.legend(loc='best', fontsize='small')
            paths.append(_save(fig, plot_path(out_dir, PlotFamily.SCATTER, dataset, kind, metric)))
    return paths


def plot(
    aggregates: Iterable[AggregateRecord],
    family: PlotFamily,
    out_dir: str,
    metrics: Optional[Sequence[str]] = None,
    dataset: Optional[str] = None,
    kind: Optional[str] = None,
) -> List[str]:
    """
    Write one SVG per (dataset, kind, metric) of a figure family.

    Impact and comparison figures also draw the forests' sensitive-attribute usage; the
    scatter family pairs fair and biased values and so only takes evaluation metrics.

    :raises EmptySelectionError: If the selection holds no aggregates or nothing could be drawn
    """
    selected = select(aggregates, dataset=dataset, kind=kind)
    family = PlotFamily(family)
    known = METRIC_NAMES if family == PlotFamily.SCATTER else AGGREGATED_METRICS
    metrics = list(metrics or known)
    unknown = set(metrics) - set(known)
    if unknown:
        raise EmptySelectionError(f"Unknown metrics {sorted(unknown)} for the {family.value} family")
    os.makedirs(out_dir, exist_ok=True)

    if family == PlotFamily.IMPACT:
        paths = impact_plots(selected, out_dir, metrics)
    elif family == PlotFamily.COMPARISON:
        paths = comparison_plots(selected, out_dir, metrics)
    elif family == PlotFamily.SCATTER:
        paths = scatter_plots(selected, out_dir, metrics)
    else:
        raise ValueError(f'Unknown plot family: {family}')

    if not paths:
        raise EmptySelectionError(f"Nothing to draw for the {family.value} family")
    logger.info("Wrote %d %s plots to %s", len(paths), family.value, out_dir)
    return paths
