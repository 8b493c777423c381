from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd
from jinja2 import Environment

from ..exceptions import EmptySelectionError
from ..mitigation.spec import MitigationMethod
from ..pipeline.records import AggregateRecord, EvalMode
from ..storage.csv_codec import FAILED_MARKER, NA

UNMITIGATED = MitigationMethod.UNMITIGATED.value

TRADEOFF_KEYS = ('dataset', 'kind', 'level', 'method', 'eval_mode', 'learner')
TRADEOFF_COLUMNS = TRADEOFF_KEYS + ('accuracy_delta', 'abs_spd_delta', 'no_tradeoff')

REPORT_TEMPLATE = """\
fairworld run {{ run_id }}
{% for key, value in settings %}{{ key }}: {{ value }}
{% endfor %}
{%- for dataset in datasets %}
== {{ dataset.name }} ({{ dataset.cells }} cells, {{ dataset.failed }} failed) ==
{% for metric, table in dataset.tables %}
-- {{ metric }}, {{ eval_mode }} evaluation --
{{ table }}
{% endfor %}
{%- if dataset.witnesses %}
Cells improving both accuracy and |SPD| over the unmitigated model:
{% for w in dataset.witnesses %}  {{ w.kind }} level {{ '%.1f' | format(w.level) }} {{ w.method }}: \
accuracy {{ '%+.3f' | format(w.accuracy_delta) }}, |SPD| {{ '%+.3f' | format(w.abs_spd_delta) }}
{% endfor %}
{%- endif %}
{%- endfor %}
"""

_environment = Environment(keep_trailing_newline=True)


def select(
    aggregates: Iterable[AggregateRecord],
    dataset: Optional[str] = None,
    kind: Optional[str] = None,
    eval_mode: Optional[str] = None,
    methods: Optional[Sequence[str]] = None,
) -> List[AggregateRecord]:
    """
    Filter aggregates on any combination of dataset, kind, eval mode and method.

    :raises EmptySelectionError: If nothing matches
    """
    selected = [
        a
        for a in aggregates
        if (dataset is None or a.dataset == dataset)
        and (kind is None or a.kind == kind)
        and (eval_mode is None or a.eval_mode == eval_mode)
        and (methods is None or a.method in methods)
    ]
    if not selected:
        raise EmptySelectionError(
            f"No aggregates for dataset={dataset} kind={kind} eval_mode={eval_mode} methods={methods}"
        )
    return selected


def _cell(record: AggregateRecord, metric: str) -> str:
    if record.failed:
        return FAILED_MARKER
    mean, std = record.means.get(metric), record.stds.get(metric)
    if mean is None:
        return NA
    return f"{mean:.3f} ({std:.3f})"


def metric_table(aggregates: Iterable[AggregateRecord], metric: str) -> pd.DataFrame:
    """
    One metric as "mean (std)" cells, rows (dataset, kind, method) and one column per level.
    """
    rows = [
        {'dataset': a.dataset, 'kind': a.kind, 'method': a.method, 'level': a.level, 'value': _cell(a, metric)}
        for a in aggregates
    ]
    frame = pd.DataFrame(rows, columns=['dataset', 'kind', 'method', 'level', 'value'])
    return frame.pivot_table(
        index=['dataset', 'kind', 'method'], columns='level', values='value', aggfunc='first', sort=False
    )


def tradeoff_table(aggregates: Iterable[AggregateRecord]) -> pd.DataFrame:
    """
    Accuracy and |SPD| change of every mitigated cell against the unmitigated model of the same
    (dataset, kind, level, eval mode, learner).

    ``no_tradeoff`` is set when accuracy rose and |SPD| fell. Failed cells get empty deltas.
    """
    aggregates = list(aggregates)
    baseline: Dict[Tuple, AggregateRecord] = {
        (a.dataset, a.kind, a.level, a.eval_mode, a.learner): a for a in aggregates if a.method == UNMITIGATED
    }

    rows = []
    for record in aggregates:
        if record.method == UNMITIGATED:
            continue
        base = baseline.get((record.dataset, record.kind, record.level, record.eval_mode, record.learner))
        if base is None:
            continue
        accuracy_delta = abs_spd_delta = None
        if not record.failed and not base.failed:
            accuracy, base_accuracy = record.mean('accuracy'), base.mean('accuracy')
            if accuracy is not None and base_accuracy is not None:
                accuracy_delta = accuracy - base_accuracy
            spd, base_spd = record.mean('spd'), base.mean('spd')
            if spd is not None and base_spd is not None:
                abs_spd_delta = abs(spd) - abs(base_spd)
        row = {key: getattr(record, key) for key in TRADEOFF_KEYS}
        row['accuracy_delta'] = accuracy_delta
        row['abs_spd_delta'] = abs_spd_delta
        row['no_tradeoff'] = (
            accuracy_delta is not None and abs_spd_delta is not None and accuracy_delta > 0 and abs_spd_delta < 0
        )
        rows.append(row)
    return pd.DataFrame(rows, columns=list(TRADEOFF_COLUMNS))


def render_run_report(
    run_id: str,
    aggregates: Iterable[AggregateRecord],
    metadata: Dict,
    metrics: Sequence[str] = ('accuracy', 'spd', 'eqop', 'bcc'),
    eval_mode: str = EvalMode.FAIR.value,
) -> str:
    """
    Plain text report of a run: per dataset, "mean (std)" tables of a few metrics for one evaluation
    mode and the cells that improve both accuracy and |SPD|.
    """
    aggregates = [a for a in aggregates if a.eval_mode == eval_mode]
    datasets = []
    for name in dict.fromkeys(a.dataset for a in aggregates):
        rows = [a for a in aggregates if a.dataset == name]
        tradeoffs = tradeoff_table(rows)
        datasets.append(
            {
                'name': name,
                'cells': len(rows),
                'failed': sum(a.failed for a in rows),
                'tables': [(metric, metric_table(rows, metric).to_string()) for metric in metrics],
                'witnesses': tradeoffs[tradeoffs['no_tradeoff']].to_dict('records'),
            }
        )
    settings = [(k, metadata[k]) for k in ('seed', 'learner', 'version') if k in metadata]
    template = _environment.from_string(REPORT_TEMPLATE)
    return template.render(run_id=run_id, settings=settings, datasets=datasets, eval_mode=eval_mode)
