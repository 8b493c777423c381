import io
from typing import Any, Dict, Iterable, List, Optional, TextIO, Union

import numpy as np
import pandas as pd

from ..metrics.report import METRIC_NAMES
from ..pipeline.aggregate import AGGREGATED_METRICS
from ..pipeline.records import AGGREGATE_KEYS, RECORD_KEYS, AggregateRecord, ResultRecord

NA = 'NA'
FAILED_MARKER = 'FAILED'

RECORD_COLUMNS = RECORD_KEYS + ('status',) + METRIC_NAMES + ('sensitive_usage',)
AGGREGATE_COLUMNS = (
    AGGREGATE_KEYS
    + tuple(f"{name}_{stat}" for name in AGGREGATED_METRICS for stat in ('mean', 'std'))
    + ('n_folds', 'fail_count', 'failed', 'marker')
)
KEY_TYPES = {'dataset': str, 'kind': str, 'method': str, 'eval_mode': str, 'learner': str, 'status': str}

Target = Union[str, TextIO]


def _none(value: Any) -> Optional[Any]:
    if isinstance(value, float) and np.isnan(value):
        return None
    return value


def _write(frame: pd.DataFrame, target: Optional[Target]) -> str:
    # repr-precision floats so parsing returns the exact values
    text = frame.to_csv(index=False, na_rep=NA, lineterminator='\n', float_format=None)
    if isinstance(target, str):
        with open(target, 'w', newline='') as f:
            f.write(text)
    elif target is not None:
        target.write(text)
    return text


def _read(source: Target, columns) -> List[Dict[str, Any]]:
    if isinstance(source, str) and '\n' in source:
        source = io.StringIO(source)
    frame = pd.read_csv(
        source,
        keep_default_na=False,
        na_values=[NA],
        float_precision='round_trip',
        dtype={c: t for c, t in KEY_TYPES.items() if c in columns},
    )
    missing = set(columns) - set(frame.columns)
    if missing:
        raise ValueError(f"CSV lacks columns {sorted(missing)}")
    return [{k: _none(v) for k, v in row.items()} for row in frame.to_dict(orient='records')]


def emit_records(records: Iterable[ResultRecord], target: Optional[Target] = None) -> str:
    """
    Write records as CSV with a fixed column order; undefined values are written as ``NA``.

    :param records: Records to write
    :param target: File path or text stream; the CSV text is returned either way
    """
    frame = pd.DataFrame([r.to_dict() for r in records], columns=list(RECORD_COLUMNS))
    return _write(frame, target)


def parse_records(source: Target) -> List[ResultRecord]:
    """
    Parse records written by :func:`emit_records` from a path, stream or CSV text.
    """
    return [ResultRecord.from_dict(row) for row in _read(source, RECORD_COLUMNS)]


def emit_aggregates(aggregates: Iterable[AggregateRecord], target: Optional[Target] = None) -> str:
    rows = []
    for aggregate in aggregates:
        row = aggregate.to_dict()
        row['marker'] = FAILED_MARKER if aggregate.failed else ''
        rows.append(row)
    return _write(pd.DataFrame(rows, columns=list(AGGREGATE_COLUMNS)), target)


def parse_aggregates(source: Target) -> List[AggregateRecord]:
    aggregates = []
    for row in _read(source, AGGREGATE_COLUMNS):
        row.pop('marker', None)
        row['failed'] = str(row['failed']) == 'True'
        aggregates.append(AggregateRecord.from_dict(row))
    return aggregates
