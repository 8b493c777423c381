from .aggregate import AGGREGATED_METRICS, aggregate
from .plan import DEFAULT_GRID, LABEL_FOLDS, SELECTION_FOLDS, ExperimentPlan
from .records import (
    AGGREGATE_KEYS,
    EVAL_MODES,
    RECORD_KEYS,
    AggregateRecord,
    EvalMode,
    RecordStatus,
    ResultRecord,
)
from .runner import ExperimentRunner, FoldRunner, run, run_metadata
from .scatter import ScatterPoint, diagonal_scatter
from .dump import dump_biased_views, view_name
