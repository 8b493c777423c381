from .classification import accuracy, balanced_accuracy
from .evaluate import evaluate, metric_report, report_for
from .group import OddsMetrics, odds_metrics, spd
from .individual import bcc, gei, nearest_neighbours
from .report import METRIC_NAMES, MetricReport, MetricValue, Prediction
