from .config import RunConfig, load_config, parse_config
from .plots import PlotFamily, padded_limits, plot
from .tables import metric_table, render_run_report, select, tradeoff_table
