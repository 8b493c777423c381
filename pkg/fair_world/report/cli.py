import argparse
import glob
import logging
import os
import sys
from typing import Any, Dict, List, Optional

import shortuuid

from .. import __version__
from ..exceptions import ConfigError, EmptySelectionError, IngestionError, RunNotFoundError
from ..ingestion.cache import CACHE_SUFFIX, cache_path, read_cache, write_cache
from ..ingestion.oulad import load_oulad
from ..ingestion.recipes import OULAD_SOCIAL, OULAD_STEM, STUDENT_BALANCED
from ..ingestion.student import load_student, make_student_balanced
from ..ingestion.summary import summarize, summary_table
from ..ingestion.synthetic import make_synthetic
from ..ingestion.variants import make_complex_variant
from ..pipeline.aggregate import aggregate
from ..pipeline.dump import dump_biased_views
from ..pipeline.runner import ExperimentRunner, run_metadata
from ..seeds import derive_seed
from ..storage.csv_codec import parse_aggregates
from ..storage.file_store import AGGREGATES_FILE, METADATA_FILE, FileRecordStore
from ..storage.store_factory import RecordStoreFactory
from .config import load_config
from .plots import PlotFamily, plot
from .tables import render_run_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_EMPTY_SELECTION = 1
EXIT_CONFIG = 2
EXIT_MISSING_INPUT = 3

SUMMARY_FILE = 'summary.csv'
REPORT_FILE = 'report.txt'
DEFAULT_CONFIG = os.environ.get("FAIRWORLD_CONFIG", "config/config.yaml")


def cmd_ingest(args: argparse.Namespace) -> int:
    """Build dataset caches from the public source files and print their summary table."""
    if not (args.student or args.oulad or args.synthetic):
        raise ConfigError("ingest needs at least one of --student, --oulad or --synthetic")

    datasets = []
    if args.student:
        student = load_student(args.student)
        balanced = make_student_balanced(student, derive_seed(args.seed, STUDENT_BALANCED.name))
        datasets += [student, balanced]
    if args.oulad:
        for recipe in (OULAD_STEM, OULAD_SOCIAL):
            oulad = load_oulad(args.oulad, recipe.module_code)
            datasets += [oulad, make_complex_variant(oulad)]
    if args.synthetic:
        datasets.append(make_synthetic(n=args.synthetic, seed=args.seed))

    os.makedirs(args.out, exist_ok=True)
    for dataset in datasets:
        write_cache(dataset, cache_path(args.out, dataset.name))
    table = summary_table([summarize(dataset) for dataset in datasets])
    with open(os.path.join(args.out, SUMMARY_FILE), 'w') as f:
        f.write(table)
    sys.stdout.write(table)
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    """Run the experiment matrix of every configured dataset and store the results."""
    config = load_config(args.config).with_overrides(seed=args.seed, output_dir=args.out, jobs=args.jobs)
    run_id = args.run_id or shortuuid.uuid()
    store = RecordStoreFactory.from_config(config.store_config())

    records, aggregates, audit = [], [], []
    metadata: Dict[str, Any] = {
        'run_id': run_id,
        'version': __version__,
        'seed': config.seed,
        'learner': config.learner.value,
        'config': config.model_dump(mode='json'),
        'datasets': [],
    }
    for name in config.datasets:
        dataset = read_cache(cache_path(config.cache_dir, name))
        plan = config.plan_for(dataset)
        runner = ExperimentRunner(plan)
        dataset_records = runner.run()
        records += dataset_records
        aggregates += aggregate(dataset_records)
        audit += runner.audit
        metadata['datasets'].append(run_metadata(plan))
        if args.dump_views:
            dump_biased_views(plan, os.path.join(config.output_dir, run_id, 'views'))

    failed = sum(a.failed for a in aggregates)
    store.save_run(run_id, records, aggregates, metadata, audit)
    if isinstance(store, FileRecordStore):
        with open(os.path.join(store.run_path(run_id), REPORT_FILE), 'w') as f:
            f.write(render_run_report(run_id, aggregates, metadata))
    logger.info("Run %s: %d records, %d aggregates, %d failed", run_id, len(records), len(aggregates), failed)
    sys.stdout.write(f"{run_id}\n")
    return EXIT_OK


def _run_directory(path: str) -> str:
    directory = path if os.path.isdir(path) else os.path.dirname(path)
    if not os.path.exists(os.path.join(directory, AGGREGATES_FILE)):
        raise RunNotFoundError(f"No {AGGREGATES_FILE} found for {path}")
    return directory


def cmd_plot(args: argparse.Namespace) -> int:
    """Draw one figure family from a run's aggregates file."""
    directory = _run_directory(args.run)
    aggregates = parse_aggregates(os.path.join(directory, AGGREGATES_FILE))
    out = args.out or os.path.join(directory, 'plots')
    paths = plot(aggregates, PlotFamily(args.family), out, args.metric, dataset=args.dataset, kind=args.kind)
    sys.stdout.write("".join(f"{path}\n" for path in paths))
    return EXIT_OK


def cmd_summarize(args: argparse.Namespace) -> int:
    """Print the summary table of cached datasets, or the text report of a run."""
    if args.run:
        directory = _run_directory(args.run)
        store = FileRecordStore(os.path.dirname(os.path.abspath(directory)))
        run_id = os.path.basename(os.path.abspath(directory))
        metadata = store.load_metadata(run_id) if os.path.exists(os.path.join(directory, METADATA_FILE)) else {}
        sys.stdout.write(render_run_report(run_id, store.load_aggregates(run_id), metadata))
        return EXIT_OK

    paths = sorted(glob.glob(os.path.join(args.cache, f"*{CACHE_SUFFIX}")))
    if not paths:
        raise IngestionError(f"No dataset caches in {args.cache}", path=args.cache)
    sys.stdout.write(summary_table([summarize(read_cache(path)) for path in paths]))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='fairworld', description="Bias injection and mitigation experiments.")
    parser.add_argument('--log-level', default='INFO', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    commands = parser.add_subparsers(dest='command', required=True)

    ingest = commands.add_parser('ingest', help="Build dataset caches")
    ingest.add_argument('--student', help="Student performance CSV (student-por.csv)")
    ingest.add_argument('--oulad', help="Directory holding the OULAD CSVs")
    ingest.add_argument('--synthetic', type=int, metavar='ROWS', help="Also generate a synthetic dataset")
    ingest.add_argument('--out', default='cache', help="Cache directory")
    ingest.add_argument('--seed', type=int, default=0)
    ingest.set_defaults(handler=cmd_ingest)

    run = commands.add_parser('run', help="Run the configured experiments")
    run.add_argument('--config', default=DEFAULT_CONFIG)
    run.add_argument('--seed', type=int)
    run.add_argument('--out', help="Output directory, overriding output_dir")
    run.add_argument('--jobs', type=int)
    run.add_argument('--run-id', help="Run identifier, generated when omitted")
    run.add_argument('--dump-views', action='store_true', help="Also write every biased view and removal manifest")
    run.set_defaults(handler=cmd_run)

    plot_cmd = commands.add_parser('plot', help="Draw figures from a run")
    plot_cmd.add_argument('run', help="Run directory or its aggregates CSV")
    plot_cmd.add_argument('--family', required=True, choices=[f.value for f in PlotFamily])
    plot_cmd.add_argument('--out', help="Plot directory, <run>/plots by default")
    plot_cmd.add_argument('--dataset')
    plot_cmd.add_argument('--kind')
    plot_cmd.add_argument('--metric', action='append', help="Metric to draw, repeatable; all by default")
    plot_cmd.set_defaults(handler=cmd_plot)

    summary = commands.add_parser('summarize', help="Summarize cached datasets or a run")
    summary.add_argument('--cache', default='cache')
    summary.add_argument('--run', help="Run directory to report on instead")
    summary.set_defaults(handler=cmd_summarize)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level, format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    try:
        return args.handler(args)
    except ConfigError as e:
        logger.error("%s", e)
        return EXIT_CONFIG
    except (IngestionError, RunNotFoundError) as e:
        logger.error("%s", e)
        return EXIT_MISSING_INPUT
    except EmptySelectionError as e:
        logger.error("%s", e)
        return EXIT_EMPTY_SELECTION


if __name__ == '__main__':
    sys.exit(main())
