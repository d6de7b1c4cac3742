"""
Command Line Interface
======================

    tglab run --config FILE [--config FILE ...] [--check] [--out DIR] [--seed N] [--threads N]
    tglab <scenario> [same flags]
    tglab report RESULTSDIR [--format md|csv] [--archive DB_URL]

Exit codes: 0 success, 2 configuration error, 3 scenario or result-format
error, 4 failed acceptance checks under --check.
"""

import argparse
import logging
import os
import sys

from .data.processor import ResultProcessor
from .database.connector import get_connector
from .exceptions import ConfigError, TemporalGaugeError
from .experiments.engine import ExperimentEngine
from .utils.config import SCENARIOS, load_config
from .utils.helpers import atomic_write_text


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SCENARIO = 3
EXIT_CHECK = 4


def _add_run_flags(parser):
    parser.add_argument("--config", action="append", default=[], metavar="PATH",
                        help="Config file; repeat to merge, later files win")
    parser.add_argument("--check", action="store_true", help="Exit 4 if any acceptance check fails")
    parser.add_argument("--out", metavar="DIR", help="Output directory (overrides output.dir)")
    parser.add_argument("--seed", type=int, metavar="U64", help="Master seed (overrides mc.seed)")
    parser.add_argument("--threads", type=int, metavar="N", help="Worker threads (overrides mc.threads)")
    parser.add_argument("--fixture", metavar="PATH", help="Input fixture (overrides input.fixture)")
    parser.add_argument("--format", choices=("json", "csv"), help="Output format (overrides output.format)")


def build_parser():
    parser = argparse.ArgumentParser(prog="tglab", description="Temporal-gauge free QED numerical lab")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="More logging (-v info, -vv debug)")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Run the scenario named in the config")
    _add_run_flags(run)
    for name in SCENARIOS:
        _add_run_flags(commands.add_parser(name, help=f"Run the {name} scenario"))

    report = commands.add_parser("report", help="Summarize a directory of results")
    report.add_argument("results_dir", metavar="RESULTSDIR")
    report.add_argument("--format", choices=("md", "csv"), default="md", help="Summary format")
    report.add_argument("--archive", metavar="DB_URL", help="Also store the records in a SQL database")
    return parser


def _configure_logging(verbose, level=None):
    if verbose >= 2:
        level = "DEBUG"
    elif verbose == 1:
        level = "INFO"
    logging.basicConfig(level=getattr(logging, level or "WARNING"),
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    logging.getLogger().setLevel(getattr(logging, level or "WARNING"))


def run_command(args):
    """
    Load configuration, run one scenario and map the outcome to an exit code

    Args:
        args (argparse.Namespace): Parsed arguments

    Returns:
        int: Exit code
    """
    overrides = {
        "output.dir": args.out,
        "mc.seed": args.seed,
        "mc.threads": args.threads,
        "input.fixture": args.fixture,
        "output.format": args.format,
    }
    if args.command != "run":
        overrides["scenario"] = args.command
    try:
        config = load_config(args.config, overrides)
        if config["scenario"] is None:
            raise ConfigError("No scenario given: set 'scenario' in a config file or use a scenario subcommand")
    except ConfigError as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    _configure_logging(args.verbose, config["log.level"])

    engine = ExperimentEngine(config["output.dir"], config["output.format"])
    try:
        record = engine.run_scenario(config)
    except ConfigError as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (TemporalGaugeError, ValueError) as e:
        print(f"Scenario {config['scenario']} failed: {type(e).__name__}: {e}", file=sys.stderr)
        print(f"  input.preset={config['input.preset']} input.fixture={config['input.fixture'] or '-'} "
              f"state={config['state']}", file=sys.stderr)
        return EXIT_SCENARIO

    failed = [check["name"] for check in record["checks"] if not check["passed"]]
    status = "PASS" if not failed else "FAIL"
    print(f"{record['scenario']}: {status} ({len(record['checks']) - len(failed)}/{len(record['checks'])} checks) "
          f"-> {os.path.join(config['output.dir'], record['scenario'])}.json")
    for name in failed:
        print(f"  failed: {name}")
    if args.check and failed:
        return EXIT_CHECK
    return EXIT_OK


def report_command(args):
    """
    Build summary and plot-ready tables from a results directory

    Args:
        args (argparse.Namespace): Parsed arguments

    Returns:
        int: Exit code
    """
    _configure_logging(args.verbose)
    processor = ResultProcessor()
    try:
        records = processor.load_records(args.results_dir)
    except TemporalGaugeError as e:
        print(f"Malformed results: {e}", file=sys.stderr)
        return EXIT_SCENARIO

    summary = processor.summary_frame(records)
    if args.format == "md":
        atomic_write_text(os.path.join(args.results_dir, "summary.md"), processor.summary_markdown(summary))
    else:
        atomic_write_text(os.path.join(args.results_dir, "summary.csv"), processor.csv_text(summary))
    tables = {
        "spectral_support.csv": processor.spectral_support_frame(records),
        "correlation_series.csv": processor.correlation_series_frame(records),
    }
    for filename, frame in tables.items():
        atomic_write_text(os.path.join(args.results_dir, filename), processor.csv_text(frame))
    print(f"Summarized {len(records)} result file(s) in {args.results_dir}")

    if args.archive:
        connector = get_connector(args.archive)
        if not connector.initialize_database():
            print(f"Cannot initialize archive database {args.archive}", file=sys.stderr)
            return EXIT_SCENARIO
        try:
            stored = connector.archive_records(records)
        finally:
            connector.close()
        print(f"Archived {stored} run(s) to {args.archive}")
    return EXIT_OK


def main(argv=None):
    """
    Entry point of the tglab command

    Args:
        argv (list): Arguments without the program name (default: sys.argv[1:])

    Returns:
        int: Exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_CONFIG if e.code else EXIT_OK
    if args.command == "report":
        return report_command(args)
    return run_command(args)


if __name__ == "__main__":
    sys.exit(main())
