"""
Run Scenarios Script
====================

Runs every configuration in a directory (configs/ by default) and writes the
result records into one output directory.
"""

import sys
import os
import glob

# Add the project root to the path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from temporal_gauge_lab.exceptions import ConfigError, TemporalGaugeError
from temporal_gauge_lab.experiments.engine import ExperimentEngine
from temporal_gauge_lab.utils.config import load_config


def load_configs(config_dir, overrides):
    """
    Load all *.cfg files of a directory

    Args:
        config_dir (str): Directory of config files
        overrides (dict): Values applied on top of every file

    Returns:
        list: Merged configurations, sorted by file name
    """
    configs = []
    for path in sorted(glob.glob(os.path.join(config_dir, "*.cfg"))):
        config = load_config([path], overrides)
        if config["scenario"] is None:
            print(f"Skipping {path}: no scenario")
            continue
        configs.append(config)
    return configs


def run_scenarios(config_dir, out_dir, output_format="json", threads=1, seed=None):
    """
    Run the configured scenarios

    Args:
        config_dir (str): Directory of config files
        out_dir (str): Output directory
        output_format (str): 'json' or 'csv'
        threads (int): Scenarios run concurrently
        seed (int): Master seed override

    Returns:
        bool: True if every scenario passed all checks
    """
    configs = load_configs(config_dir, {"output.dir": out_dir, "mc.seed": seed})
    print(f"Running {len(configs)} scenario(s) from {config_dir}")

    engine = ExperimentEngine(out_dir, output_format)
    engine.run_many(configs, threads)

    results = engine.get_results()
    for name, passed in results["scenarios"].items():
        print(f"  {name}: {'PASS' if passed else 'FAIL'}")
    print(f"{results['passed']}/{results['runs']} scenario(s) passed")
    return results["passed"] == results["runs"]


if __name__ == "__main__":
    import argparse

    # Parse command line arguments
    parser = argparse.ArgumentParser(description="Run every configured scenario")
    parser.add_argument("--configs", default=os.path.join(os.path.dirname(__file__), '..', 'configs'),
                        help="Directory of *.cfg files")
    parser.add_argument("--out", default="results", help="Output directory")
    parser.add_argument("--format", choices=("json", "csv"), default="csv", help="Output format")
    parser.add_argument("--threads", type=int, default=1, help="Scenarios run concurrently")
    parser.add_argument("--seed", type=int, help="Master seed override")
    args = parser.parse_args()

    try:
        ok = run_scenarios(args.configs, args.out, args.format, args.threads, args.seed)
    except ConfigError as e:
        print(f"Configuration error: {e}")
        sys.exit(2)
    except (TemporalGaugeError, ValueError) as e:
        print(f"Scenario failed: {e}")
        sys.exit(3)

    if not ok:
        sys.exit(4)
