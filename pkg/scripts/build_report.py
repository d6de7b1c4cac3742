"""
Build Report Script
===================

Summarizes a results directory and optionally archives the records in a SQL
database.
"""

import sys
import os

# Add the project root to the path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from temporal_gauge_lab.cli import main


if __name__ == "__main__":
    import argparse

    # Parse command line arguments
    parser = argparse.ArgumentParser(description="Summarize scenario results")
    parser.add_argument("results_dir", nargs="?", default="results", help="Results directory")
    parser.add_argument("--format", choices=("md", "csv"), default="md", help="Summary format")
    parser.add_argument("--archive", help="SQLAlchemy URL of the archive database")
    args = parser.parse_args()

    argv = ["report", args.results_dir, "--format", args.format]
    if args.archive:
        argv += ["--archive", args.archive]
    sys.exit(main(argv))
