"""
Experiment Engine Module
========================

Runs scenarios and writes their result records. Every record carries the
convention-ledger hash; files are written through a temporary file and an
atomic rename so a crashed run never leaves a half-written result.
"""

import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor

from ..conventions import LEDGER_VERSION, ledger_hash
from ..data.processor import ResultProcessor
from ..utils.helpers import atomic_write_text, get_current_time, to_jsonable
from .scenarios import get_scenario


logger = logging.getLogger(__name__)


class ExperimentEngine:
    """
    A runner for configured scenarios
    """

    def __init__(self, out_dir="results", output_format="json"):
        """
        Initialize the experiment engine

        Args:
            out_dir (str): Directory for result files
            output_format (str): 'json', or 'csv' to also write a CSV body
        """
        self.out_dir = out_dir
        self.output_format = output_format
        self.processor = ResultProcessor()
        self.records = []

    def build_record(self, name, config, result):
        """
        Assemble the JSON result record of a finished scenario

        Args:
            name (str): Scenario name
            config (dict): Configuration the scenario ran with
            result (ScenarioResult): Scenario output

        Returns:
            dict: JSON-ready record
        """
        return to_jsonable({
            "scenario": name,
            "ledger_hash": ledger_hash(),
            "ledger_version": LEDGER_VERSION,
            "created": get_current_time(),
            "params": dict(sorted(config.items())),
            "passed": result.passed,
            "checks": result.checks,
            "rows": result.rows,
            "headline": result.headline,
            "metadata": result.metadata,
            "spectral": result.spectral,
        })

    def run_scenario(self, config):
        """
        Run the scenario named in a configuration and write its outputs

        Args:
            config (dict): Merged, validated configuration

        Returns:
            dict: The result record
        """
        name = config["scenario"]
        result = get_scenario(name, config).run()
        record = self.build_record(name, config, result)
        self.write_record(record, result.columns)
        self.records.append(record)
        logger.info("Scenario %s finished: %s", name, "passed" if record["passed"] else "FAILED")
        return record

    def write_record(self, record, columns=None):
        """
        Write <scenario>.json and, for CSV output, <scenario>.csv

        Args:
            record (dict): Result record
            columns (list): CSV column order

        Returns:
            list: Paths written
        """
        base = os.path.join(self.out_dir, record["scenario"])
        paths = [base + ".json"]
        atomic_write_text(paths[0], json.dumps(record, indent=2, sort_keys=True) + "\n")
        if self.output_format == "csv":
            frame = self.processor.rows_frame(record["rows"], columns)
            header = f"ledger={record['ledger_hash']} created={record['created']}"
            paths.append(base + ".csv")
            atomic_write_text(paths[1], self.processor.csv_text(frame, header))
        return paths

    def run_many(self, configs, threads=1):
        """
        Run several independent scenarios

        Args:
            configs (list): Merged configurations, one per scenario
            threads (int): Scenarios run concurrently

        Returns:
            list: Result records in the order of configs
        """
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                return list(pool.map(self.run_scenario, configs))
        return [self.run_scenario(config) for config in configs]

    def get_results(self):
        """
        Summary of the runs so far

        Returns:
            dict: Counts and per-scenario pass flags
        """
        return {
            "runs": len(self.records),
            "passed": sum(1 for record in self.records if record["passed"]),
            "scenarios": {record["scenario"]: record["passed"] for record in self.records},
        }
