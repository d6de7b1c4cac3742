"""
Result Processor Module
=======================

Tabulates scenario results with pandas: CSV bodies for single runs and the
summary, spectral-support and correlation-series tables of a report.
"""

import glob
import json
import os

import numpy as np
import pandas as pd

from ..exceptions import ResultFormatError
from .fixtures import series_from_dict, verdict_from_dict


REQUIRED_KEYS = ("scenario", "ledger_hash", "passed", "checks", "rows")


class ResultProcessor:
    """
    A class to turn result records into tables
    """

    def __init__(self, float_format="%.17g"):
        """
        Initialize the ResultProcessor

        Args:
            float_format (str): Format for floats in CSV output; the default
                round-trips doubles exactly
        """
        self.float_format = float_format

    def rows_frame(self, rows, columns=None):
        """
        Build a DataFrame from row dictionaries

        Args:
            rows (list): Row dictionaries
            columns (list): Column order (default: order of first appearance)

        Returns:
            pd.DataFrame: The table
        """
        frame = pd.DataFrame(list(rows))
        if columns is not None:
            frame = frame.reindex(columns=list(columns))
        return frame

    def csv_text(self, frame, header=None):
        """
        CSV body with an optional leading '# ...' comment line

        Args:
            frame (pd.DataFrame): Table
            header (str): Comment text without the leading '#'

        Returns:
            str: CSV text
        """
        body = frame.to_csv(index=False, float_format=self.float_format, lineterminator="\n")
        return (f"# {header}\n" if header else "") + body

    def load_records(self, results_dir):
        """
        Read every *.json result record in a directory

        Args:
            results_dir (str): Directory of run outputs

        Returns:
            list: Records sorted by file name

        Raises:
            ResultFormatError: If a file is not valid JSON or lacks required keys
        """
        if not os.path.isdir(results_dir):
            raise ResultFormatError(f"Results directory {results_dir} does not exist")
        records = []
        for path in sorted(glob.glob(os.path.join(results_dir, "*.json"))):
            try:
                with open(path, "r", encoding="utf-8") as fh:
                    record = json.load(fh)
            except json.JSONDecodeError as e:
                raise ResultFormatError(f"{path}: not valid JSON ({e.msg})") from e
            if not isinstance(record, dict):
                raise ResultFormatError(f"{path}: result record must be a JSON object")
            missing = [key for key in REQUIRED_KEYS if key not in record]
            if missing:
                raise ResultFormatError(f"{path}: missing keys {missing}")
            record["_source"] = os.path.basename(path)
            records.append(record)
        return records

    def summary_frame(self, records):
        """One row per run: scenario, pass/fail and headline numbers"""
        rows = []
        for record in records:
            checks = record["checks"]
            headline = record.get("headline", {})
            rows.append({
                "source": record.get("_source", ""),
                "scenario": record["scenario"],
                "status": "PASS" if record["passed"] else "FAIL",
                "checks_passed": sum(1 for c in checks if c.get("passed")),
                "checks_total": len(checks),
                "key_numbers": "; ".join(f"{k}={_short(v)}" for k, v in headline.items()),
            })
        columns = ["source", "scenario", "status", "checks_passed", "checks_total", "key_numbers"]
        return self.rows_frame(rows, columns)

    def summary_markdown(self, frame):
        """Render the summary table as GitHub-style markdown"""
        lines = ["# Scenario summary", ""]
        if frame.empty:
            lines.append("No results found.")
            return "\n".join(lines) + "\n"
        columns = list(frame.columns)
        lines.append("| " + " | ".join(columns) + " |")
        lines.append("|" + "|".join("---" for _ in columns) + "|")
        for _, row in frame.iterrows():
            lines.append("| " + " | ".join(str(row[c]) for c in columns) + " |")
        return "\n".join(lines) + "\n"

    def spectral_support_frame(self, records):
        """(scenario, omega, weight, order) rows for every recorded verdict"""
        rows = []
        for record in records:
            spectral = record.get("spectral")
            if not spectral:
                continue
            verdict = verdict_from_dict(spectral["verdict"])
            for omega, weight, order in verdict.support:
                rows.append({"scenario": record["scenario"], "source": record.get("_source", ""),
                             "omega": omega, "weight": weight, "order": order})
        return self.rows_frame(rows, ["scenario", "source", "omega", "weight", "order"])

    def correlation_series_frame(self, records, t_values=None):
        """
        Plot-ready samples of every recorded exact correlation series

        Args:
            records (list): Result records
            t_values (array-like): Times (default: 201 points on [0, 20])

        Returns:
            pd.DataFrame: Columns scenario, source, t, re, im
        """
        t_values = np.linspace(0.0, 20.0, 201) if t_values is None else np.asarray(t_values)
        rows = []
        for record in records:
            spectral = record.get("spectral")
            if not spectral or spectral.get("series") is None:
                continue
            values = series_from_dict(spectral["series"]).eval(t_values)
            for t, value in zip(t_values, np.atleast_1d(values)):
                rows.append({"scenario": record["scenario"], "source": record.get("_source", ""),
                             "t": float(t), "re": float(np.real(value)), "im": float(np.imag(value))})
        return self.rows_frame(rows, ["scenario", "source", "t", "re", "im"])


def _short(value):
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, list) and len(value) == 2 and all(isinstance(v, float) for v in value):
        return f"{value[0]:.6g}{value[1]:+.6g}i"
    return str(value)
