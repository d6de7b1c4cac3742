"""
Database Connector Module
=========================

This module manages the connection to the run archive and stores result
records in it.
"""

import json
import logging
from datetime import datetime

from sqlalchemy import create_engine, text
from sqlalchemy.orm import sessionmaker

from .models import Base, ResultRow, ScenarioRun


logger = logging.getLogger(__name__)


class DatabaseConnector:
    """
    A class to manage database connections
    """

    def __init__(self, db_url='sqlite:///temporal_gauge_runs.db'):
        """
        Initialize the DatabaseConnector

        Args:
            db_url (str): Database connection URL
        """
        self.db_url = db_url
        self.engine = None
        self.Session = None
        self.connect()

    def connect(self):
        """
        Establish database connection

        Returns:
            bool: True if connection successful, False otherwise
        """
        try:
            self.engine = create_engine(self.db_url)
            self.Session = sessionmaker(bind=self.engine)
            with self.engine.connect() as conn:
                conn.execute(text("SELECT 1"))
            return True
        except Exception as e:
            logger.error("Failed to connect to database %s: %s", self.db_url, e)
            self.Session = None
            return False

    def get_session(self):
        """
        Get a database session

        Returns:
            Session: Database session object
        """
        if self.Session is None:
            raise ConnectionError("Database not connected")
        return self.Session()

    def close(self):
        """
        Close database connection
        """
        if self.engine:
            self.engine.dispose()

    def initialize_database(self):
        """
        Initialize database tables
        """
        try:
            Base.metadata.create_all(self.engine)
            return True
        except Exception as e:
            logger.error("Failed to initialize database: %s", e)
            return False

    def archive_records(self, records):
        """
        Store result records and their numeric rows

        Args:
            records (list): Result records as loaded by ResultProcessor

        Returns:
            int: Number of runs stored
        """
        session = self.get_session()
        try:
            for record in records:
                checks = record["checks"]
                run = ScenarioRun(
                    scenario=record["scenario"],
                    source=record.get("_source", ""),
                    ledger_hash=record["ledger_hash"],
                    created=_parse_time(record.get("created")),
                    passed=bool(record["passed"]),
                    checks_passed=sum(1 for c in checks if c.get("passed")),
                    checks_total=len(checks),
                    params=json.dumps(record.get("params", {}), sort_keys=True),
                )
                for i, row in enumerate(record["rows"]):
                    run.rows.append(_row_model(i, row))
                session.add(run)
            session.commit()
            return len(records)
        except Exception:
            session.rollback()
            raise
        finally:
            session.close()


def _parse_time(value):
    try:
        return datetime.strptime(value, '%Y-%m-%d %H:%M:%S')
    except (TypeError, ValueError):
        return datetime.now()


def _number(row, key):
    value = row.get(key)
    return float(value) if isinstance(value, (int, float)) and not isinstance(value, bool) else None


def _row_model(index, row):
    return ResultRow(
        label=str(row.get("label", row.get("name", row.get("scenario", index)))),
        value_re=_number(row, "value_re") if "value_re" in row else _number(row, "estimate_re"),
        value_im=_number(row, "value_im") if "value_im" in row else _number(row, "estimate_im"),
        expected_re=_number(row, "expected_re") if "expected_re" in row else _number(row, "analytic_re"),
        expected_im=_number(row, "expected_im") if "expected_im" in row else _number(row, "analytic_im"),
        deviation=_number(row, "error") if "error" in row else _number(row, "sigmas"),
    )


def get_connector(db_url='sqlite:///temporal_gauge_runs.db'):
    """
    Get a database connector instance

    Returns:
        DatabaseConnector: Database connector instance
    """
    return DatabaseConnector(db_url)
