"""
Database Models Module
======================

ORM models for the optional run archive written by ``report --archive``.
"""

from sqlalchemy import Boolean, Column, DateTime, Float, ForeignKey, Index, Integer, String, Text
from sqlalchemy.orm import declarative_base, relationship


Base = declarative_base()


class ScenarioRun(Base):
    """
    Model representing one scenario run
    """
    __tablename__ = 'scenario_runs'

    id = Column(Integer, primary_key=True)
    scenario = Column(String(40), nullable=False)
    source = Column(String(255), nullable=False)
    ledger_hash = Column(String(64), nullable=False)
    created = Column(DateTime, nullable=False)
    passed = Column(Boolean, nullable=False)
    checks_passed = Column(Integer, nullable=False)
    checks_total = Column(Integer, nullable=False)
    params = Column(Text)

    rows = relationship("ResultRow", back_populates="run", cascade="all, delete-orphan")

    __table_args__ = (Index('idx_scenario_runs_scenario_created', 'scenario', 'created'),)

    def __repr__(self):
        return f"<ScenarioRun(scenario='{self.scenario}', passed={self.passed}, source='{self.source}')>"


class ResultRow(Base):
    """
    Model representing one numeric row of a run (estimate, analytic value, deviation)
    """
    __tablename__ = 'result_rows'

    id = Column(Integer, primary_key=True)
    run_id = Column(Integer, ForeignKey('scenario_runs.id'), nullable=False)
    label = Column(String(100), nullable=False)
    value_re = Column(Float)
    value_im = Column(Float)
    expected_re = Column(Float)
    expected_im = Column(Float)
    deviation = Column(Float)

    run = relationship("ScenarioRun", back_populates="rows")

    __table_args__ = (Index('idx_result_rows_run_label', 'run_id', 'label'),)

    def __repr__(self):
        return f"<ResultRow(label='{self.label}', value_re={self.value_re}, value_im={self.value_im})>"
