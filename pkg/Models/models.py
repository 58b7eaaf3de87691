from datetime import datetime

from sqlalchemy import Boolean, Column, DateTime, Float, Index, Integer, String, Text

from . import Base


class RunRecord(Base):
    __tablename__ = "run_reports"

    id = Column(Integer, primary_key=True, index=True)

    # Instance
    instance_id = Column(String, index=True)
    graph6 = Column(String)
    pattern = Column(String, index=True)

    # Outcome
    outcome = Column(String)
    certificate_path = Column(String, nullable=True)
    max_bag = Column(Integer, nullable=True)
    passed = Column(Boolean, index=True)
    error = Column(Text, nullable=True)

    # JSON-encoded verdicts and oracle comparisons
    verdicts = Column(Text)
    oracle = Column(Text)

    elapsed_ms = Column(Float, nullable=True)
    created_at = Column(DateTime, default=datetime.now)

    __table_args__ = (
        Index("idx_instance_pattern", "instance_id", "pattern"),
    )
