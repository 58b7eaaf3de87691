import json
import logging

from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker

from Models import Base
from Models.models import RunRecord

logger = logging.getLogger(__name__)

DATABASE_URL = "sqlite:///./Database/reports.db"


def make_session_factory(url=DATABASE_URL):
    """Engine plus a configured sessionmaker for `url`; tables are created on first use."""
    connect_args = {"check_same_thread": False} if url.startswith("sqlite") else {}
    engine = create_engine(url, connect_args=connect_args)
    create_tables(engine)
    SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=engine)
    return engine, SessionLocal


def create_tables(engine):
    Base.metadata.create_all(bind=engine)


def store_reports(session, reports):
    """Insert one row per RunReport and commit. Returns the number stored."""
    rows = [
        RunRecord(
            instance_id=report.instance_id,
            graph6=report.graph6,
            pattern=report.pattern,
            outcome=report.outcome,
            certificate_path=report.certificate_path,
            max_bag=report.max_bag,
            passed=report.passed,
            error=report.error,
            verdicts=json.dumps([v.model_dump() for v in report.verdicts]),
            oracle=json.dumps([c.model_dump() for c in report.oracle]),
            elapsed_ms=report.elapsed_ms,
        )
        for report in reports
    ]
    session.add_all(rows)
    session.commit()
    logger.info("stored %d run reports", len(rows))
    return len(rows)


# Dependency for getting the database session
def get_reports_db(url=DATABASE_URL):
    _, SessionLocal = make_session_factory(url)
    db = SessionLocal()
    try:
        yield db
    finally:
        db.close()
