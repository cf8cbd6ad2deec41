"""SQLAlchemy models and database setup."""

from datetime import datetime, timezone

from sqlalchemy import Column, DateTime, Integer, String, Text, create_engine
from sqlalchemy.orm import DeclarativeBase

UTC = timezone.utc


class Base(DeclarativeBase):
    pass


class ExperimentRun(Base):
    __tablename__ = "experiment_runs"

    id = Column(Integer, primary_key=True, autoincrement=True)
    experiment = Column(String, nullable=False, index=True)
    seed = Column(Integer, nullable=False, default=0)
    params_json = Column(Text, nullable=False, default="{}")
    csv_path = Column(String, default="")
    json_path = Column(String, default="")
    row_count = Column(Integer, default=0)
    exit_code = Column(Integer, default=0, index=True)
    created_at = Column(DateTime, default=lambda: datetime.now(UTC))

    def __repr__(self) -> str:
        return f"<ExperimentRun {self.experiment} seed={self.seed} exit={self.exit_code}>"


# one engine per database URL
_engines: dict[str, object] = {}


def get_engine(db_url: str):
    engine = _engines.get(db_url)
    if engine is None:
        engine = create_engine(db_url, echo=False)
        _engines[db_url] = engine
    return engine


def create_tables(db_url: str) -> None:
    """Create all tables if they don't exist."""
    Base.metadata.create_all(get_engine(db_url))
