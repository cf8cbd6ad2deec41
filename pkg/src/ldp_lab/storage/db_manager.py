"""SQLite run registry for CLI experiments."""

import json
from contextlib import contextmanager
from typing import Optional

from sqlalchemy import func, select
from sqlalchemy.orm import sessionmaker

from ldp_lab.core.config import get_settings
from ldp_lab.core.database import ExperimentRun, create_tables, get_engine


class DatabaseManager:
    def __init__(self, db_url: Optional[str] = None):
        self.db_url = db_url or get_settings().db_url
        create_tables(self.db_url)
        # expire_on_commit=False so returned runs stay usable after the
        # session closes.
        self._sessionmaker = sessionmaker(
            bind=get_engine(self.db_url), expire_on_commit=False
        )

    @contextmanager
    def _session(self):
        session = self._sessionmaker()
        try:
            yield session
            session.commit()
        except Exception:
            session.rollback()
            raise
        finally:
            session.close()

    def record_run(
        self,
        experiment: str,
        seed: int,
        params: dict,
        csv_path: str = "",
        json_path: str = "",
        row_count: int = 0,
        exit_code: int = 0,
    ) -> ExperimentRun:
        """Insert a run record."""
        with self._session() as session:
            run = ExperimentRun(
                experiment=experiment,
                seed=seed,
                params_json=json.dumps(params, sort_keys=True, default=str),
                csv_path=csv_path,
                json_path=json_path,
                row_count=row_count,
                exit_code=exit_code,
            )
            session.add(run)
            return run

    def get_run(self, run_id: int) -> Optional[ExperimentRun]:
        with self._session() as session:
            return session.get(ExperimentRun, run_id)

    def list_runs(self, experiment: Optional[str] = None, limit: int = 20) -> list[ExperimentRun]:
        """Most recent runs first."""
        with self._session() as session:
            query = select(ExperimentRun).order_by(ExperimentRun.id.desc()).limit(limit)
            if experiment:
                query = query.where(ExperimentRun.experiment == experiment)
            return list(session.execute(query).scalars())

    def get_run_count(self) -> int:
        with self._session() as session:
            return session.execute(select(func.count(ExperimentRun.id))).scalar() or 0
