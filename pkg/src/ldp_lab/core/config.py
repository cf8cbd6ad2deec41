"""Application configuration via pydantic-settings."""

from pathlib import Path
from typing import Optional

import yaml
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="LDP_LAB_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Worker threads for Monte Carlo and multi-start branches (LDP_LAB_THREADS)
    threads: int = Field(default=1, ge=1)

    # Local data directory (SQLite run registry)
    lab_dir: Path = Field(default_factory=lambda: Path.home() / ".ldp-lab")

    # Where CSV/JSON reports go when --out is not given
    output_dir: Path = Field(default_factory=lambda: Path.cwd() / "ldp-output")

    # Record every CLI experiment in the run registry
    record_runs: bool = True

    # Optional YAML file overriding the numeric_phi optimizer defaults
    optimizer_config: Optional[Path] = None

    @property
    def db_path(self) -> Path:
        return self.lab_dir / "data" / "runs.db"

    @property
    def db_url(self) -> str:
        return f"sqlite:///{self.db_path}"

    @property
    def optimizer_config_path(self) -> Path:
        return self.optimizer_config or self.lab_dir / "optimizer.yaml"

    def load_optimizer_overrides(self) -> dict:
        """Load optimizer overrides from YAML.

        Returns empty dict if the file doesn't exist.
        """
        if not self.optimizer_config_path.exists():
            return {}
        with open(self.optimizer_config_path) as f:
            data = yaml.safe_load(f)
        return data if isinstance(data, dict) else {}

    def ensure_dirs(self) -> None:
        """Create all required directories."""
        self.lab_dir.mkdir(parents=True, exist_ok=True)
        self.db_path.parent.mkdir(parents=True, exist_ok=True)
        self.output_dir.mkdir(parents=True, exist_ok=True)


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get cached settings instance."""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings
