"""CSV tables and JSON reports for experiment runs."""

import math
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from ldp_lab import __version__

UTC = timezone.utc

Row = dict[str, float | int | str | bool]


class ExperimentReport(BaseModel):
    """One experiment: parameters, seed, output rows and tool metadata."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    experiment: str
    params: dict[str, Any]
    seed: int
    rows: list[Row]
    meta: dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def build(cls, experiment: str, params: dict, seed: int, rows: list[Row], columns: list[str]):
        meta = {
            "version": __version__,
            "timestamp": datetime.now(UTC).isoformat(),
            "columns": columns,
        }
        return cls(experiment=experiment, params=params, seed=seed, rows=rows, meta=meta)


def format_value(value) -> str:
    """17 significant digits; inf, -inf and nan spelled out."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, ".17g")
    return str(value)


def write_csv(rows: list[Row], columns: list[str], path: Path) -> Path:
    """Header line then one line per row, UTF-8 with LF endings."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(format_value(row.get(col, "")) for col in columns))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return path


def write_json(report: ExperimentReport, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8", newline="\n")
    return path
