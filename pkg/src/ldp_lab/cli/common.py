"""Shared plumbing for experiment commands: output paths, exit codes, run records."""

import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Optional

import typer
from rich import print as rprint
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from ldp_lab.core.config import get_settings
from ldp_lab.core.exceptions import ArgumentError, DomainError, LdpLabError
from ldp_lab.storage.report_writer import ExperimentReport, Row, format_value, write_csv, write_json

logger = logging.getLogger(__name__)

EXIT_ARGUMENT = 2
EXIT_NUMERICAL = 3
PREVIEW_ROWS = 12


def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def resolve_threads(threads: Optional[int]) -> int:
    """--threads, else LDP_LAB_THREADS, else 1."""
    value = threads if threads is not None else get_settings().threads
    if value < 1:
        rprint(f"[red]--threads must be >= 1, got {value}[/red]")
        raise typer.Exit(EXIT_ARGUMENT)
    return value


def parse_floats(text: str, name: str) -> list[float]:
    """Comma-separated list option."""
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        rprint(f"[red]{name} must be a comma-separated list of numbers, got {text!r}[/red]")
        raise typer.Exit(EXIT_ARGUMENT)


@contextmanager
def exit_codes(experiment: str, params: Optional[dict] = None, seed: int = 0):
    """Map library errors to exit 2 (arguments) or 3 (numerical failures).

    Failed runs are recorded with the same seed and params a successful run
    would carry, so they can be re-run exactly.
    """
    params = params or {}
    try:
        yield
    except (ArgumentError, DomainError) as e:
        rprint(f"[red]{experiment}: {e}[/red]")
        _record(experiment, seed, params, None, None, 0, EXIT_ARGUMENT)
        raise typer.Exit(EXIT_ARGUMENT)
    except LdpLabError as e:
        rprint(f"[red]{experiment}: {type(e).__name__}: {e}[/red]")
        _record(experiment, seed, params, None, None, 0, EXIT_NUMERICAL)
        raise typer.Exit(EXIT_NUMERICAL)


def _record(experiment, seed, params, csv_path, json_path, row_count, exit_code) -> None:
    settings = get_settings()
    if not settings.record_runs:
        return
    try:
        from ldp_lab.storage.db_manager import DatabaseManager

        settings.ensure_dirs()
        DatabaseManager().record_run(
            experiment=experiment,
            seed=seed,
            params=params,
            csv_path=str(csv_path or ""),
            json_path=str(json_path or ""),
            row_count=row_count,
            exit_code=exit_code,
        )
    except Exception as e:
        logger.warning("could not record run: %s", e)


def emit(
    experiment: str,
    params: dict,
    seed: int,
    rows: list[Row],
    columns: list[str],
    out: Optional[Path],
    json_report: bool,
    exit_code: int = 0,
) -> Path:
    """Write the CSV (and JSON) report, record the run and print a preview."""
    csv_path = Path(out) if out else get_settings().output_dir / f"{experiment}.csv"
    write_csv(rows, columns, csv_path)
    json_path = None
    if json_report:
        json_path = write_json(
            ExperimentReport.build(experiment, params, seed, rows, columns),
            csv_path.with_suffix(".json"),
        )
    _record(experiment, seed, params, csv_path, json_path, len(rows), exit_code)

    table = Table(title=experiment)
    for col in columns:
        table.add_column(col)
    for row in rows[:PREVIEW_ROWS]:
        table.add_row(*(format_value(row.get(col, "")) for col in columns))
    if len(rows) > PREVIEW_ROWS:
        table.caption = f"... {len(rows) - PREVIEW_ROWS} more rows"
    rprint(table)
    rprint(f"[green]✓[/green] {len(rows)} rows written to [bold]{csv_path}[/bold]")
    if json_path:
        rprint(f"[green]✓[/green] report written to [bold]{json_path}[/bold]")
    return csv_path


def out_option():
    return typer.Option(None, "--out", "-o", help="CSV path (default: <output_dir>/<command>.csv)")


def json_option():
    return typer.Option(False, "--json", help="Also write a JSON report next to the CSV")


def seed_option():
    return typer.Option(0, "--seed", help="64-bit master seed")


def threads_option():
    return typer.Option(None, "--threads", help="Worker threads (env LDP_LAB_THREADS)")
