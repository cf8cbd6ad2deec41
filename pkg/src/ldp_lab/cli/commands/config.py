"""Configuration commands."""

import typer
from rich import print as rprint
from rich.table import Table

from ldp_lab.core.config import get_settings
from ldp_lab.storage.db_manager import DatabaseManager

app = typer.Typer()


@app.command()
def show():
    """Show current configuration."""
    settings = get_settings()

    table = Table(title="ldp-lab Configuration")
    table.add_column("Setting", style="bold")
    table.add_column("Value")

    table.add_row("Threads", str(settings.threads))
    table.add_row("Lab Dir", str(settings.lab_dir))
    table.add_row("Output Dir", str(settings.output_dir))
    table.add_row("Database", str(settings.db_path))
    table.add_row("Record Runs", "yes" if settings.record_runs else "no")
    optimizer = settings.optimizer_config_path
    table.add_row(
        "Optimizer Config",
        f"{optimizer}" if optimizer.exists() else f"[yellow]{optimizer} (defaults)[/yellow]",
    )

    try:
        settings.ensure_dirs()
        table.add_row("Recorded Runs", str(DatabaseManager().get_run_count()))
    except Exception:
        pass

    rprint(table)
