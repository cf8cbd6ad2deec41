"""Run registry commands - list and show recorded experiments."""

import json
from typing import Optional

import typer
from rich import print as rprint
from rich.panel import Panel
from rich.table import Table

from ldp_lab.core.config import get_settings
from ldp_lab.storage.db_manager import DatabaseManager

app = typer.Typer()


@app.command("list")
def list_runs(
    experiment: Optional[str] = typer.Option(None, "--experiment", "-e", help="Filter by command name"),
    limit: int = typer.Option(20, "--limit", "-n", help="Maximum number of runs to show"),
):
    """Show the most recent recorded runs."""
    settings = get_settings()
    settings.ensure_dirs()
    db = DatabaseManager()

    runs = db.list_runs(experiment=experiment, limit=limit)
    if not runs:
        rprint("[yellow]No runs recorded yet.[/yellow]")
        return

    table = Table(title=f"Recorded runs ({db.get_run_count()} total)")
    table.add_column("ID", style="bold")
    table.add_column("Experiment")
    table.add_column("Seed")
    table.add_column("Rows")
    table.add_column("Exit")
    table.add_column("When")
    table.add_column("CSV", style="dim")

    for run in runs:
        exit_style = "green" if run.exit_code == 0 else "red"
        table.add_row(
            str(run.id),
            run.experiment,
            str(run.seed),
            str(run.row_count),
            f"[{exit_style}]{run.exit_code}[/{exit_style}]",
            run.created_at.strftime("%Y-%m-%d %H:%M") if run.created_at else "",
            run.csv_path or "",
        )

    rprint(table)


@app.command()
def show(run_id: int = typer.Argument(..., help="Run ID from 'runs list'")):
    """Show the parameters and outputs of one run."""
    settings = get_settings()
    settings.ensure_dirs()
    run = DatabaseManager().get_run(run_id)
    if run is None:
        rprint(f"[red]No run with ID {run_id}[/red]")
        raise typer.Exit(1)

    params = json.dumps(json.loads(run.params_json), indent=2, sort_keys=True)
    rprint(Panel.fit(
        f"[bold]{run.experiment}[/bold]  seed={run.seed}  exit={run.exit_code}\n\n"
        f"{params}\n\n"
        f"CSV:  {run.csv_path or '-'}\n"
        f"JSON: {run.json_path or '-'}\n"
        f"Rows: {run.row_count}",
        title=f"Run {run.id}",
        border_style="blue",
    ))
