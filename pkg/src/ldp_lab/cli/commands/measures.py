"""legendre: tabulate log-Laplace transforms and rate functions."""

from pathlib import Path
from typing import Optional

import typer

from ldp_lab.cli.common import EXIT_NUMERICAL, emit, exit_codes, json_option, out_option
from ldp_lab.core.exceptions import ArgumentError

COLUMNS = ["law", "lambda", "point", "log_laplace", "legendre", "duality_gap"]


def app(
    law: str = typer.Option("all", "--law", help="family[:param], or 'all' for the four default laws"),
    lam_min: float = typer.Option(-3.0, "--min", help="Smallest tilt parameter"),
    lam_max: float = typer.Option(3.0, "--max", help="Largest tilt parameter"),
    points: int = typer.Option(25, "--points", help="Grid size"),
    tol: float = typer.Option(1e-9, "--tol", help="Allowed Legendre duality gap, relative to max(1, |Lambda*|)"),
    out: Optional[Path] = out_option(),
    json_report: bool = json_option(),
):
    """Tabulate Lambda and Lambda* along a grid of tilts.

    Each row evaluates the law at lambda, its mean under the tilt
    (point = Lambda'(lambda)) and Lambda*(point). CSV columns: law, lambda,
    point, log_laplace, legendre, duality_gap. Exits 3 when a duality gap
    exceeds --tol.
    """
    import numpy as np

    from ldp_lab.measures.laws import ScalarLaw
    from ldp_lab.measures.transforms import (
        legendre_array,
        log_laplace_array,
        log_laplace_derivative_array,
    )

    params = {"law": law, "min": lam_min, "max": lam_max, "points": points, "tol": tol}
    with exit_codes("legendre", params):
        if points < 2:
            raise ArgumentError(f"--points must be >= 2, got {points}")
        if law == "all":
            laws = [ScalarLaw.parse(name) for name in ("rademacher", "bernoulli:0.3", "uniform", "gaussian")]
        else:
            laws = [ScalarLaw.parse(law)]

        grid = np.linspace(lam_min, lam_max, points)
        rows = []
        worst = 0.0
        for scalar in laws:
            values = log_laplace_array(scalar, grid)
            means = log_laplace_derivative_array(scalar, grid)
            rates = legendre_array(scalar, means)
            gaps = np.abs(rates - (grid * means - values)) / np.maximum(1.0, np.abs(rates))
            worst = max(worst, float(np.max(gaps)))
            for lam, lv, m, r, g in zip(grid, values, means, rates, gaps):
                rows.append({
                    "law": scalar.name,
                    "lambda": float(lam),
                    "point": float(m),
                    "log_laplace": float(lv),
                    "legendre": float(r),
                    "duality_gap": float(g),
                })

    code = EXIT_NUMERICAL if worst > tol else 0
    emit("legendre", params, 0, rows, COLUMNS, out, json_report, exit_code=code)
    if code:
        typer.echo(f"duality gap {worst:.3e} exceeds --tol {tol:g}", err=True)
        raise typer.Exit(code)

