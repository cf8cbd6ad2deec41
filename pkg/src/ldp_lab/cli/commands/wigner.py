"""wigner-rate, wigner-mc and wigner-shift: trace moments of Wigner matrices."""

from pathlib import Path
from typing import Optional

import typer

from ldp_lab.cli.common import (
    EXIT_NUMERICAL,
    emit,
    exit_codes,
    json_option,
    out_option,
    resolve_threads,
    seed_option,
    threads_option,
)

RATE_COLUMNS = ["d", "beta", "t", "rate"]
MC_COLUMNS = ["kind", "d", "t", "value", "std_err", "reference", "rate_est", "ess", "reliable"]
SHIFT_COLUMNS = ["n", "d", "x", "y", "trace_check", "cost", "sharp_rate"]


def rate(
    d: int = typer.Option(4, "--d", help="Trace power d >= 3"),
    beta: int = typer.Option(1, "--beta", help="1 for real, 2 for complex entries"),
    t_min: float = typer.Option(0.0, "--t-min", help="First level"),
    t_max: float = typer.Option(5.0, "--t-max", help="Last level"),
    points: int = typer.Option(11, "--points", help="Number of levels"),
    out: Optional[Path] = out_option(),
    json_report: bool = json_option(),
):
    """Tabulate the rate J_d of (1/n) tr (X/sqrt n)^d at speed n^(1+2/d).

    CSV columns: d, beta, t, rate. The rate is inf below the semicircle
    moment for even d.
    """
    import numpy as np

    from ldp_lab.core.exceptions import ArgumentError
    from ldp_lab.wigner.rates import rate_curve

    params = {"d": d, "beta": beta, "t_min": t_min, "t_max": t_max, "points": points}
    with exit_codes("wigner-rate", params):
        if points < 1 or t_max < t_min:
            raise ArgumentError(f"need points >= 1 and t-max >= t-min, got {points}, [{t_min}, {t_max}]")
        curve = rate_curve(d, beta, np.linspace(t_min, t_max, points).tolist())
    rows = [{"d": d, "beta": beta, "t": t, "rate": v} for t, v in curve.points]
    emit("wigner-rate", params, 0, rows, RATE_COLUMNS, out, json_report)


def mc(
    n: int = typer.Option(50, "--n", help="Matrix size"),
    degrees: Optional[list[int]] = typer.Option(None, "--d", help="Trace power (repeatable)"),
    samples: int = typer.Option(200, "--samples", help="Matrices per moment estimate"),
    law: str = typer.Option("rademacher", "--law", help="Entry law, centered with unit variance"),
    t: Optional[float] = typer.Option(None, "--t", help="Tail level; adds tilted estimates of P(stat >= t)"),
    trials: int = typer.Option(2000, "--trials", help="Importance-sampling trials per tail estimate"),
    seed: int = seed_option(),
    threads: Optional[int] = threads_option(),
    out: Optional[Path] = out_option(),
    json_report: bool = json_option(),
):
    """Monte Carlo moments and tilted tail estimates.

    Moment rows (kind=moment) compare the sample mean of (1/n) tr (X/sqrt n)^d
    with the semicircle moment. Tail rows (kind=tail) hold the importance
    sampling estimate, with the enumerated probability as reference for
    small Rademacher ensembles. CSV columns: kind, d, t, value, std_err,
    reference, rate_est, ess, reliable.
    """
    import math

    from ldp_lab.measures.laws import LawFamily, ScalarLaw
    from ldp_lab.wigner.ensemble import WignerEnsemble, moment_estimates
    from ldp_lab.wigner.rates import semicircle_moment
    from ldp_lab.wigner.tail import MAX_EXACT_ENTRIES, exact_tail_probability, tilted_tail_estimate

    workers = resolve_threads(threads)
    degrees = sorted(set(degrees or [2, 3, 4]))
    params = {"n": n, "d": degrees, "samples": samples, "law": law, "t": t, "trials": trials}
    rows = []
    with exit_codes("wigner-mc", params, seed):
        ensemble = WignerEnsemble(n, ScalarLaw.parse(law))
        for d, (mean, sem) in moment_estimates(ensemble, degrees, samples, seed, threads=workers).items():
            rows.append({
                "kind": "moment", "d": d, "t": math.nan, "value": mean, "std_err": sem,
                "reference": semicircle_moment(d), "rate_est": math.nan, "ess": math.nan,
                "reliable": True,
            })
        if t is not None:
            small = (
                ensemble.entry_law.family is LawFamily.RADEMACHER
                and ensemble.free_entries + n <= MAX_EXACT_ENTRIES
            )
            for d in degrees:
                est = tilted_tail_estimate(ensemble, d, t, trials, seed, threads=workers)
                rows.append({
                    "kind": "tail", "d": d, "t": t, "value": est.prob_est, "std_err": est.std_err,
                    "reference": exact_tail_probability(ensemble, d, t) if small else math.nan,
                    "rate_est": est.rate_est, "ess": est.ess, "reliable": est.reliable,
                })

    emit("wigner-mc", params, seed, rows, MC_COLUMNS, out, json_report)


def shift(
    sizes: Optional[list[int]] = typer.Option(None, "--n", help="Matrix size (repeatable)"),
    d: int = typer.Option(4, "--d", help="Trace power d >= 2"),
    xs: Optional[list[float]] = typer.Option(None, "--x", help="Trace shift x (repeatable)"),
    law: str = typer.Option("rademacher", "--law", help="Entry law used for the entropy cost"),
    tol: float = typer.Option(1e-10, "--tol", help="Allowed |trace_check - 1| for even d"),
    out: Optional[Path] = out_option(),
    json_report: bool = json_option(),
):
    """Uniform-shift candidates Y with (1/n) tr (Y/sqrt n)^d = x.

    cost is sum_{i<j} Lambda*(y) / n^(1+2/d); sharp_rate is x^(2/d)/4.
    CSV columns: n, d, x, y, trace_check, cost, sharp_rate. Exits 3 when
    the trace identity misses by more than --tol for even d.
    """
    from ldp_lab.measures.laws import ScalarLaw
    from ldp_lab.wigner.shift import uniform_shift_candidate

    sizes = sizes or [10, 100, 500]
    xs = xs or [0.5, 1.0, 2.0]
    params = {"n": sizes, "d": d, "x": xs, "law": law, "tol": tol}
    rows = []
    with exit_codes("wigner-shift", params):
        entry_law = ScalarLaw.parse(law)
        for size in sizes:
            for x in xs:
                cand = uniform_shift_candidate(size, d, x, entry_law=entry_law)
                rows.append({
                    "n": size, "d": d, "x": x, "y": cand.y, "trace_check": cand.trace_check,
                    "cost": cand.cost, "sharp_rate": 0.25 * abs(x) ** (2.0 / d),
                })

    missed = d % 2 == 0 and any(abs(r["trace_check"] - 1.0) > tol for r in rows)
    code = EXIT_NUMERICAL if missed else 0
    emit("wigner-shift", params, 0, rows, SHIFT_COLUMNS, out, json_report, exit_code=code)
    if missed:
        typer.echo(f"trace identity missed by more than {tol:g}", err=True)
        raise typer.Exit(code)
