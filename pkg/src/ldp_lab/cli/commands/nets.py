"""nets-verify: build nets, check coverage on fresh samples and compare with bounds."""

from pathlib import Path
from typing import Optional

import typer

from ldp_lab.cli.common import EXIT_NUMERICAL, emit, exit_codes, json_option, out_option, seed_option

COLUMNS = ["kind", "n", "k", "eps", "cardinality", "log_cardinality", "bound", "bound_ok", "worst_gap"]
DEFAULT_LOWRANK = ["2:1:0.5", "3:1:0.6", "4:2:0.8"]
DEFAULT_SPHERE = ["3:0.5"]


def _split(spec: str, arity: int, flag: str) -> list[float]:
    from ldp_lab.core.exceptions import ArgumentError

    parts = spec.split(":")
    try:
        values = [float(v) for v in parts]
    except ValueError:
        values = []
    if len(values) != arity:
        raise ArgumentError(f"{flag} expects {arity} colon-separated numbers, got {spec!r}")
    return values


def app(
    lowrank: Optional[list[str]] = typer.Option(None, "--lowrank", help="n:k:eps low-rank net (repeatable)"),
    sphere: Optional[list[str]] = typer.Option(None, "--sphere", help="n:eps sphere net (repeatable)"),
    interval_eps: float = typer.Option(0.1, "--interval-eps", help="Mesh of the [-1, 1] interval net"),
    seed: int = seed_option(),
    out: Optional[Path] = out_option(),
    json_report: bool = json_option(),
):
    """Construct and verify eps-nets.

    Sphere and low-rank nets are checked on 10^4 fresh samples; worst_gap is
    the largest distance found. Low-rank bounds are 2nk log(12k/eps), sphere
    bounds n log(12/eps). CSV columns: kind, n, k, eps, cardinality,
    log_cardinality, bound, bound_ok, worst_gap. Exits 3 when a net exceeds
    its bound or misses a sample.
    """
    import math

    from ldp_lab.core.seeding import STREAM_SAMPLES, derive_rng
    from ldp_lab.nets.covering import net_interval, net_lowrank, net_sphere

    lowrank = lowrank or DEFAULT_LOWRANK
    sphere = sphere or DEFAULT_SPHERE
    rows = []

    def add(kind: str, n: int, k: int, eps: float, net) -> None:
        rows.append({
            "kind": kind,
            "n": n,
            "k": k,
            "eps": eps,
            "cardinality": net.cardinality,
            "log_cardinality": net.log_cardinality,
            "bound": net.bound if net.bound is not None else math.nan,
            "bound_ok": net.bound_ok,
            "worst_gap": net.worst_gap,
        })

    params = {"lowrank": lowrank, "sphere": sphere, "interval_eps": interval_eps}
    with exit_codes("nets-verify", params, seed):
        add("interval", 1, 0, interval_eps, net_interval(-1.0, 1.0, interval_eps))
        for i, spec in enumerate(sphere):
            n, eps = _split(spec, 2, "--sphere")
            net = net_sphere(int(n), float(eps), derive_rng(seed, STREAM_SAMPLES, i))
            add("sphere", int(n), 0, float(eps), net)
        for i, spec in enumerate(lowrank):
            n, k, eps = _split(spec, 3, "--lowrank")
            net = net_lowrank(int(n), int(k), float(eps), derive_rng(seed, STREAM_SAMPLES, len(sphere) + i))
            add("lowrank", int(n), int(k), float(eps), net)

    failed = [r for r in rows if not r["bound_ok"]]
    code = EXIT_NUMERICAL if failed else 0
    emit("nets-verify", params, seed, rows, COLUMNS, out, json_report, exit_code=code)
    if failed:
        typer.echo(f"{len(failed)} net(s) exceed their cardinality bound", err=True)
        raise typer.Exit(code)
