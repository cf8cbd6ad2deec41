"""cycles-phi, cycles-candidates, cycles-opt and cycles-mc: cycle counts in G(n, p)."""

from pathlib import Path
from typing import Optional

import typer

from ldp_lab.cli.common import (
    emit,
    exit_codes,
    json_option,
    out_option,
    parse_floats,
    resolve_threads,
    seed_option,
    threads_option,
)

PHI_COLUMNS = ["d", "t", "theta", "clique_rate", "phi_dense", "phi_sparse"]
CANDIDATE_COLUMNS = ["n", "p", "d", "t", "kind", "size", "cost_ratio", "rate", "trace_ratio", "feasible"]
OPT_COLUMNS = [
    "n", "p", "d", "t", "kind", "size", "cost_ratio", "trace_ratio",
    "clique_cost_ratio", "hub_cost_ratio", "phi_dense",
]
MC_COLUMNS = ["kind", "level", "value", "std_err", "trials"]


def phi(
    d: int = typer.Option(3, "--d", help="Cycle length d >= 3"),
    ts: Optional[list[float]] = typer.Option(None, "--t", help="Tail level t >= 1 (repeatable)"),
    out: Optional[Path] = out_option(),
    json_report: bool = json_option(),
):
    """Tabulate theta_t and Phi(t) in both regimes.

    CSV columns: d, t, theta, clique_rate, phi_dense, phi_sparse.
    """
    from ldp_lab.cycles.independence import Phi, clique_rate, theta_t
    from ldp_lab.cycles.problem import Regime

    ts = ts or [1.5, 2.0, 3.0, 5.0]
    params = {"d": d, "t": ts}
    rows = []
    with exit_codes("cycles-phi", params):
        for t in ts:
            rows.append({
                "d": d,
                "t": t,
                "theta": theta_t(d, t),
                "clique_rate": clique_rate(d, t),
                "phi_dense": Phi(d, t, Regime.DENSE),
                "phi_sparse": Phi(d, t, Regime.SPARSE),
            })
    emit("cycles-phi", params, 0, rows, PHI_COLUMNS, out, json_report)


def candidates(
    n: int = typer.Option(3000, "--n", help="Number of vertices"),
    p: float = typer.Option(0.1, "--p", help="Edge probability"),
    d: int = typer.Option(3, "--d", help="Cycle length d >= 3"),
    ts: Optional[list[float]] = typer.Option(None, "--t", help="Tail level t >= 1 (repeatable)"),
    out: Optional[Path] = out_option(),
    json_report: bool = json_option(),
):
    """Closed-form costs of the planted clique and planted hub.

    cost_ratio is Lambda*_p(Y)/v_n with v_n = n^2 p^2 log(1/p); rate is the
    limit it approaches, (t-1)^(2/d)/2 for the clique and theta_t for the hub.
    CSV columns: n, p, d, t, kind, size, cost_ratio, rate, trace_ratio, feasible.
    """
    import math

    from ldp_lab.core.exceptions import InfeasibleCandidateError
    from ldp_lab.cycles.candidates import CandidateKind, planted_clique, planted_hub
    from ldp_lab.cycles.independence import clique_rate, theta_t
    from ldp_lab.cycles.problem import CycleProblem

    ts = ts or [2.0]
    params = {"n": n, "p": p, "d": d, "t": ts}
    rows = []
    with exit_codes("cycles-candidates", params):
        for t in ts:
            problem = CycleProblem(n, p, d, t)
            limits = {CandidateKind.CLIQUE: clique_rate(d, t), CandidateKind.HUB: theta_t(d, t)}
            for kind, build in ((CandidateKind.CLIQUE, planted_clique), (CandidateKind.HUB, planted_hub)):
                row = {"n": n, "p": p, "d": d, "t": t, "kind": kind.value, "rate": limits[kind]}
                try:
                    cand = build(problem)
                except InfeasibleCandidateError as e:
                    typer.echo(f"{kind.value} at t={t}: {e}", err=True)
                    row.update(size=-1, cost_ratio=math.inf, trace_ratio=math.nan, feasible=False)
                else:
                    row.update(
                        size=cand.size,
                        cost_ratio=cand.cost_ratio,
                        trace_ratio=cand.trace_ratio,
                        feasible=cand.feasible,
                    )
                rows.append(row)
    emit("cycles-candidates", params, 0, rows, CANDIDATE_COLUMNS, out, json_report)


def optimize(
    n: int = typer.Option(40, "--n", help="Number of vertices (at most 60)"),
    p: float = typer.Option(0.3, "--p", help="Edge probability"),
    d: int = typer.Option(3, "--d", help="Cycle length d >= 3"),
    ts: Optional[list[float]] = typer.Option(None, "--t", help="Tail level t >= 1 (repeatable)"),
    export: Optional[Path] = typer.Option(None, "--export", help="Directory for the optimal matrices as dense CSV"),
    seed: int = seed_option(),
    threads: Optional[int] = threads_option(),
    out: Optional[Path] = out_option(),
    json_report: bool = json_option(),
):
    """Numerically minimize Lambda*_p(Y) subject to tr(Y^d) >= t (np)^d.

    Optimizer settings come from the YAML file named by LDP_LAB_OPTIMIZER_CONFIG
    (default <lab_dir>/optimizer.yaml) when it exists. CSV columns: n, p, d,
    t, kind, size, cost_ratio, trace_ratio, clique_cost_ratio, hub_cost_ratio,
    phi_dense.
    """
    import math

    from ldp_lab.core.exceptions import InfeasibleCandidateError
    from ldp_lab.cycles.candidates import planted_clique, planted_hub
    from ldp_lab.cycles.graph_io import export_dense_csv
    from ldp_lab.cycles.independence import Phi
    from ldp_lab.cycles.optimizer import PhiOptimizerConfig, numeric_phi
    from ldp_lab.cycles.problem import CycleProblem, Regime

    def planted_ratio(build, problem) -> float:
        try:
            return build(problem).cost_ratio
        except InfeasibleCandidateError:
            return math.inf

    workers = resolve_threads(threads)
    ts = ts or [1.2, 1.5, 2.0]
    params = {"n": n, "p": p, "d": d, "t": ts}
    rows = []
    with exit_codes("cycles-opt", params, seed):
        config = PhiOptimizerConfig.from_settings()
        params.update(config.model_dump())
        for t in ts:
            problem = CycleProblem(n, p, d, t)
            best = numeric_phi(problem, config=config, seed=seed, threads=workers)
            rows.append({
                "n": n, "p": p, "d": d, "t": t,
                "kind": best.kind.value,
                "size": best.size,
                "cost_ratio": best.cost_ratio,
                "trace_ratio": best.trace_ratio,
                "clique_cost_ratio": planted_ratio(planted_clique, problem),
                "hub_cost_ratio": planted_ratio(planted_hub, problem),
                "phi_dense": Phi(d, t, Regime.DENSE),
            })
            if export is not None:
                path = export_dense_csv(best.matrix, export / f"cycles-opt-t{t:g}.csv")
                typer.echo(f"exported {path}", err=True)
    emit("cycles-opt", params, seed, rows, OPT_COLUMNS, out, json_report)


def monte_carlo(
    n: int = typer.Option(30, "--n", help="Number of vertices"),
    p: float = typer.Option(0.2, "--p", help="Edge probability"),
    d: int = typer.Option(3, "--d", help="Cycle length d >= 3"),
    t: float = typer.Option(1.5, "--t", help="Tail level used when --levels is not given"),
    levels: Optional[str] = typer.Option(None, "--levels", help="Comma-separated tail levels"),
    trials: int = typer.Option(500, "--trials", help="Sampled graphs"),
    graph_file: Optional[Path] = typer.Option(None, "--graph-file", help="Edge list to score against the samples"),
    k: Optional[int] = typer.Option(None, "--k", help="Also report the truncated trace g_k over the top k eigenvalues"),
    seed: int = seed_option(),
    threads: Optional[int] = threads_option(),
    out: Optional[Path] = out_option(),
    json_report: bool = json_option(),
):
    """Sample G(n, p) and report tr(X^d)/(np)^d and its tail frequencies.

    Rows: kind=mean (sample mean), kind=tail (frequency of ratio >= level),
    kind=truncated (mean of g_k/(np)^d with level=k, when --k is given),
    kind=expected (exact mean, d=3 only), kind=graph (ratio of --graph-file)
    and kind=triangles (triangle count of --graph-file). CSV columns: kind,
    level, value, std_err, trials.
    """
    import math

    from ldp_lab.cycles.graph_io import read_edge_list
    from ldp_lab.cycles.problem import CycleProblem
    from ldp_lab.cycles.sampling import expected_closed_walks, trace_tail_mc, triangle_count
    from ldp_lab.linalg.spectral import trace_power

    workers = resolve_threads(threads)
    level_list = parse_floats(levels, "--levels") if levels else None
    params = {"n": n, "p": p, "d": d, "t": t, "levels": level_list, "trials": trials, "k": k,
              "graph_file": str(graph_file) if graph_file else None}
    rows = []
    with exit_codes("cycles-mc", params, seed):
        problem = CycleProblem(n, p, d, t)
        report = trace_tail_mc(problem, trials, seed, levels=level_list, threads=workers, k=k)
        rows.append({"kind": "mean", "level": math.nan, "value": report.mean,
                     "std_err": report.std_err, "trials": trials})
        for level, freq in report.tail_freq.items():
            rows.append({"kind": "tail", "level": level, "value": freq,
                         "std_err": math.sqrt(freq * (1.0 - freq) / trials), "trials": trials})
        if k is not None:
            rows.append({"kind": "truncated", "level": k, "value": report.truncated_mean,
                         "std_err": report.truncated_std_err, "trials": trials})
        if d == 3:
            rows.append({"kind": "expected", "level": math.nan,
                         "value": expected_closed_walks(n, p, d) / problem.np_**d,
                         "std_err": 0.0, "trials": 0})
        if graph_file is not None:
            adj = read_edge_list(graph_file, n=n)
            rows.append({"kind": "graph", "level": math.nan,
                         "value": trace_power(adj, d) / problem.np_**d, "std_err": 0.0, "trials": 1})
            rows.append({"kind": "triangles", "level": math.nan,
                         "value": triangle_count(adj), "std_err": 0.0, "trials": 1})
    emit("cycles-mc", params, seed, rows, MC_COLUMNS, out, json_report)
