"""Main Typer application and command registration."""

import typer

from ldp_lab.cli.commands import cycles, ising, measures, nets, wigner
from ldp_lab.cli.commands.config import app as config_app
from ldp_lab.cli.commands.runs import app as runs_app
from ldp_lab.cli.common import configure_logging

app = typer.Typer(
    name="ldp-lab",
    help="Numerical experiments on large deviations of random matrices, Ising models and random graphs.",
    no_args_is_help=True,
)


@app.callback()
def main(verbose: bool = typer.Option(False, "--verbose", "-v", help="Show debug logging")):
    configure_logging(verbose)


app.add_typer(config_app, name="config", help="Show configuration.")
app.add_typer(runs_app, name="runs", help="Browse recorded experiment runs.")
app.command(name="legendre")(measures.app)
app.command(name="ising-certify")(ising.certify)
app.command(name="ising-solve")(ising.solve)
app.command(name="wigner-rate")(wigner.rate)
app.command(name="wigner-mc")(wigner.mc)
app.command(name="wigner-shift")(wigner.shift)
app.command(name="cycles-phi")(cycles.phi)
app.command(name="cycles-candidates")(cycles.candidates)
app.command(name="cycles-opt")(cycles.optimize)
app.command(name="cycles-mc")(cycles.monte_carlo)
app.command(name="nets-verify")(nets.app)


if __name__ == "__main__":
    app()
