"""Single-point discriminant report."""

import json

import typer
from rich.console import Console
from rich.markup import escape

from lamedisc.commands.display import display_point_report
from lamedisc.config import config
from lamedisc.errors import PreconditionViolated
from lamedisc.lame_core import LameParams, asymptotic_constants, comparison_hypotheses
from lamedisc.special_functions import Modulus
from lamedisc.studies.sweep import compute_row, point_record

console = Console()
err_console = Console(stderr=True)


def _modulus(k: float | None, kprime: float | None, tau: float | None) -> Modulus:
    given = [name for name, value in (("--k", k), ("--kprime", kprime), ("--tau", tau))
             if value is not None]
    if len(given) != 1:
        raise PreconditionViolated(
            f"give exactly one of --k, --kprime, --tau (got {', '.join(given) or 'none'})"
        )
    if k is not None:
        return Modulus.from_k(k)
    if kprime is not None:
        return Modulus.from_kprime(kprime)
    return Modulus.from_tau(tau)


def point(
    h: float = typer.Option(..., "--h", help="Spectral parameter h"),
    nu: float = typer.Option(..., "--nu", help="Degree nu"),
    k: float = typer.Option(None, "--k", help="Modulus k in [0, 1)"),
    kprime: float = typer.Option(None, "--kprime", help="Complementary modulus k' in (0, 1]"),
    tau: float = typer.Option(None, "--tau", help="tau >= 0 with k = 1 - exp(-tau)"),
    tol: float = typer.Option(None, "--tol", help="Integrator relative tolerance"),
    json_output: bool = typer.Option(False, "--json", help="Print a JSON object"),
):
    """Compute D, its closed-form approximant, the error bound and the verdict at one point."""
    try:
        m = _modulus(k, kprime, tau)
        p = LameParams(h, nu, m)
        comparison_hypotheses(p)
        cfg = config.get_integration_config(tol)
        constants = asymptotic_constants(p.h, p.nu)
    except PreconditionViolated as e:
        err_console.print(f"[bold red]✗ {type(e).__name__}:[/bold red] {escape(str(e))}")
        raise typer.Exit(code=2)

    row = compute_row(p.h, p.nu, m, cfg)

    if json_output or config.wants_json():
        typer.echo(json.dumps(point_record(p.h, p.nu, row, constants)))
    else:
        display_point_report(console, p.h, p.nu, row, constants)
