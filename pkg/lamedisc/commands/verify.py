"""Invariant suite runner."""

import json
import math

import typer
from rich.console import Console
from rich.markup import escape
from rich.progress import Progress, SpinnerColumn, TextColumn

from lamedisc.commands.display import display_verification
from lamedisc.config import config
from lamedisc.errors import PreconditionViolated
from lamedisc.studies.verification import PROPERTIES, run_suite

console = Console()
err_console = Console(stderr=True)


def verify(
    seed: int = typer.Option(0, "--seed", help="Seed for the sampled points"),
    grid_density: int = typer.Option(
        1, "--grid-density", min=1, help="1 = reduced grids, 2 = full grids"
    ),
    tol: float = typer.Option(None, "--tol", help="Integrator relative tolerance"),
    json_output: bool = typer.Option(False, "--json", help="Print a JSON summary"),
):
    """Run every invariant check; exit 1 if any fails."""
    try:
        cfg = config.get_integration_config(tol)
    except PreconditionViolated as e:
        err_console.print(f"[bold red]✗ {type(e).__name__}:[/bold red] {escape(str(e))}")
        raise typer.Exit(code=2)

    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        console=err_console,
        transient=True,
    ) as progress:
        task = progress.add_task("Checking invariants...", total=len(PROPERTIES))
        results = run_suite(
            seed,
            grid_density,
            cfg,
            on_result=lambda r: progress.update(task, advance=1, description=f"Checked {r.name}"),
        )

    all_passed = all(r.passed for r in results)

    if json_output or config.wants_json():
        summary = {
            "seed": seed,
            "grid_density": grid_density,
            "rel_tol": cfg.rel_tol,
            "passed": all_passed,
            "properties": [
                {
                    "name": r.name,
                    "passed": r.passed,
                    "worst_margin": r.worst_margin if math.isfinite(r.worst_margin) else None,
                    "detail": r.detail,
                }
                for r in results
            ],
        }
        typer.echo(json.dumps(summary, indent=2))
    else:
        display_verification(console, results)

    if not all_passed:
        raise typer.Exit(code=1)
