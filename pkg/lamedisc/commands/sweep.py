"""Parameter sweep along tau."""

from pathlib import Path

import typer
from rich.console import Console
from rich.markup import escape
from rich.progress import BarColumn, Progress, SpinnerColumn, TextColumn

from lamedisc.commands.display import display_sweep_summary
from lamedisc.config import config
from lamedisc.errors import PreconditionViolated
from lamedisc.studies.sweep import run_sweep, sweep_csv_text, write_sweep_csv

console = Console()
err_console = Console(stderr=True)


def sweep(
    h: float = typer.Option(..., "--h", help="Spectral parameter h"),
    nu: float = typer.Option(..., "--nu", help="Degree nu"),
    tau_min: float = typer.Option(0.5, "--tau-min", help="First tau of the grid"),
    tau_max: float = typer.Option(8.0, "--tau-max", help="Last tau of the grid"),
    steps: int = typer.Option(151, "--steps", help="Number of grid points (>= 2)"),
    out: Path = typer.Option(None, "--out", "-o", help="CSV file to write (default: stdout)"),
    tol: float = typer.Option(None, "--tol", help="Integrator relative tolerance"),
    workers: int = typer.Option(None, "--workers", "-w", help="Worker processes"),
):
    """Sweep tau with h and nu fixed and emit one CSV row per grid point."""
    try:
        cfg = config.get_integration_config(tol)
        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            console=err_console,
            transient=True,
        ) as progress:
            task = progress.add_task(f"Sweeping h={h:g}, nu={nu:g}...", total=steps)
            rows = run_sweep(
                h,
                nu,
                tau_min,
                tau_max,
                steps,
                cfg,
                workers=workers or config.WORKERS,
                on_row=lambda _: progress.advance(task),
            )
    except PreconditionViolated as e:
        err_console.print(f"[bold red]✗ {type(e).__name__}:[/bold red] {escape(str(e))}")
        raise typer.Exit(code=2)
    except KeyboardInterrupt:
        err_console.print("\n[yellow]Sweep cancelled by user[/yellow]")
        raise typer.Exit(code=1)
    except Exception as e:
        err_console.print(f"\n[bold red]Error during sweep:[/bold red] {escape(str(e))}")
        if config.DEBUG:
            import traceback

            err_console.print(f"[dim]{escape(traceback.format_exc())}[/dim]")
        raise typer.Exit(code=1)

    if out is None:
        typer.echo(sweep_csv_text(rows), nl=False)
        return

    try:
        write_sweep_csv(rows, out)
    except OSError as e:
        err_console.print(f"[bold red]Error writing {out}:[/bold red] {escape(str(e))}")
        raise typer.Exit(code=1)

    console.print(f"[green]✓[/green] Wrote {len(rows)} rows to [cyan]{out}[/cyan]")
    display_sweep_summary(console, rows)
