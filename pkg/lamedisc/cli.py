"""Main CLI application entry point."""

import typer
from rich.console import Console

from lamedisc.commands import point, sweep, verify
from lamedisc.config import config
from lamedisc.log import setup_logging

console = Console()
app = typer.Typer(
    name="lamedisc",
    help="Hill discriminant of Lame's equation: certified stability near k = 1",
    add_completion=True,
    rich_markup_mode="rich",
)

app.command("point", help="📍 Discriminant, approximant and verdict at one point")(point.point)
app.command("sweep", help="📈 CSV sweep over tau")(sweep.sweep)
app.command("verify", help="✅ Run the invariant suite")(verify.verify)


@app.command()
def version():
    """Show the application version."""
    from lamedisc import __version__

    console.print(f"[bold cyan]lamedisc[/bold cyan] version [green]{__version__}[/green]")


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log at DEBUG level"),
):
    """
    lamedisc - stability of Lame's equation from its Hill discriminant.
    """
    level = "DEBUG" if verbose or config.DEBUG else config.LOG_LEVEL
    setup_logging(level)


if __name__ == "__main__":
    app()
