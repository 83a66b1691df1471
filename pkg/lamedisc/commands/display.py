"""Display and formatting functions for lamedisc CLI output."""

import math
from collections.abc import Sequence

from rich.console import Console
from rich.table import Table

from lamedisc.lame_core import AsymptoticConstants, Verdict
from lamedisc.studies.sweep import SweepRow, format_number
from lamedisc.studies.verification import PropertyResult

VERDICT_STYLES = {
    Verdict.PROVABLY_STABLE: "bold green",
    Verdict.NUMERICALLY_STABLE: "green",
    Verdict.PROVABLY_UNSTABLE: "bold red",
    Verdict.NUMERICALLY_UNSTABLE: "red",
    Verdict.UNDETERMINED: "yellow",
}


def format_verdict(verdict: Verdict) -> str:
    """Verdict wrapped in its Rich style."""
    style = VERDICT_STYLES.get(verdict, "white")
    return f"[{style}]{verdict}[/{style}]"


def _cell(value: float | None) -> str:
    return "[dim]-[/dim]" if value is None else format_number(value)


def display_point_report(
    console: Console,
    h: float,
    nu: float,
    row: SweepRow,
    constants: AsymptoticConstants,
):
    """Display a single-point report as a two-column table.

    Args:
        console: Rich console instance
        h: Spectral parameter
        nu: Degree after normalization
        row: Computed row for the point
        constants: omega, B and its polar form
    """
    console.print(
        f"\n[bold cyan]Lame discriminant[/bold cyan]  "
        f"h=[yellow]{h:g}[/yellow] nu=[yellow]{nu:g}[/yellow] tau=[yellow]{row.tau:g}[/yellow]"
    )

    table = Table(show_header=True, header_style="bold cyan", box=None)
    table.add_column("Quantity", style="blue", width=12)
    table.add_column("Value", style="white")

    table.add_row("k", _cell(row.k))
    table.add_row("k'", _cell(row.kprime))
    table.add_row("K", _cell(row.K))
    table.add_row("E", _cell(row.E))
    table.add_row("omega", _cell(row.omega))
    table.add_row("2|B|", _cell(constants.amplitude))
    table.add_row("arg B", _cell(constants.phase))
    table.add_row("D", _cell(row.D))
    table.add_row("approx", _cell(row.approx))
    table.add_row("bound", _cell(row.bound))
    table.add_row("verdict", format_verdict(row.verdict))

    console.print(table)


def display_sweep_summary(console: Console, rows: Sequence[SweepRow]):
    """Display verdict counts and the tightest certified row of a sweep."""
    counts: dict[Verdict, int] = {}
    for row in rows:
        counts[row.verdict] = counts.get(row.verdict, 0) + 1

    table = Table(title="Sweep Verdicts", show_header=True, header_style="bold cyan")
    table.add_column("Verdict", style="white")
    table.add_column("Rows", style="yellow", justify="right")
    for verdict in Verdict:
        if counts.get(verdict):
            table.add_row(format_verdict(verdict), str(counts[verdict]))
    console.print(table)

    failed = sum(1 for row in rows if row.D is None)
    if failed:
        console.print(f"[yellow]{failed} row(s) without a discriminant[/yellow]")


def display_verification(console: Console, results: Sequence[PropertyResult]):
    """Display one line per property with its worst margin."""
    table = Table(title="Invariant Suite", show_header=True, header_style="bold cyan")
    table.add_column("#", style="dim", width=4)
    table.add_column("Property", style="blue")
    table.add_column("Status", width=6)
    table.add_column("Worst margin", style="yellow", justify="right")
    table.add_column("Where", style="dim")

    for idx, result in enumerate(results, 1):
        status = "[green]✓[/green]" if result.passed else "[red]✗[/red]"
        margin = format(result.worst_margin, ".3g") if math.isfinite(result.worst_margin) else "-"
        detail = result.detail if len(result.detail) <= 60 else result.detail[:57] + "..."
        table.add_row(str(idx), result.name, status, margin, detail)

    console.print(table)

    passed = sum(1 for r in results if r.passed)
    colour = "green" if passed == len(results) else "red"
    console.print(
        f"\n[bold]Results:[/bold] [{colour}]{passed}/{len(results)}[/{colour}] properties hold"
    )
