"""
Console rendering of measurements, comparisons and diagnostics.
"""

from __future__ import annotations

from rich import box
from rich.console import Console
from rich.table import Table

from ..model.results import ResultSet
from ..model.spec import Diagnostic
from ..report.comparison import comparison_rows
from ..stats.summary import Summary, SummaryMode, summarize

console = Console()

SEVERITY_STYLE = {"error": "red", "warning": "yellow", "note": "dim"}


def format_time(seconds: float) -> str:
    """Format a duration the way benchmark output usually reads."""
    if seconds < 1e-3:
        return f"{seconds * 1e6:.1f} µs"
    if seconds < 1:
        return f"{seconds * 1e3:.1f} ms"
    return f"{seconds:.3f} s"


def format_size(size_bytes: int) -> str:
    if size_bytes < 1024:
        return f"{size_bytes} B"
    elif size_bytes < 1024 * 1024:
        return f"{size_bytes / 1024:.1f} KiB"
    elif size_bytes < 1024 * 1024 * 1024:
        return f"{size_bytes / (1024 * 1024):.1f} MiB"
    else:
        return f"{size_bytes / (1024 * 1024 * 1024):.1f} GiB"


def print_result_block(rs: ResultSet, index: int | None = None, out: Console | None = None) -> None:
    out = out or console
    s = summarize(rs.wall_times)
    n = len(rs.measurements)
    user = sum(m.user_time for m in rs.measurements) / n
    system = sum(m.system_time for m in rs.measurements) / n
    rss = max(m.max_rss for m in rs.measurements)

    title = f"Benchmark {index}: " if index is not None else ""
    point = f" [dim]({rs.param_point.label()})[/dim]" if rs.param_point.assignments else ""
    out.print(f"[bold]{title}{rs.variant_name}[/bold]{point}")
    spread = format_time(s.stddev) if not s.single_sample else "n/a"
    out.print(
        f"  Time ([green]mean[/green] ± [green]σ[/green]):  {format_time(s.mean):>10} ± {spread:<10}"
        f"  [User: {format_time(user)}, System: {format_time(system)}]"
    )
    out.print(
        f"  Range ([cyan]min[/cyan] … [magenta]max[/magenta]):  {format_time(s.min):>10} … {format_time(s.max):<10}"
        f"  {n} run{'s' if n != 1 else ''}"
        + (f", {rs.warmups_discarded} warmup(s) discarded" if rs.warmups_discarded else "")
    )
    if rss:
        out.print(f"  Max RSS: {format_size(rss)}")
    for note in rs.notes:
        out.print(f"  [dim]{note}[/dim]")
    out.print()


def comparison_table(summaries: dict[str, Summary], mode: SummaryMode = "mean", title: str | None = None) -> Table:
    table = Table(title=title, box=box.SIMPLE_HEAD)
    table.add_column("Command", style="cyan")
    table.add_column("Mean [ms]", justify="right")
    table.add_column("Min [ms]", justify="right")
    table.add_column("Max [ms]", justify="right")
    table.add_column("Relative", justify="right")
    for row in comparison_rows(summaries, mode):
        s = row.summary
        table.add_row(
            row.name,
            f"{s.mean * 1e3:.1f} ± {s.stddev * 1e3:.1f}",
            f"{s.min * 1e3:.1f}",
            f"{s.max * 1e3:.1f}",
            f"[bold green]{row.relative_cell()}[/bold green]" if row.baseline else row.relative_cell(),
        )
    return table


def print_summary(summaries: dict[str, Summary], mode: SummaryMode = "mean", out: Console | None = None) -> None:
    out = out or console
    rows = comparison_rows(summaries, mode)
    if len(rows) < 2:
        return
    base = next(r for r in rows if r.baseline)
    out.print("[bold]Summary[/bold]")
    out.print(f"  [cyan]{base.name}[/cyan] ran")
    for r in rows:
        if r.baseline:
            continue
        if r.relative is None:
            out.print(f"    [dim]no ratio against {r.name}[/dim]")
        else:
            out.print(f"    [bold green]{r.relative.format()}[/bold green] times faster than [magenta]{r.name}[/magenta]")
    out.print()


def print_diagnostics(diags: list[Diagnostic], out: Console | None = None) -> None:
    out = out or console
    for d in diags:
        style = SEVERITY_STYLE.get(d.severity, "yellow")
        out.print(f"[{style}]{d.severity.capitalize()}[/{style}] [bold]{d.code}[/bold]: {d.message}", highlight=False)
