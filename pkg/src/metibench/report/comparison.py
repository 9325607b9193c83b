"""
Comparison tables in the layout of the usual command-line benchmarking tools.

Times are stored in seconds and shown in milliseconds with one decimal; the
Relative column is each variant's ratio over the fastest one.
"""

from __future__ import annotations

from pydantic import Field

from ..exceptions import StatsError
from ..model.spec import Frozen
from ..stats.summary import RatioWithUncertainty, Summary, SummaryMode, compare

HEADER = ("Command", "Mean [ms]", "Min [ms]", "Max [ms]", "Relative")


class ComparisonRow(Frozen):
    name: str
    summary: Summary
    baseline: bool = False
    relative: RatioWithUncertainty | None = None
    notes: list[str] = Field(default_factory=list)

    def relative_cell(self) -> str:
        if self.baseline:
            return "1.00"
        if self.relative is None:
            return "n/a"
        return self.relative.format()


def fastest(summaries: dict[str, Summary], mode: SummaryMode = "mean") -> str:
    """Name of the fastest variant; ties go to the first one given."""
    best = None
    for name, s in summaries.items():
        if best is None or s.central(mode) < summaries[best].central(mode):
            best = name
    if best is None:
        raise StatsError("no summaries to compare")
    return best


def comparison_rows(summaries: dict[str, Summary], mode: SummaryMode = "mean") -> list[ComparisonRow]:
    if not summaries:
        return []
    base = fastest(summaries, mode)
    rows: list[ComparisonRow] = []
    for name, s in summaries.items():
        if name == base:
            rows.append(ComparisonRow(name=name, summary=s, baseline=True))
            continue
        try:
            rel = compare(s, summaries[base], mode)
            rows.append(ComparisonRow(name=name, summary=s, relative=rel))
        except StatsError as e:
            rows.append(ComparisonRow(name=name, summary=s, notes=[str(e)]))
    return rows


def _ms(seconds: float) -> str:
    return f"{seconds * 1000:.1f}"


def render_comparison(summaries: dict[str, Summary], mode: SummaryMode = "mean") -> str:
    lines = [
        "| " + " | ".join(HEADER) + " |",
        "|:---|---:|---:|---:|---:|",
    ]
    for row in comparison_rows(summaries, mode):
        s = row.summary
        cells = (
            f"`{row.name}`",
            f"{_ms(s.mean)} ± {_ms(s.stddev)}",
            _ms(s.min),
            _ms(s.max),
            row.relative_cell(),
        )
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def render_summary_line(summaries: dict[str, Summary], mode: SummaryMode = "mean") -> str:
    """``Summary\\n  `a` ran\\n    1.35 ± 0.04 times faster than `b```; empty for one variant."""
    rows = comparison_rows(summaries, mode)
    if len(rows) < 2:
        return ""
    base = next(r for r in rows if r.baseline)
    lines = ["Summary", f"  `{base.name}` ran"]
    for r in rows:
        if r.baseline:
            continue
        if r.relative is None:
            lines.append(f"    (no ratio against `{r.name}`)")
        else:
            lines.append(f"    {r.relative.format()} times faster than `{r.name}`")
    return "\n".join(lines) + "\n"
