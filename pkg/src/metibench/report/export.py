"""
Machine-readable export.

Schema (``schema_version`` 1)::

    {
      "schema_version": 1,
      "tool_version": "...",
      "generated_at": "...",
      "mode": "mean" | "min",
      "benchmarks": [
        {"spec_id": "...", "parameters": {...}, "results": [
          {"command": "<variant>", "mean": s, "stddev": s, "median": s, "min": s, "max": s, "n": int,
           "relative": float, "relative_sigma": float, "user": s, "system": s,
           "times": [...], "user_times": [...], "system_times": [...], "max_rss": [...],
           "exit_codes": [...], "session_id": "...", "warmups_discarded": int}
        ]}
      ],
      "claims": [{"claim_id": "...", "verdict": "...", "evidence": [...]}]
    }

All times are in seconds.
"""

from __future__ import annotations

import json
from datetime import datetime
from pathlib import Path

from pydantic import Field, ValidationError

from .. import __version__
from ..exceptions import MissingFile, MissingResults, ReportError
from ..model.spec import Frozen
from ..project import Project
from ..stats.summary import Summary, SummaryMode
from .claims import ClaimVerdict, evaluate_claim
from .comparison import comparison_rows
from .document import latest_checks, load_all_results
from .groups import BenchmarkGroup, latest_groups

SCHEMA_VERSION = 1


class ExportedResult(Frozen):
    command: str
    mean: float
    stddev: float
    median: float
    min: float
    max: float
    n: int
    relative: float | None = None
    relative_sigma: float | None = None
    user: float
    system: float
    times: list[float]
    user_times: list[float]
    system_times: list[float]
    max_rss: list[int]
    exit_codes: list[int]
    session_id: str = ""
    warmups_discarded: int = 0

    def summary(self) -> Summary:
        return Summary(
            mean=self.mean,
            stddev=self.stddev,
            min=self.min,
            max=self.max,
            median=self.median,
            n=self.n,
            single_sample=self.n == 1,
            label=self.command,
        )


class ExportedBenchmark(Frozen):
    spec_id: str
    parameters: dict[str, str] = Field(default_factory=dict)
    results: list[ExportedResult]

    def summaries(self) -> dict[str, Summary]:
        return {r.command: r.summary() for r in self.results}


class ExportDocument(Frozen):
    schema_version: int = SCHEMA_VERSION
    tool_version: str = __version__
    generated_at: datetime = Field(default_factory=datetime.now)
    mode: SummaryMode = "mean"
    benchmarks: list[ExportedBenchmark] = Field(default_factory=list)
    claims: list[ClaimVerdict] = Field(default_factory=list)


def export_group(group: BenchmarkGroup, mode: SummaryMode = "mean") -> ExportedBenchmark:
    summaries = group.summaries()
    rows = {r.name: r for r in comparison_rows(summaries, mode)}
    results: list[ExportedResult] = []
    for name, rs in group.result_sets.items():
        s = summaries[name]
        row = rows[name]
        ms = rs.measurements
        if row.baseline:
            rel, sigma = 1.0, 0.0
        elif row.relative is not None:
            rel, sigma = row.relative.ratio, row.relative.sigma
        else:
            rel = sigma = None
        results.append(
            ExportedResult(
                command=name,
                mean=s.mean,
                stddev=s.stddev,
                median=s.median,
                min=s.min,
                max=s.max,
                n=s.n,
                relative=rel,
                relative_sigma=sigma,
                user=sum(m.user_time for m in ms) / len(ms),
                system=sum(m.system_time for m in ms) / len(ms),
                times=[m.wall_time for m in ms],
                user_times=[m.user_time for m in ms],
                system_times=[m.system_time for m in ms],
                max_rss=[m.max_rss for m in ms],
                exit_codes=[m.exit_status for m in ms],
                session_id=rs.session_id,
                warmups_discarded=rs.warmups_discarded,
            )
        )
    return ExportedBenchmark(spec_id=group.spec_id, parameters=dict(group.point.assignments), results=results)


def build_export(
    groups: list[BenchmarkGroup], mode: SummaryMode = "mean", claims: list[ClaimVerdict] | None = None
) -> ExportDocument:
    return ExportDocument(
        mode=mode,
        benchmarks=[export_group(g, mode) for g in groups if g.result_sets],
        claims=claims or [],
    )


def export_json(project: Project, path: Path | None = None, mode: SummaryMode = "mean") -> ExportDocument:
    """Latest results of every spec plus the claim verdicts; written to ``path`` when given."""
    results = load_all_results(project.store)
    checks = latest_checks(project.store)
    groups: list[BenchmarkGroup] = []
    for spec in project.file.specs:
        groups.extend(latest_groups(results, spec=spec, checks=checks))
    verdicts: list[ClaimVerdict] = []
    for claim in project.file.claims:
        try:
            verdicts.append(evaluate_claim(claim, results, mode, checks))
        except MissingResults:
            verdicts.append(ClaimVerdict(claim_id=claim.claim_id, verdict="undetermined"))
    doc = build_export(groups, mode, verdicts)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(doc.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return doc


def load_export(path: Path) -> ExportDocument:
    if not path.exists():
        raise MissingFile(f"export file {path} not found")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ReportError(f"{path} is not valid JSON: {e}") from e
    version = data.get("schema_version") if isinstance(data, dict) else None
    if version != SCHEMA_VERSION:
        raise ReportError(f"{path}: unsupported schema_version {version!r} (expected {SCHEMA_VERSION})")
    try:
        return ExportDocument.model_validate(data)
    except ValidationError as e:
        raise ReportError(f"{path} is not a metibench export:\n{e}") from e
