"""
The full markdown report of a project.

Sections, in order: qualitative claims, benchmarks (tables, noise, correctness,
explanations and conjectures), environment and sessions, expectations versus
outcomes.
"""

from __future__ import annotations

import itertools
import logging
from datetime import datetime

from ..exceptions import MissingFile, MissingResults
from ..journal import JournalEntry, derive_statuses, revised_ids
from ..model.results import CheckOutcome, ResultSet
from ..model.spec import BenchmarkSpec, Diagnostic
from ..project import Project
from ..runner.series import plausibility_check
from ..stats.detectors import detect_indistinguishable, noise_report
from ..stats.summary import SummaryMode
from ..store.results import ResultStore, Session, comparison_guard
from .claims import evaluate_claim
from .comparison import comparison_rows, render_comparison, render_summary_line
from .groups import BenchmarkGroup, CheckIndex, latest_groups

log = logging.getLogger(__name__)

POST_HOC_BADGE = "**[recorded after results]**"


def load_all_results(store: ResultStore) -> list[ResultSet]:
    try:
        return store.load_results()
    except MissingFile:
        return []


def latest_checks(store: ResultStore) -> CheckIndex:
    out: CheckIndex = {}
    if not store.results_path.exists():
        return out
    for c in store.load_checks():
        out[(c.spec_id, c.variant_name, c.param_point.label())] = c
    return out


def explanation_homes(
    entries: list[JournalEntry], specs: list[BenchmarkSpec], results: list[ResultSet]
) -> dict[int, str | None]:
    """The one spec each explanation is reported under (None: general).

    Links are followed transitively through referenced entries; sessions map
    to the specs measured in them. The first linked spec in project order wins.
    """
    by_id = {e.entry_id: e for e in entries}
    session_specs: dict[str, set[str]] = {}
    for rs in results:
        session_specs.setdefault(rs.session_id, set()).add(rs.spec_id)
    memo: dict[int, set[str]] = {}

    def linked(e: JournalEntry, seen: frozenset[int]) -> set[str]:
        if e.entry_id in memo:
            return memo[e.entry_id]
        out: set[str] = set(e.spec_refs())
        if e.spec_id:
            out.add(e.spec_id)
        for sid in e.session_refs():
            out |= session_specs.get(sid, set())
        for ref in e.entry_refs():
            target = by_id.get(ref)
            if target is not None and ref not in seen:
                out |= linked(target, seen | {ref})
        memo[e.entry_id] = out
        return out

    order = [s.id for s in specs]
    homes: dict[int, str | None] = {}
    for e in entries:
        if e.kind != "explanation":
            continue
        specs_of = linked(e, frozenset({e.entry_id}))
        homes[e.entry_id] = next((s for s in order if s in specs_of), None)
    return homes


def revision_needed(entry: JournalEntry) -> Diagnostic:
    return Diagnostic(
        code="RevisionNeeded",
        message=(
            f"explanation #{entry.entry_id} was refuted; "
            f"record a revised explanation with --ref entry:{entry.entry_id}"
        ),
    )


def _explanation_section(
    explanations: list[JournalEntry],
    statuses: dict[int, str],
    tests: dict[int, list[JournalEntry]],
    level: str,
    revised: set[int],
    warnings: list[Diagnostic],
) -> list[str]:
    out: list[str] = []
    confirmed = [e for e in explanations if statuses[e.entry_id] == "confirmed"]
    conjectures = [e for e in explanations if statuses[e.entry_id] in ("proposed", "conjecture")]
    refuted = [e for e in explanations if statuses[e.entry_id] == "refuted"]

    if confirmed:
        out += [f"{level} Explanations", ""]
        for e in confirmed:
            by = ", ".join(f"#{t.entry_id}" for t in tests.get(e.entry_id, []) if t.verdict == "confirmed")
            out.append(f"- (#{e.entry_id}) {e.text} _(confirmed by {by})_")
        out.append("")
    if conjectures:
        out += [f"{level} Conjectures", ""]
        for e in conjectures:
            why = "untestable" if statuses[e.entry_id] == "conjecture" else "not tested yet"
            out.append(f"- (#{e.entry_id}, {why}) we conjecture that {e.text}")
        out.append("")
    if refuted:
        out += [f"{level} Refuted explanations", ""]
        for e in refuted:
            out.append(f"- (#{e.entry_id}) ~~{e.text}~~")
            if e.entry_id not in revised:
                d = revision_needed(e)
                warnings.append(d)
                out.append(f"  - {d.severity}: {d}")
        out.append("")
    return out


def _correctness_lines(
    spec: BenchmarkSpec, group: BenchmarkGroup, checks: CheckIndex
) -> list[str]:
    if not spec.check_template:
        return ["_No correctness check._", ""]
    out: list[str] = []
    label = group.point.label()
    for v in spec.effective_variants():
        c = checks.get((spec.id, v.name, label))
        if c is not None and not c.passed:
            out.append(f"- **functionally incorrect**: `{v.name}` failed its correctness check (status {c.status})")
    if out:
        out.append("")
    return out


def _failed_only(
    spec: BenchmarkSpec, checks: CheckIndex, have: set[str]
) -> list[tuple[str, CheckOutcome]]:
    return [
        (label, c)
        for (sid, _, label), c in checks.items()
        if sid == spec.id and not c.passed and label not in have
    ]


def _noise_lines(group: BenchmarkGroup, project: Project) -> list[Diagnostic]:
    diags: list[Diagnostic] = []
    for name, rs in group.result_sets.items():
        diags.extend(noise_report(rs, project.file.noise).diagnostics(name))
    for a, b in itertools.combinations(group.result_sets.values(), 2):
        d = detect_indistinguishable(a, b)
        if d is not None:
            diags.append(d)
    return diags


def _session_table(sessions: list[Session]) -> list[str]:
    if not sessions:
        return ["_No sessions recorded._", ""]
    out = [
        "| Session | Started | Fingerprint | CPU | Governor | Fixed freq. | Turbo | AC power | OS | Tool |",
        "|:---|:---|:---|:---|:---|:---|:---|:---|:---|:---|",
    ]

    def fmt(v) -> str:
        return "unknown" if v is None else ("yes" if v is True else "no" if v is False else str(v))

    for s in sessions:
        fp = s.fingerprint
        out.append(
            "| "
            + " | ".join(
                [
                    s.session_id,
                    f"{s.started_at:%Y-%m-%d %H:%M}",
                    s.fingerprint_id,
                    fp.cpu_model,
                    fmt(fp.governor),
                    fmt(fp.frequency_fixed),
                    fmt(fp.turbo_enabled),
                    fmt(fp.on_ac_power),
                    fp.os_descriptor,
                    fp.tool_version,
                ]
            )
            + " |"
        )
    out.append("")
    return out


def _outcome_text(
    spec_id: str, store: ResultStore, results: list[ResultSet], mode: SummaryMode, checks: CheckIndex
) -> str:
    session_id = store.latest_session_id(spec_id)
    if session_id is None:
        return "no results yet"
    parts: list[str] = []
    latest = [r for r in results if r.session_id == session_id]
    for g in latest_groups(latest, spec_id=spec_id, checks=checks):
        rows = comparison_rows(g.summaries(), mode)
        if not rows:
            continue
        base = next(r for r in rows if r.baseline)
        others = ", ".join(f"`{r.name}` {r.relative_cell()}" for r in rows if not r.baseline)
        text = f"`{base.name}` fastest"
        if others:
            text += f" ({others} relative)"
        if g.point.assignments:
            text = f"[{g.point.label()}] " + text
        parts.append(text)
    return "; ".join(parts) or "no results yet"


def render_report(project: Project, mode: SummaryMode = "mean", now: datetime | None = None) -> str:
    store = project.store
    specs = project.file.specs
    results = load_all_results(store)
    entries = project.journal.entries()
    statuses = derive_statuses(entries)
    sessions = store.load_sessions()
    checks = latest_checks(store)

    tests: dict[int, list[JournalEntry]] = {}
    for e in entries:
        if e.kind == "test":
            tests.setdefault(e.entry_refs()[0], []).append(e)
    homes = explanation_homes(entries, specs, results)
    explanations = [e for e in entries if e.kind == "explanation"]
    revised = revised_ids(entries)

    out: list[str] = [
        "# Benchmark report",
        "",
        f"_Generated {(now or datetime.now()):%Y-%m-%d %H:%M}; central value: {mode}._",
        "",
        "## Claims",
        "",
    ]

    if not project.file.claims:
        out += ["_No claims declared._", ""]
    for claim in project.file.claims:
        head = (
            f"- **{claim.claim_id}**: `{claim.subject_variant}` is noticeably faster than "
            f"`{claim.reference_variant}` (margin {claim.margin:.0%})"
        )
        try:
            verdict = evaluate_claim(claim, results, mode, checks)
        except MissingResults as e:
            out += [f"{head}: **undetermined** ({e})"]
            continue
        out.append(f"{head}: **{verdict.verdict}**")
        for ev in verdict.evidence:
            out.append(f"  - {ev.spec_id} [{ev.point}]: {ev.ratio.format()} ({ev.verdict})")
        gm = verdict.geometric_mean
        if gm is not None and len(verdict.evidence) > 1:
            out.append(f"  - geometric mean of ratios: {gm:.2f}")
    out += ["", "## Benchmarks", ""]

    warnings: list[Diagnostic] = []
    shown_sessions: list[str] = []

    for spec in specs:
        out += [f"### {spec.id}", ""]
        out.append(f"Command: `{spec.command_template}`")
        if spec.tags:
            out.append(f"Tags: {', '.join(spec.tags)}")
        out.append("")
        groups = latest_groups(results, spec=spec, checks=checks)
        if not groups:
            out += ["_No results recorded._", ""]
        for g in groups:
            if g.point.assignments:
                out += [f"#### {g.point.label()}", ""]
            summaries = g.summaries()
            out.append(render_comparison(summaries, mode))
            line = render_summary_line(summaries, mode)
            if line:
                out += ["```", line.rstrip(), "```", ""]
            noise = _noise_lines(g, project)
            if noise:
                out += [f"- {d.severity}: {d}" for d in noise]
                out.append("")
            out += _correctness_lines(spec, g, checks)

            shown_sessions.extend(g.session_ids)
            for a, b in itertools.combinations(g.result_sets.values(), 2):
                d = comparison_guard(a, b, sessions)
                if d is not None:
                    warnings.append(d)
            for rs in g.result_sets.values():
                d = plausibility_check(rs, spec, mode)
                if d is not None:
                    warnings.append(d)

        for label, c in _failed_only(spec, checks, {g.point.label() for g in groups}):
            out.append(
                f"- **functionally incorrect**: `{c.variant_name}` [{label}] failed its correctness check "
                f"(status {c.status}); not measured"
            )
        out += _explanation_section(
            [e for e in explanations if homes[e.entry_id] == spec.id], statuses, tests, "####", revised, warnings
        )

    general = [e for e in explanations if homes[e.entry_id] is None]
    if general:
        out += ["### General", ""]
        out += _explanation_section(general, statuses, tests, "####", revised, warnings)

    out += ["## Environment and sessions", ""]
    used = [sessions[s] for s in dict.fromkeys(shown_sessions) if s in sessions]
    out += _session_table(used)
    bad = store.bad_lines()
    if bad:
        warnings.append(
            Diagnostic(code="UnreadableRecords", message=f"{len(bad)} unreadable line(s) skipped in the logs")
        )
    if warnings:
        out += ["Warnings:", ""]
        out += [f"- {d.severity}: {d}" for d in warnings]
        out.append("")

    out += ["## Expectations vs outcomes", ""]
    expectations = [e for e in entries if e.kind == "expectation"]
    if not expectations:
        out += ["_No expectations recorded._", ""]
    for e in expectations:
        badge = f" {POST_HOC_BADGE}" if e.post_hoc else ""
        out.append(f"- `{e.spec_id}` (#{e.entry_id}){badge}: expected {e.text}")
        out.append(f"  - outcome: {_outcome_text(e.spec_id or '', store, results, mode, checks)}")
    out.append("")
    return "\n".join(out)
