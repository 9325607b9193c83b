"""
One measuring session: checks, interleaved runs, persistence and analysis of
every selected spec at every point of its parameter grid.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable

from .envcheck import EnvironmentFingerprint, capture_fingerprint
from .exceptions import CheckFailure, SpecError
from .model.resolve import param_points, validate_spec
from .model.results import CheckOutcome, ResultSet
from .model.spec import BenchmarkSpec, Diagnostic, ParamPoint
from .project import Project, spec_file_hash
from .runner.process import Executor, execute
from .runner.series import RunCallback, check_correctness, plausibility_check, run_interleaved
from .stats.detectors import NoiseReport, detect_indistinguishable, noise_report
from .stats.summary import SummaryMode
from .store.results import Session

log = logging.getLogger(__name__)


@dataclass
class PointOutcome:
    spec: BenchmarkSpec
    point: ParamPoint
    result_sets: list[ResultSet] = field(default_factory=list)
    checks: list[CheckOutcome] = field(default_factory=list)
    noise: dict[str, NoiseReport] = field(default_factory=dict)
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def incorrect(self) -> list[str]:
        return [c.variant_name for c in self.checks if not c.passed]


@dataclass
class SessionOutcome:
    session: Session
    points: list[PointOutcome] = field(default_factory=list)
    reminders: list[Diagnostic] = field(default_factory=list)


def preflight(specs: list[BenchmarkSpec]) -> list[Diagnostic]:
    """Validate every spec before anything runs; errors raise SpecError."""
    diags: list[Diagnostic] = []
    for spec in specs:
        diags.extend(validate_spec(spec))
    errors = [d for d in diags if d.severity == "error"]
    if errors:
        raise SpecError("invalid benchmark spec:\n" + "\n".join(f"  {d}" for d in errors))
    return diags


def missing_expectations(project: Project, specs: list[BenchmarkSpec]) -> list[Diagnostic]:
    expected = {e.spec_id for e in project.journal.entries() if e.kind == "expectation"}
    return [
        Diagnostic(
            code="ExpectationMissing",
            message=f"no expectation recorded for {s.id!r}; "
            f"write one down before looking at results (metibench journal expect {s.id} ...)",
            severity="note",
        )
        for s in specs
        if s.id not in expected
    ]


def measure_point(
    project: Project,
    spec: BenchmarkSpec,
    point: ParamPoint,
    session: Session,
    *,
    mode: SummaryMode = "mean",
    timeout: float | None = None,
    executor: Executor = execute,
    on_run: RunCallback | None = None,
) -> PointOutcome:
    store = project.store
    outcome = PointOutcome(spec=spec, point=point)

    correct = []
    for variant in spec.effective_variants():
        try:
            check = check_correctness(spec, variant, point, session_id=session.session_id, timeout=timeout, executor=executor)
        except CheckFailure as e:
            check = e.outcome
            outcome.diagnostics.append(
                Diagnostic(
                    code="FunctionallyIncorrect",
                    message=f"{spec.id}/{variant.name} [{point.label()}] failed its correctness check "
                    f"(status {e.status}); not measured",
                    severity="error",
                )
            )
        else:
            correct.append(variant)
        if check is not None:
            store.append_check(check)
            outcome.checks.append(check)

    if not correct:
        return outcome

    outcome.result_sets = run_interleaved(
        spec,
        correct,
        point,
        session_id=session.session_id,
        fingerprint_id=session.fingerprint_id,
        timeout=timeout,
        executor=executor,
        on_run=on_run,
    )
    store.append_results(session, outcome.result_sets)

    for rs in outcome.result_sets:
        report = noise_report(rs, project.file.noise)
        outcome.noise[rs.variant_name] = report
        outcome.diagnostics.extend(report.diagnostics(rs.variant_name))
        plausible = plausibility_check(rs, spec, mode)
        if plausible is not None:
            outcome.diagnostics.append(plausible)
    for a, b in itertools.combinations(outcome.result_sets, 2):
        same = detect_indistinguishable(a, b)
        if same is not None:
            outcome.diagnostics.append(same)
    return outcome


def run_session(
    project: Project,
    specs: list[BenchmarkSpec],
    *,
    mode: SummaryMode = "mean",
    timeout: float | None = None,
    executor: Executor = execute,
    fingerprint: EnvironmentFingerprint | None = None,
    on_run: RunCallback | None = None,
    on_point: Callable[[PointOutcome], None] | None = None,
) -> SessionOutcome:
    """Measure ``specs`` under the store's writer lock, appending as each point completes."""
    with project.store.lock():
        fp = fingerprint or capture_fingerprint()
        session = project.store.open_session(fp, spec_file_hash(project.root))
        result = SessionOutcome(session=session)
        for spec in specs:
            for point in param_points(spec):
                log.debug("measuring %s [%s]", spec.id, point.label())
                po = measure_point(
                    project, spec, point, session, mode=mode, timeout=timeout, executor=executor, on_run=on_run
                )
                result.points.append(po)
                if on_point:
                    on_point(po)
    result.reminders = missing_expectations(project, specs)
    return result
