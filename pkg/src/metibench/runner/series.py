from __future__ import annotations

import logging
from datetime import datetime
from typing import Callable

from ..exceptions import CheckFailure, NonZeroExit
from ..model.resolve import resolve_check, resolve_invocation
from ..model.results import CheckOutcome, Measurement, ResultSet
from ..model.spec import BenchmarkSpec, ConcreteInvocation, Diagnostic, ParamPoint, RunPolicy, Variant
from ..stats.summary import SummaryMode, summarize
from .process import Execution, Executor, execute

log = logging.getLogger(__name__)

RunCallback = Callable[[str, int, Measurement], None]


def policy_satisfied(policy: RunPolicy, runs: list[Measurement]) -> bool:
    n = len(runs)
    if policy.mode == "fixed":
        return n >= policy.fixed_runs
    if n >= policy.max_runs:
        return True
    return n >= policy.min_runs and sum(m.wall_time for m in runs) >= policy.min_total_time


def _checked(executor: Executor, inv: ConcreteInvocation, timeout: float | None) -> Execution:
    ex = executor(inv, timeout)
    if ex.measurement.exit_status != 0:
        raise NonZeroExit(ex.measurement.exit_status, ex.output_tail, inv.display())
    return ex


def run_interleaved(
    spec: BenchmarkSpec,
    variants: list[Variant],
    point: ParamPoint,
    *,
    policy: RunPolicy | None = None,
    session_id: str = "",
    fingerprint_id: str = "",
    timeout: float | None = None,
    executor: Executor = execute,
    on_run: RunCallback | None = None,
) -> list[ResultSet]:
    """Measure several variants of one point round-robin (A, B, A, B, ...).

    Each variant stops once its own policy is satisfied; the others continue.
    Any non-zero exit aborts the whole series.
    """
    policy = policy or spec.run_policy
    invs = {v.name: resolve_invocation(spec, v, point) for v in variants}
    started = datetime.now()

    for _ in range(spec.warmup_count):
        for name, inv in invs.items():
            _checked(executor, inv, timeout)

    runs: dict[str, list[Measurement]] = {name: [] for name in invs}
    notes: dict[str, set[str]] = {name: set() for name in invs}
    active = list(invs)
    while active:
        for name in list(active):
            ex = _checked(executor, invs[name], timeout)
            runs[name].append(ex.measurement)
            notes[name].update(ex.notes)
            if on_run:
                on_run(name, len(runs[name]), ex.measurement)
            if policy_satisfied(policy, runs[name]):
                active.remove(name)

    return [
        ResultSet(
            spec_id=spec.id,
            variant_name=name,
            param_point=point,
            measurements=runs[name],
            warmups_discarded=spec.warmup_count,
            session_id=session_id,
            fingerprint_id=fingerprint_id,
            started_at=started,
            notes=sorted(notes[name]),
        )
        for name in invs
    ]


def run_series(spec: BenchmarkSpec, variant: Variant, point: ParamPoint, **kwargs) -> ResultSet:
    return run_interleaved(spec, [variant], point, **kwargs)[0]


def check_correctness(
    spec: BenchmarkSpec,
    variant: Variant,
    point: ParamPoint,
    *,
    session_id: str = "",
    timeout: float | None = None,
    executor: Executor = execute,
) -> CheckOutcome | None:
    """Run the spec's check command once; ``None`` when the spec has none.

    Raises CheckFailure (carrying the outcome) when the check exits non-zero.
    """
    inv = resolve_check(spec, variant, point)
    if inv is None:
        return None
    ex = executor(inv, timeout)
    outcome = CheckOutcome(
        spec_id=spec.id,
        variant_name=variant.name,
        param_point=point,
        session_id=session_id,
        passed=ex.measurement.exit_status == 0,
        status=ex.measurement.exit_status,
        output_tail=ex.output_tail,
    )
    if not outcome.passed:
        raise CheckFailure(outcome.status, outcome.output_tail, variant.name, outcome)
    return outcome


def plausibility_check(rs: ResultSet, spec: BenchmarkSpec, mode: SummaryMode = "mean") -> Diagnostic | None:
    if spec.expected_wall_range is None:
        return None
    low, high = spec.expected_wall_range
    central = summarize(rs.wall_times).central(mode)
    where = f"{rs.spec_id}/{rs.variant_name} [{rs.param_point.label()}]"
    if central < low:
        return Diagnostic(
            code="WronglyFast",
            message=f"{where}: {mode} {central:.3g}s is below the expected {low:g}-{high:g}s; "
            "check that the benchmark really does its work",
        )
    if central > high:
        return Diagnostic(
            code="WronglySlow",
            message=f"{where}: {mode} {central:.3g}s is above the expected {low:g}-{high:g}s",
        )
    return None
