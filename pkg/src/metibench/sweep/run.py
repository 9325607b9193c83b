from __future__ import annotations

import logging
from typing import Callable

from ..exceptions import RunError, SpecError, SweepAborted
from ..model.resolve import param_points
from ..model.results import ResultSet
from ..model.spec import BenchmarkSpec, NoiseThresholds, ParamPoint, SweepSpec, Variant, format_param_value
from ..runner.process import Executor, execute
from ..runner.series import run_interleaved
from ..stats.detectors import noise_report
from ..stats.summary import summarize
from ..store.results import ResultStore, Session
from .calibrate import calibrate_iterations
from .types import SweepPoint, SweepResult

log = logging.getLogger(__name__)

PointCallback = Callable[[float, list[ResultSet]], None]


def base_point(spec: BenchmarkSpec) -> ParamPoint:
    """First point of the spec's parameter grid."""
    points = param_points(spec)
    if not points:
        raise SpecError(f"spec {spec.id!r} has an empty parameter domain")
    return points[0]


def run_sweep(
    sweep: SweepSpec,
    spec: BenchmarkSpec,
    variants: list[Variant],
    *,
    store: ResultStore | None = None,
    session: Session | None = None,
    thresholds: NoiseThresholds | None = None,
    iter_param: str | None = None,
    calibrate: bool = False,
    timeout: float | None = None,
    executor: Executor = execute,
    on_point: PointCallback | None = None,
) -> SweepResult:
    """Run every variant at every sweep value, points in ascending order.

    Variants are interleaved within a point. With ``calibrate`` the iteration
    count is chosen per point on the first variant and applied to all of them.
    Completed points are persisted as they finish; a failure raises
    SweepAborted carrying the incomplete result.
    """
    if sweep.swept_param not in spec.params:
        raise SpecError(f"{sweep.swept_param!r} is not a parameter of {spec.id!r}")
    if calibrate and (iter_param is None or iter_param not in spec.params):
        raise SpecError("calibration needs --iter-param naming a declared parameter")
    if calibrate and iter_param == sweep.swept_param:
        raise SpecError("the swept parameter cannot also be the iteration parameter")

    session_id = session.session_id if session else ""
    fingerprint_id = session.fingerprint_id if session else ""
    base = base_point(spec)
    names = [v.name for v in variants]
    done: list[SweepPoint] = []

    def _result(complete: bool) -> SweepResult:
        return SweepResult(
            spec_id=spec.id,
            swept_param=sweep.swept_param,
            variants=names,
            points=done,
            session_id=session_id,
            log_scale=sweep.log_scale,
            complete=complete,
        )

    for value in sweep.values():
        point = base.with_value(sweep.swept_param, format_param_value(value))
        iterations = None
        try:
            if calibrate and iter_param:
                cal = calibrate_iterations(spec, variants[0], point, iter_param, timeout=timeout, executor=executor)
                iterations = cal.count
                point = point.with_value(iter_param, str(cal.count))
            result_sets = run_interleaved(
                spec,
                variants,
                point,
                policy=sweep.per_point_policy,
                session_id=session_id,
                fingerprint_id=fingerprint_id,
                timeout=timeout,
                executor=executor,
            )
        except RunError as e:
            partial = _result(complete=False)
            if store is not None:
                store.append_record("sweep", partial)
            raise SweepAborted(f"sweep of {spec.id} failed at {sweep.swept_param}={value:g}: {e}", partial) from e

        if store is not None and session is not None:
            store.append_results(session, result_sets)
        done.append(
            SweepPoint(
                value=value,
                summaries={rs.variant_name: summarize(rs.wall_times, rs.variant_name) for rs in result_sets},
                noise={rs.variant_name: noise_report(rs, thresholds) for rs in result_sets},
                iterations=iterations,
            )
        )
        if on_point:
            on_point(value, result_sets)

    result = _result(complete=True)
    if store is not None:
        store.append_record("sweep", result)
    return result


def load_sweeps(store: ResultStore, spec_id: str | None = None) -> list[SweepResult]:
    out = [SweepResult.model_validate(r) for r in store.records("sweep")]
    return [s for s in out if spec_id is None or s.spec_id == spec_id]
