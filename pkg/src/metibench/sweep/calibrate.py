"""
Pick an iteration count whose run lands in a target time window.

The default window is 200 ms to 1 s: long enough that process start-up is a
small share, short enough to repeat many times. The target is the geometric
middle of the window.
"""

from __future__ import annotations

import logging
import math

from ..exceptions import CalibrationFailed, NonZeroExit, SpecError
from ..model.resolve import resolve_invocation
from ..model.spec import BenchmarkSpec, Frozen, ParamPoint, Variant
from ..runner.process import Executor, execute

log = logging.getLogger(__name__)

WINDOW = (0.2, 1.0)
PROBE_MIN_TIME = 0.02
MAX_REPROBES = 2
MAX_PROBE_COUNT = 10**9


class Calibration(Frozen):
    count: int
    measured: float
    per_iteration: float
    note: str = ""


def target_time(window: tuple[float, float] = WINDOW) -> float:
    return math.sqrt(window[0] * window[1])


def iterations_for(per_iteration: float, window: tuple[float, float] = WINDOW, fixed: float = 0.0) -> int:
    """Iterations whose predicted time ``fixed + n * per_iteration`` hits the target."""
    if per_iteration <= 0:
        raise CalibrationFailed("per-iteration time must be positive")
    remaining = target_time(window) - fixed
    return max(1, round(remaining / per_iteration)) if remaining > 0 else 1


def _linear_fit(prev: tuple[int, float] | None, cur: tuple[int, float]) -> tuple[float, float]:
    """Per-iteration and fixed cost from two probes, or from one when only one is usable."""
    n, t = cur
    if prev is not None and n != prev[0] and (t - prev[1]) / (n - prev[0]) > 0:
        per_iteration = (t - prev[1]) / (n - prev[0])
        return per_iteration, max(0.0, t - per_iteration * n)
    return t / n, 0.0


def calibrate_iterations(
    spec: BenchmarkSpec,
    variant: Variant,
    point: ParamPoint,
    iter_param: str,
    *,
    window: tuple[float, float] = WINDOW,
    timeout: float | None = None,
    executor: Executor = execute,
) -> Calibration:
    if iter_param not in spec.params:
        raise SpecError(f"{iter_param!r} is not a parameter of {spec.id!r}")
    low, high = window

    def measure(n: int) -> float:
        inv = resolve_invocation(spec, variant, point.with_value(iter_param, str(n)))
        ex = executor(inv, timeout)
        if ex.measurement.exit_status != 0:
            raise NonZeroExit(ex.measurement.exit_status, ex.output_tail, inv.display())
        log.debug("calibration probe %s=%d took %.4fs", iter_param, n, ex.measurement.wall_time)
        return ex.measurement.wall_time

    n, t = 1, measure(1)
    if t > high:
        return Calibration(count=1, measured=t, per_iteration=t, note="Oversized: a single iteration exceeds the window")
    prev: tuple[int, float] | None = None
    while t < PROBE_MIN_TIME:
        if n >= MAX_PROBE_COUNT:
            raise CalibrationFailed(f"{iter_param} does not seem to scale the work of {spec.id}/{variant.name}")
        prev = (n, t)
        n *= 10
        t = measure(n)

    for _ in range(1 + MAX_REPROBES):
        per_iteration, fixed = _linear_fit(prev, (n, t))
        prev = (n, t)
        n = iterations_for(per_iteration, window, fixed)
        t = measure(n)
        if low <= t <= high:
            return Calibration(count=n, measured=t, per_iteration=per_iteration)
        if n == 1 and t > high:
            return Calibration(count=1, measured=t, per_iteration=t, note="Oversized: a single iteration exceeds the window")
    raise CalibrationFailed(
        f"could not land {spec.id}/{variant.name} in {low:g}-{high:g}s (last: {iter_param}={n} took {t:.3f}s)"
    )
