from __future__ import annotations

from pydantic import Field, model_validator

from ..exceptions import SpecError
from ..model.spec import BenchmarkSpec, Frozen, ParamPoint, Variant
from ..stats.summary import Summary, SummaryMode, summarize
from .series import run_series


class OverheadEstimate(Frozen):
    fixed_overhead: float = Field(ge=0)
    per_iteration: float = Field(ge=0)
    n_low: int = Field(gt=0)
    n_high: int
    low: Summary
    high: Summary
    system_fraction: float = 0.0
    notes: list[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _doubling(self) -> "OverheadEstimate":
        if self.n_high != 2 * self.n_low:
            raise ValueError("n_high must be twice n_low")
        return self

    @property
    def overhead_share(self) -> float:
        return self.fixed_overhead / self.high.mean if self.high.mean > 0 else 0.0


def split_overhead(t_low: float, t_high: float, n_low: int) -> tuple[float, float, list[str]]:
    """Fixed and per-iteration cost from times at ``n_low`` and ``2 * n_low`` iterations."""
    notes: list[str] = []
    fixed = 2 * t_low - t_high
    per_iteration = (t_high - t_low) / n_low
    if fixed < 0:
        notes.append("NoiseSuspected: negative fixed overhead clamped to 0")
        fixed = 0.0
    if per_iteration < 0:
        notes.append("NoiseSuspected: doubling the iterations did not increase the time")
        per_iteration = 0.0
    return fixed, per_iteration, notes


def estimate_overhead(
    spec: BenchmarkSpec,
    variant: Variant,
    point: ParamPoint,
    iter_param: str,
    n_low: int,
    *,
    mode: SummaryMode = "mean",
    **run_kwargs,
) -> OverheadEstimate:
    """Time the benchmark at ``n_low`` and ``2 * n_low`` iterations.

    ``iter_param`` must scale the work linearly; that is the caller's
    responsibility.
    """
    if iter_param not in spec.params:
        raise SpecError(f"{iter_param!r} is not a parameter of {spec.id!r}")
    if n_low <= 0:
        raise SpecError("n_low must be positive")
    low_rs = run_series(spec, variant, point.with_value(iter_param, str(n_low)), **run_kwargs)
    high_rs = run_series(spec, variant, point.with_value(iter_param, str(2 * n_low)), **run_kwargs)
    low, high = summarize(low_rs.wall_times), summarize(high_rs.wall_times)
    fixed, per_iteration, notes = split_overhead(low.central(mode), high.central(mode), n_low)
    sys_mean = sum(m.system_time for m in high_rs.measurements) / len(high_rs.measurements)
    return OverheadEstimate(
        fixed_overhead=fixed,
        per_iteration=per_iteration,
        n_low=n_low,
        n_high=2 * n_low,
        low=low,
        high=high,
        system_fraction=sys_mean / high.mean if high.mean > 0 else 0.0,
        notes=notes,
    )
