"""
Benchmark vocabulary shared by every other module.

All types are frozen pydantic models; unknown fields are rejected so that a
typo in ``benchspec.json`` fails loudly instead of being ignored.
"""

from __future__ import annotations

import math
from typing import Annotated, Literal, Union

import numpy as np
from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, field_validator, model_validator


class Frozen(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


Severity = Literal["error", "warning", "note"]


class Diagnostic(Frozen):
    """A non-fatal finding: spec problems, noise warnings, environment notes."""

    code: str
    message: str
    severity: Severity = "warning"

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


def format_param_value(value: float) -> str:
    """Render a generated parameter value; integral values lose the trailing ``.0``."""
    rounded = float(f"{value:.12g}")
    if rounded.is_integer():
        return str(int(rounded))
    return repr(rounded)


def _as_text_list(value):
    # Lets users write [1000, 10000] or ["quicksort"] in the project file.
    if isinstance(value, list):
        return {"kind": "values", "values": value}
    return value


def _stringify(values):
    if isinstance(values, list):
        return [v if isinstance(v, str) else format_param_value(float(v)) for v in values]
    return values


class ExplicitDomain(Frozen):
    kind: Literal["values"] = "values"
    values: Annotated[list[str], BeforeValidator(_stringify)]

    def expand(self) -> list[str]:
        return list(self.values)


class RangeDomain(Frozen):
    kind: Literal["linear", "log"]
    start: float
    stop: float
    count: int = Field(ge=2)

    @model_validator(mode="after")
    def _check_bounds(self) -> "RangeDomain":
        if self.kind == "log" and (self.start <= 0 or self.stop <= 0):
            raise ValueError("log range bounds must be positive")
        if self.stop <= self.start:
            raise ValueError("range stop must exceed start")
        return self

    def numbers(self) -> list[float]:
        if self.kind == "log":
            raw = np.geomspace(self.start, self.stop, self.count)
        else:
            raw = np.linspace(self.start, self.stop, self.count)
        return [float(format_param_value(float(v))) for v in raw]

    def expand(self) -> list[str]:
        return [format_param_value(v) for v in self.numbers()]


ValueDomain = Annotated[
    Union[ExplicitDomain, RangeDomain],
    Field(discriminator="kind"),
    BeforeValidator(_as_text_list),
]


class RunPolicy(Frozen):
    mode: Literal["fixed", "adaptive"] = "adaptive"
    fixed_runs: int = Field(default=10, gt=0)
    min_runs: int = Field(default=10, gt=0)
    min_total_time: float = Field(default=3.0, ge=0)
    max_runs: int = Field(default=100, gt=0)

    @model_validator(mode="after")
    def _check_order(self) -> "RunPolicy":
        if self.min_runs > self.max_runs:
            raise ValueError("min_runs must not exceed max_runs")
        return self

    @classmethod
    def fixed(cls, runs: int) -> "RunPolicy":
        return cls(mode="fixed", fixed_runs=runs)


class Variant(Frozen):
    name: str = Field(min_length=1)
    bindings: dict[str, str] = Field(default_factory=dict)

    @field_validator("bindings")
    @classmethod
    def _non_empty_values(cls, v: dict[str, str]) -> dict[str, str]:
        empty = [k for k, val in v.items() if val == ""]
        if empty:
            raise ValueError(f"empty binding value for {', '.join(empty)}")
        return v


class ParamPoint(Frozen):
    assignments: dict[str, str] = Field(default_factory=dict)

    def label(self) -> str:
        if not self.assignments:
            return "-"
        return " ".join(f"{k}={v}" for k, v in self.assignments.items())

    def with_value(self, name: str, value: str) -> "ParamPoint":
        return ParamPoint(assignments={**self.assignments, name: value})


class BenchmarkSpec(Frozen):
    id: str
    command_template: str
    env_template: dict[str, str] = Field(default_factory=dict)
    params: dict[str, ValueDomain] = Field(default_factory=dict)
    variants: list[Variant] = Field(default_factory=list)
    warmup_count: int = Field(default=0, ge=0)
    run_policy: RunPolicy = Field(default_factory=RunPolicy)
    check_template: str | None = None
    expected_wall_range: tuple[float, float] | None = None
    tags: list[str] = Field(default_factory=list)
    enabled: bool = True
    shell: bool = False

    @field_validator("expected_wall_range")
    @classmethod
    def _check_range(cls, v: tuple[float, float] | None) -> tuple[float, float] | None:
        if v is not None and not (0 < v[0] < v[1]):
            raise ValueError("expected_wall_range must satisfy 0 < low < high")
        return v

    def effective_variants(self) -> list[Variant]:
        """Declared variants, or a single unnamed one bound to the spec id."""
        return list(self.variants) or [Variant(name=self.id)]

    def variant(self, name: str) -> Variant:
        for v in self.effective_variants():
            if v.name == name:
                return v
        raise KeyError(name)


class ConcreteInvocation(Frozen):
    argv: list[str]
    env: dict[str, str] = Field(default_factory=dict)
    spec_id: str
    variant_name: str
    param_point: ParamPoint = Field(default_factory=ParamPoint)

    def display(self) -> str:
        prefix = " ".join(f"{k}={v}" for k, v in self.env.items())
        return f"{prefix} {' '.join(self.argv)}".strip()


class SweepGenerator(Frozen):
    kind: Literal["linear", "log"]
    start: float
    stop: float
    count: int = Field(ge=2)

    def domain(self) -> RangeDomain:
        return RangeDomain(kind=self.kind, start=self.start, stop=self.stop, count=self.count)


class SweepSpec(Frozen):
    spec_id: str
    swept_param: str
    points: list[float] | None = None
    generator: SweepGenerator | None = None
    per_point_policy: RunPolicy = Field(default_factory=RunPolicy)

    @model_validator(mode="after")
    def _check_points(self) -> "SweepSpec":
        if (self.points is None) == (self.generator is None):
            raise ValueError("give exactly one of points or generator")
        if len(self.values()) < 2:
            raise ValueError("a sweep needs at least 2 points")
        return self

    @property
    def log_scale(self) -> bool:
        return self.generator is not None and self.generator.kind == "log"

    def values(self) -> list[float]:
        if self.generator is not None:
            return self.generator.domain().numbers()
        return sorted(set(float(p) for p in self.points or []))


class QualitativeClaim(Frozen):
    claim_id: str
    subject_variant: str
    reference_variant: str
    spec_ids: list[str] = Field(min_length=1)
    kind: Literal["noticeably_faster"] = "noticeably_faster"
    margin: float = Field(default=0.05, ge=0)
    param: str | None = None
    param_range: tuple[float, float] | None = None

    @model_validator(mode="after")
    def _distinct(self) -> "QualitativeClaim":
        if self.subject_variant == self.reference_variant:
            raise ValueError("subject and reference variants must differ")
        if (self.param is None) != (self.param_range is None):
            raise ValueError("param and param_range go together")
        return self

    def covers(self, assignments: dict[str, str]) -> bool:
        if self.param is None or self.param_range is None:
            return True
        raw = assignments.get(self.param)
        if raw is None:
            return False
        try:
            value = float(raw.replace("_", ""))
        except ValueError:
            return False
        low, high = self.param_range
        return low <= value <= high and not math.isnan(value)


class NoiseThresholds(Frozen):
    cv_ok: float = 0.02
    cv_high: float = 0.04
    system_high: float = 0.10
    trend_rho: float = 0.8
    trend_min_n: int = 8
    outlier_z: float = 3.5
