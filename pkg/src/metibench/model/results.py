from __future__ import annotations

from datetime import datetime

from pydantic import Field, model_validator

from .spec import Frozen, ParamPoint


class Measurement(Frozen):
    """One execution of a child process."""

    wall_time: float = Field(ge=0)
    user_time: float = Field(ge=0)
    system_time: float = Field(ge=0)
    max_rss: int = Field(default=0, ge=0)
    exit_status: int = 0


class ResultSet(Frozen):
    """Measurements of one (spec, variant, point) in execution order."""

    spec_id: str
    variant_name: str
    param_point: ParamPoint = Field(default_factory=ParamPoint)
    measurements: list[Measurement]
    warmups_discarded: int = 0
    session_id: str = ""
    fingerprint_id: str = ""
    started_at: datetime = Field(default_factory=datetime.now)
    notes: list[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _non_empty(self) -> "ResultSet":
        if not self.measurements:
            raise ValueError("a result set holds at least one measurement")
        return self

    @property
    def wall_times(self) -> list[float]:
        return [m.wall_time for m in self.measurements]

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.spec_id, self.variant_name, self.param_point.label())


class CheckOutcome(Frozen):
    """Result of running a spec's correctness command for one variant and point."""

    spec_id: str
    variant_name: str
    param_point: ParamPoint = Field(default_factory=ParamPoint)
    session_id: str = ""
    passed: bool
    status: int = 0
    output_tail: str = ""
