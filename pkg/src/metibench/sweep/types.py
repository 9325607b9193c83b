from __future__ import annotations

from pydantic import Field, model_validator

from ..model.spec import Frozen
from ..stats.detectors import NoiseReport
from ..stats.summary import Summary


class SweepPoint(Frozen):
    value: float
    summaries: dict[str, Summary]
    noise: dict[str, NoiseReport] = Field(default_factory=dict)
    iterations: int | None = None


class SweepResult(Frozen):
    spec_id: str
    swept_param: str
    variants: list[str]
    points: list[SweepPoint] = Field(default_factory=list)
    session_id: str = ""
    log_scale: bool = False
    complete: bool = True

    @model_validator(mode="after")
    def _consistent(self) -> "SweepResult":
        values = [p.value for p in self.points]
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("sweep values must be strictly increasing")
        for p in self.points:
            if set(p.summaries) != set(self.variants):
                raise ValueError(f"point {p.value:g} lacks results for some variants")
        return self
