"""
Per-series summaries and pairwise speedup ratios.

Ratios carry an uncertainty propagated from the relative standard deviations
of both series, which is how the ``1.30 ± 0.04 times faster`` figure of the
usual command-line benchmarking tools is obtained.
"""

from __future__ import annotations

import math
from typing import Literal, Sequence

import numpy as np
from pydantic import Field
from scipy import stats as sps

from ..exceptions import DegenerateSummary, EmptySeries, NonPositiveRatio, StatsError
from ..model.spec import Frozen

SummaryMode = Literal["mean", "min"]


class Summary(Frozen):
    mean: float
    stddev: float = Field(ge=0)
    min: float
    max: float
    median: float
    n: int = Field(gt=0)
    single_sample: bool = False
    label: str = ""

    def central(self, mode: SummaryMode = "mean") -> float:
        return self.mean if mode == "mean" else self.min

    @property
    def cv(self) -> float:
        return self.stddev / self.mean if self.mean > 0 else 0.0

    def scaled(self, k: float) -> "Summary":
        return self.model_copy(
            update={
                "mean": self.mean * k,
                "stddev": self.stddev * k,
                "min": self.min * k,
                "max": self.max * k,
                "median": self.median * k,
            }
        )


class RatioWithUncertainty(Frozen):
    ratio: float = Field(gt=0)
    sigma: float = Field(ge=0)
    numerator_id: str = ""
    denominator_id: str = ""
    mode: SummaryMode = "mean"

    def format(self) -> str:
        return f"{self.ratio:.2f} ± {self.sigma:.2f}"


def summarize(samples: Sequence[float], label: str = "") -> Summary:
    if len(samples) == 0:
        raise EmptySeries("cannot summarize an empty series")
    x = np.asarray(samples, dtype=float)
    if np.any(x < 0) or not np.all(np.isfinite(x)):
        raise StatsError("samples must be finite and non-negative")
    lo, hi = float(x.min()), float(x.max())
    n = len(x)
    # np.mean can drift by an ulp outside [min, max] on near-constant input
    mean = min(max(float(x.mean()), lo), hi)
    return Summary(
        mean=mean,
        stddev=float(x.std(ddof=1)) if n > 1 else 0.0,
        min=lo,
        max=hi,
        median=float(np.median(x)),
        n=n,
        single_sample=n == 1,
        label=label,
    )


def compare(a: Summary, b: Summary, mode: SummaryMode = "mean") -> RatioWithUncertainty:
    """Ratio of ``a`` over ``b``; > 1 means ``a`` is slower.

    With ``mode="min"`` the ratio is taken on minima but the uncertainty still
    uses the relative standard deviations around the means.
    """
    ca, cb = a.central(mode), b.central(mode)
    for s, c in ((a, ca), (b, cb)):
        if c <= 0 or s.mean <= 0:
            raise DegenerateSummary(f"summary {s.label or '?'} has a zero central value")
    ratio = ca / cb
    sigma = ratio * math.sqrt((a.stddev / a.mean) ** 2 + (b.stddev / b.mean) ** 2)
    return RatioWithUncertainty(
        ratio=ratio,
        sigma=sigma,
        numerator_id=a.label,
        denominator_id=b.label,
        mode=mode,
    )


def geometric_mean(ratios: Sequence[float]) -> float:
    """The only aggregate offered for ratios across benchmarks."""
    if len(ratios) == 0:
        raise NonPositiveRatio("geometric mean of an empty list")
    r = np.asarray(ratios, dtype=float)
    if np.any(r <= 0):
        raise NonPositiveRatio("all ratios must be positive")
    return float(sps.gmean(r))
