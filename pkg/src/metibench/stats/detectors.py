"""
Noise detectors over a single series of runs.

- coefficient of variation, with ok/elevated/high verdicts
- robust outliers by modified z-score over the median absolute deviation
- monotone drift across run order by Spearman rank correlation
- system-time share of wall time
- suspiciously identical pairs of series
"""

from __future__ import annotations

import logging
from typing import Literal, Sequence

import numpy as np
from pydantic import Field
from scipy import stats as sps

from ..exceptions import SeriesTooShort
from ..model.results import ResultSet
from ..model.spec import Diagnostic, Frozen, NoiseThresholds
from .summary import Summary, summarize

log = logging.getLogger(__name__)

MAD_SCALE = 0.6745
MIN_OUTLIER_N = 4


class TrendReport(Frozen):
    rho: float = Field(ge=-1.0, le=1.0)
    flagged: bool = False
    n: int = 0


class NoiseReport(Frozen):
    cv: float = Field(ge=0)
    cv_verdict: Literal["ok", "elevated", "high"]
    outlier_indices: list[int] = Field(default_factory=list)
    outliers_applicable: bool = True
    trend: TrendReport
    system_fraction: float = Field(ge=0)
    system_verdict: Literal["ok", "high"]

    def diagnostics(self, label: str = "") -> list[Diagnostic]:
        where = f"{label}: " if label else ""
        out: list[Diagnostic] = []
        if self.cv_verdict != "ok":
            out.append(
                Diagnostic(
                    code="HighVariation" if self.cv_verdict == "high" else "ElevatedVariation",
                    message=f"{where}run-to-run variation is {self.cv:.1%}; look for a source of environmental noise",
                    severity="warning" if self.cv_verdict == "high" else "note",
                )
            )
        if self.outlier_indices:
            runs = ", ".join(str(i) for i in self.outlier_indices)
            out.append(Diagnostic(code="Outliers", message=f"{where}outlier runs at index {runs}"))
        if self.trend.flagged:
            direction = "slower" if self.trend.rho > 0 else "faster"
            out.append(
                Diagnostic(
                    code="Trend",
                    message=f"{where}runs get progressively {direction} (rho {self.trend.rho:+.2f}); "
                    "check frequency scaling and thermal state",
                )
            )
        if self.system_verdict == "high":
            out.append(
                Diagnostic(
                    code="HighSystemTime",
                    message=f"{where}system time is {self.system_fraction:.1%} of wall time; "
                    "the benchmark may be measuring the kernel (I/O, allocation) rather than its workload",
                )
            )
        return out


def detect_outliers(samples: Sequence[float], threshold: float = 3.5) -> list[int]:
    """Indices whose modified z-score exceeds ``threshold``.

    When the MAD is zero every sample that differs from the median has an
    infinite score and is flagged.
    """
    if len(samples) < MIN_OUTLIER_N:
        raise SeriesTooShort(f"outlier detection needs at least {MIN_OUTLIER_N} runs")
    x = np.asarray(samples, dtype=float)
    med = np.median(x)
    dev = np.abs(x - med)
    mad = sps.median_abs_deviation(x, scale=1.0)
    if mad == 0:
        return [int(i) for i in np.flatnonzero(dev > 0)]
    z = MAD_SCALE * dev / mad
    return [int(i) for i in np.flatnonzero(z > threshold)]


def detect_trend(samples: Sequence[float], rho_threshold: float = 0.8, min_n: int = 8) -> TrendReport:
    """Spearman correlation between run index and time; samples must be in run order."""
    n = len(samples)
    x = np.asarray(samples, dtype=float)
    if n < 2 or np.ptp(x) == 0:
        return TrendReport(rho=0.0, flagged=False, n=n)
    rho = float(sps.spearmanr(np.arange(n), x)[0])
    rho = max(-1.0, min(1.0, rho))
    return TrendReport(rho=rho, flagged=n >= min_n and abs(rho) >= rho_threshold, n=n)


def cv_verdict(cv: float, thresholds: NoiseThresholds) -> Literal["ok", "elevated", "high"]:
    if cv < thresholds.cv_ok:
        return "ok"
    if cv < thresholds.cv_high:
        return "elevated"
    return "high"


def noise_report(rs: ResultSet, thresholds: NoiseThresholds | None = None) -> NoiseReport:
    t = thresholds or NoiseThresholds()
    walls = rs.wall_times
    s = summarize(walls)
    cv = s.cv
    try:
        outliers = detect_outliers(walls, t.outlier_z)
        applicable = True
    except SeriesTooShort:
        log.debug("outlier detection not applicable to %s (%d runs)", rs.key, len(walls))
        outliers, applicable = [], False
    mean_sys = float(np.mean([m.system_time for m in rs.measurements]))
    fraction = mean_sys / s.mean if s.mean > 0 else 0.0
    return NoiseReport(
        cv=cv,
        cv_verdict=cv_verdict(cv, t),
        outlier_indices=outliers,
        outliers_applicable=applicable,
        trend=detect_trend(walls, t.trend_rho, t.trend_min_n),
        system_fraction=fraction,
        system_verdict="high" if fraction > t.system_high else "ok",
    )


def indistinguishable(a: Summary, b: Summary) -> bool:
    if abs(a.mean - b.mean) > 0.5 * max(a.stddev, b.stddev):
        return False
    lo, hi = max(a.min, b.min), min(a.max, b.max)
    smaller = min(a.max - a.min, b.max - b.min)
    if smaller == 0:
        return hi >= lo
    return max(0.0, hi - lo) >= 0.9 * smaller


def detect_indistinguishable(a: ResultSet, b: ResultSet) -> Diagnostic | None:
    if not indistinguishable(summarize(a.wall_times), summarize(b.wall_times)):
        return None
    return Diagnostic(
        code="SuspiciouslyIdentical",
        message=(
            f"{a.variant_name!r} and {b.variant_name!r} are too close to tell apart. "
            "Check that they really run different code: deliberately slow one of them down "
            "(add a loop or a sleep), re-measure, and confirm its time moves."
        ),
    )
