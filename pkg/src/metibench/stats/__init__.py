from .detectors import (
    NoiseReport,
    TrendReport,
    detect_indistinguishable,
    detect_outliers,
    detect_trend,
    indistinguishable,
    noise_report,
)
from .summary import RatioWithUncertainty, Summary, SummaryMode, compare, geometric_mean, summarize

__all__ = [
    "NoiseReport",
    "RatioWithUncertainty",
    "Summary",
    "SummaryMode",
    "TrendReport",
    "compare",
    "detect_indistinguishable",
    "detect_outliers",
    "detect_trend",
    "geometric_mean",
    "indistinguishable",
    "noise_report",
    "summarize",
]
