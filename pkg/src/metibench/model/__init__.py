from .resolve import (
    param_points,
    placeholders,
    resolve_check,
    resolve_invocation,
    substitute,
    validate_spec,
)
from .results import CheckOutcome, Measurement, ResultSet
from .spec import (
    BenchmarkSpec,
    ConcreteInvocation,
    Diagnostic,
    ExplicitDomain,
    NoiseThresholds,
    ParamPoint,
    QualitativeClaim,
    RangeDomain,
    RunPolicy,
    SweepGenerator,
    SweepSpec,
    Variant,
    format_param_value,
)

__all__ = [
    "BenchmarkSpec",
    "CheckOutcome",
    "ConcreteInvocation",
    "Diagnostic",
    "ExplicitDomain",
    "Measurement",
    "NoiseThresholds",
    "ParamPoint",
    "QualitativeClaim",
    "RangeDomain",
    "ResultSet",
    "RunPolicy",
    "SweepGenerator",
    "SweepSpec",
    "Variant",
    "format_param_value",
    "param_points",
    "placeholders",
    "resolve_check",
    "resolve_invocation",
    "substitute",
    "validate_spec",
]
