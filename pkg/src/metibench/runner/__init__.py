from .overhead import OverheadEstimate, estimate_overhead, split_overhead
from .process import Execution, Executor, execute, run_once
from .series import (
    check_correctness,
    plausibility_check,
    policy_satisfied,
    run_interleaved,
    run_series,
)

__all__ = [
    "Execution",
    "Executor",
    "OverheadEstimate",
    "check_correctness",
    "estimate_overhead",
    "execute",
    "plausibility_check",
    "policy_satisfied",
    "run_interleaved",
    "run_series",
    "run_once",
    "split_overhead",
]
