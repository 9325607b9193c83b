from .fingerprint import (
    EnvironmentFingerprint,
    FieldMismatch,
    capture_fingerprint,
    check_environment,
    diff_fingerprints,
    remediation_hints,
)

__all__ = [
    "EnvironmentFingerprint",
    "FieldMismatch",
    "capture_fingerprint",
    "check_environment",
    "diff_fingerprints",
    "remediation_hints",
]
