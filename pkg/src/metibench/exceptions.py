class MetiBenchError(Exception):
    """Base exception for metibench errors."""


class SpecError(MetiBenchError):
    """A benchmark spec or project file is malformed."""


class UnboundPlaceholder(SpecError):
    def __init__(self, name: str, template: str):
        super().__init__(f"placeholder {{{name}}} in {template!r} has no binding or parameter value")
        self.name = name


class ConflictingBinding(SpecError):
    def __init__(self, name: str, variant: str):
        super().__init__(f"{name!r} is bound both by variant {variant!r} and by the parameter point")
        self.name = name


class ProjectFileError(SpecError):
    pass


class RunError(MetiBenchError):
    """A measured child process could not be run to completion."""


class SpawnFailure(RunError):
    pass


class RunTimeout(RunError):
    pass


class NonZeroExit(RunError):
    def __init__(self, status: int, output_tail: str, command: str = ""):
        msg = f"command exited with status {status}"
        if command:
            msg += f": {command}"
        if output_tail:
            msg += f"\nOutput (tail):\n{output_tail}"
        super().__init__(msg)
        self.status = status
        self.output_tail = output_tail


class CheckFailure(RunError):
    def __init__(self, status: int, output_tail: str, variant: str = "", outcome=None):
        super().__init__(f"correctness check failed for {variant or 'variant'} (status {status})")
        self.status = status
        self.output_tail = output_tail
        self.variant = variant
        self.outcome = outcome


class StatsError(MetiBenchError):
    pass


class EmptySeries(StatsError):
    pass


class DegenerateSummary(StatsError):
    pass


class NonPositiveRatio(StatsError):
    pass


class SeriesTooShort(StatsError):
    pass


class SweepError(MetiBenchError):
    pass


class CalibrationFailed(SweepError):
    pass


class SweepAborted(SweepError):
    def __init__(self, message: str, partial):
        super().__init__(message)
        self.partial = partial


class JournalError(MetiBenchError):
    pass


class DanglingRef(JournalError):
    pass


class UnknownExplanation(JournalError):
    pass


class StoreError(MetiBenchError):
    pass


class MissingFile(StoreError):
    pass


class StoreLocked(StoreError):
    pass


class ReportError(MetiBenchError):
    pass


class MissingResults(ReportError):
    pass
