from __future__ import annotations

from datetime import datetime
from typing import Literal

from pydantic import Field, model_validator

from ..model.spec import Frozen

EntryKind = Literal["expectation", "observation", "explanation", "test", "improvement"]
Verdict = Literal["confirmed", "refuted", "inconclusive", "untestable"]
Status = Literal["proposed", "confirmed", "refuted", "conjecture"]

REF_KINDS = ("entry", "session", "spec")


def parse_ref(ref: str) -> tuple[str, str]:
    """Split ``entry:3`` / ``session:<id>`` / ``spec:<id>``; a bare number means an entry."""
    if ref.isdigit():
        return "entry", ref
    kind, sep, value = ref.partition(":")
    if not sep or kind not in REF_KINDS or not value:
        raise ValueError(f"malformed reference {ref!r}; use entry:N, session:ID or spec:ID")
    return kind, value


def entry_ref(entry_id: int) -> str:
    return f"entry:{entry_id}"


class JournalEntry(Frozen):
    """One line of the journal; never rewritten once appended."""

    entry_id: int = Field(gt=0)
    kind: EntryKind
    text: str
    refs: list[str] = Field(default_factory=list)
    created_at: datetime = Field(default_factory=datetime.now)
    spec_id: str | None = None
    post_hoc: bool | None = None
    untestable: bool = False
    verdict: Verdict | None = None

    @model_validator(mode="after")
    def _kind_fields(self) -> "JournalEntry":
        for ref in self.refs:
            parse_ref(ref)
        if self.kind == "test":
            if self.verdict is None:
                raise ValueError("a test entry carries a verdict")
            if len(self.entry_refs()) != 1:
                raise ValueError("a test entry links exactly one explanation")
        elif self.verdict is not None:
            raise ValueError("only test entries carry a verdict")
        if self.kind == "expectation":
            if self.spec_id is None or self.post_hoc is None:
                raise ValueError("an expectation names its spec and whether it is post hoc")
        elif self.post_hoc is not None:
            raise ValueError("only expectations can be post hoc")
        if self.untestable and self.kind != "explanation":
            raise ValueError("only explanations can be marked untestable")
        return self

    def entry_refs(self) -> list[int]:
        return [int(v) for k, v in map(parse_ref, self.refs) if k == "entry"]

    def session_refs(self) -> list[str]:
        return [v for k, v in map(parse_ref, self.refs) if k == "session"]

    def spec_refs(self) -> list[str]:
        return [v for k, v in map(parse_ref, self.refs) if k == "spec"]


def derive_statuses(entries: list[JournalEntry]) -> dict[int, Status]:
    """Status of every explanation, replayed from its linked tests in file order.

    The latest decisive verdict wins; inconclusive tests leave the status alone.
    """
    status: dict[int, Status] = {
        e.entry_id: "conjecture" if e.untestable else "proposed" for e in entries if e.kind == "explanation"
    }
    for e in entries:
        if e.kind != "test" or e.verdict == "inconclusive":
            continue
        target = e.entry_refs()[0]
        if target not in status:
            continue
        status[target] = "conjecture" if e.verdict == "untestable" else e.verdict
    return status


def revised_ids(entries: list[JournalEntry]) -> set[int]:
    """Explanations that a later explanation links to (i.e. revises)."""
    out: set[int] = set()
    for e in entries:
        if e.kind == "explanation":
            out.update(i for i in e.entry_refs() if i < e.entry_id)
    return out
