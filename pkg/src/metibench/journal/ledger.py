"""
The analysis journal: ``journal.ndjson`` in the project directory.

Expectations are written before measuring, observations and explanations
after, and every explanation is meant to be tested. Entries are appended and
never changed; an explanation's status is derived from the tests that link it.
"""

from __future__ import annotations

import logging
from pathlib import Path

from pydantic import Field, ValidationError

from ..exceptions import DanglingRef, UnknownExplanation
from ..model.spec import Frozen
from ..store.results import ResultStore, append_lines, read_records
from .entries import EntryKind, JournalEntry, Status, Verdict, derive_statuses, entry_ref, parse_ref, revised_ids

log = logging.getLogger(__name__)

JOURNAL_FILE = "journal.ndjson"


class StatusReport(Frozen):
    untested: list[JournalEntry] = Field(default_factory=list)
    refuted_unrevised: list[JournalEntry] = Field(default_factory=list)
    missing_expectation: list[str] = Field(default_factory=list)
    post_hoc: list[JournalEntry] = Field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not (self.untested or self.refuted_unrevised or self.missing_expectation or self.post_hoc)


class Journal:
    def __init__(self, root: Path, store: ResultStore | None = None):
        self.root = Path(root)
        self.store = store or ResultStore(self.root)

    @property
    def path(self) -> Path:
        return self.root / JOURNAL_FILE

    def entries(self) -> list[JournalEntry]:
        records, _ = read_records(self.path)
        out: list[JournalEntry] = []
        for raw in records:
            try:
                out.append(JournalEntry.model_validate(raw))
            except ValidationError as e:
                log.warning("skipping invalid journal entry: %s", e.errors()[0]["msg"])
        return out

    def get(self, entry_id: int) -> JournalEntry | None:
        return next((e for e in self.entries() if e.entry_id == entry_id), None)

    def statuses(self) -> dict[int, Status]:
        return derive_statuses(self.entries())

    def _append(self, kind: EntryKind, text: str, refs: list[str] | None = None, **fields) -> JournalEntry:
        existing = self.entries()
        next_id = (existing[-1].entry_id if existing else 0) + 1
        entry = JournalEntry(entry_id=next_id, kind=kind, text=text, refs=refs or [], **fields)
        append_lines(self.path, [entry.model_dump_json()])
        return entry

    def _check_refs(self, refs: list[str], allowed: set[str]) -> None:
        by_id = {e.entry_id: e for e in self.entries()}
        sessions = None
        for ref in refs:
            try:
                kind, value = parse_ref(ref)
            except ValueError as e:
                raise DanglingRef(str(e)) from e
            if kind == "entry":
                target = by_id.get(int(value))
                if target is None or target.kind not in allowed:
                    raise DanglingRef(f"{ref} does not name an existing {' or '.join(sorted(allowed))} entry")
            elif kind == "session":
                if sessions is None:
                    sessions = self.store.load_sessions()
                if value not in sessions:
                    raise DanglingRef(f"{ref} does not name a recorded session")

    def record_expectation(self, spec_id: str, text: str) -> JournalEntry:
        """Flagged post hoc when results for the spec already exist."""
        post_hoc = self.store.has_results(spec_id)
        return self._append("expectation", text, [f"spec:{spec_id}"], spec_id=spec_id, post_hoc=post_hoc)

    def record_observation(self, text: str, refs: list[str] | None = None) -> JournalEntry:
        refs = refs or []
        self._check_refs(refs, {"expectation", "observation"})
        return self._append("observation", text, refs)

    def record_explanation(self, text: str, refs: list[str], *, untestable: bool = False) -> JournalEntry:
        self._check_refs(refs, {"observation", "explanation"})
        return self._append("explanation", text, refs, untestable=untestable)

    def attach_test(self, explanation_id: int, text: str, verdict: Verdict) -> JournalEntry:
        target = self.get(explanation_id)
        if target is None or target.kind != "explanation":
            raise UnknownExplanation(f"entry {explanation_id} is not an explanation")
        return self._append("test", text, [entry_ref(explanation_id)], verdict=verdict)

    def mark_conjecture(self, explanation_id: int, text: str) -> JournalEntry:
        return self.attach_test(explanation_id, text, "untestable")

    def record_improvement(self, text: str, refs: list[str] | None = None) -> JournalEntry:
        refs = refs or []
        self._check_refs(refs, {"observation", "explanation", "test"})
        return self._append("improvement", text, refs)

    def status(self, spec_ids: list[str] | None = None) -> StatusReport:
        """What is still open in the measure/explain/test loop.

        ``spec_ids`` restricts the missing-expectation check to those specs.
        """
        return journal_status(self.entries(), self.store, spec_ids)


def journal_status(
    entries: list[JournalEntry], store: ResultStore, spec_ids: list[str] | None = None
) -> StatusReport:
    statuses = derive_statuses(entries)
    revised = revised_ids(entries)
    explanations = [e for e in entries if e.kind == "explanation"]
    expected = {e.spec_id for e in entries if e.kind == "expectation"}
    measured = list(dict.fromkeys(r.get("spec_id") for r in store.records("result")))
    if spec_ids is not None:
        measured = [s for s in measured if s in spec_ids]
    return StatusReport(
        untested=[e for e in explanations if statuses[e.entry_id] == "proposed"],
        refuted_unrevised=[
            e for e in explanations if statuses[e.entry_id] == "refuted" and e.entry_id not in revised
        ],
        missing_expectation=[s for s in measured if s and s not in expected],
        post_hoc=[e for e in entries if e.kind == "expectation" and e.post_hoc],
    )
