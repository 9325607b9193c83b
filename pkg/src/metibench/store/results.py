"""
Append-only result logs inside a project directory.

Files (one JSON record per line, ``format_version`` on every record):

- ``sessions.ndjson``: one record per measuring session with its fingerprint
- ``results.ndjson``: result sets, correctness-check outcomes and sweep records
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import secrets
from datetime import datetime
from pathlib import Path
from typing import Any, Callable, Iterable, Literal

from pydantic import BaseModel, Field, ValidationError

from ..envcheck import EnvironmentFingerprint, diff_fingerprints
from ..exceptions import MissingFile
from ..model.results import CheckOutcome, ResultSet
from ..model.spec import Diagnostic, Frozen
from .lock import writer_lock

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
RESULTS_FILE = "results.ndjson"
SESSIONS_FILE = "sessions.ndjson"

RecordKind = Literal["result", "check", "sweep"]


class Session(Frozen):
    session_id: str
    fingerprint_id: str
    spec_hash: str
    started_at: datetime = Field(default_factory=datetime.now)
    fingerprint: EnvironmentFingerprint


class BadLine(Frozen):
    path: str
    line_no: int
    reason: str


def new_session_id(now: datetime | None = None) -> str:
    return f"{(now or datetime.now()):%Y%m%dT%H%M%S}-{secrets.token_hex(3)}"


def content_hash(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()[:16]


def read_records(path: Path) -> tuple[list[dict[str, Any]], list[BadLine]]:
    """Parse an ndjson log; malformed lines (e.g. a truncated tail) are reported, not fatal."""
    records: list[dict[str, Any]] = []
    bad: list[BadLine] = []
    if not path.exists():
        return records, bad
    with path.open("r", encoding="utf-8") as f:
        for no, line in enumerate(f, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                if not isinstance(obj, dict):
                    raise ValueError("record is not an object")
            except ValueError as e:
                bad.append(BadLine(path=str(path), line_no=no, reason=str(e)))
                log.warning("skipping unreadable record %s:%d (%s)", path.name, no, e)
                continue
            records.append(obj)
    return records, bad


def _ends_torn(path: Path) -> bool:
    """True when the file ends in a partial line (no trailing newline)."""
    try:
        with path.open("rb") as f:
            f.seek(0, os.SEEK_END)
            if f.tell() == 0:
                return False
            f.seek(-1, os.SEEK_END)
            return f.read(1) != b"\n"
    except FileNotFoundError:
        return False


def append_lines(path: Path, lines: Iterable[str]) -> None:
    """Append one record per line; a torn last line is closed off first so it stays the only bad one."""
    path.parent.mkdir(parents=True, exist_ok=True)
    torn = _ends_torn(path)
    if torn:
        log.warning("%s ends in a partial record; starting a new line", path.name)
    with path.open("a", encoding="utf-8") as f:
        if torn:
            f.write("\n")
        for line in lines:
            f.write(line + "\n")
        f.flush()


def _envelope(kind: str, payload: BaseModel) -> str:
    body = payload.model_dump(mode="json")
    return json.dumps({"format_version": FORMAT_VERSION, "record": kind, kind: body}, ensure_ascii=False)


class ResultStore:
    """Results and sessions of one project directory."""

    def __init__(self, root: Path):
        self.root = Path(root)

    @property
    def results_path(self) -> Path:
        return self.root / RESULTS_FILE

    @property
    def sessions_path(self) -> Path:
        return self.root / SESSIONS_FILE

    def lock(self):
        return writer_lock(self.root)

    def open_session(self, fingerprint: EnvironmentFingerprint, spec_hash: str) -> Session:
        session = Session(
            session_id=new_session_id(),
            fingerprint_id=fingerprint.fingerprint_id,
            spec_hash=spec_hash,
            fingerprint=fingerprint,
        )
        append_lines(self.sessions_path, [_envelope("session", session)])
        log.debug("opened session %s", session.session_id)
        return session

    def append_results(self, session: Session, result_sets: list[ResultSet]) -> None:
        for rs in result_sets:
            if rs.session_id != session.session_id:
                raise ValueError(f"result set for {rs.key} belongs to session {rs.session_id!r}")
        append_lines(self.results_path, [_envelope("result", rs) for rs in result_sets])

    def append_check(self, outcome: CheckOutcome) -> None:
        append_lines(self.results_path, [_envelope("check", outcome)])

    def append_record(self, kind: RecordKind, payload: BaseModel) -> None:
        append_lines(self.results_path, [_envelope(kind, payload)])

    def records(self, kind: RecordKind) -> list[dict[str, Any]]:
        recs, _ = read_records(self.results_path)
        return [r[kind] for r in recs if r.get("record") == kind and kind in r]

    def bad_lines(self) -> list[BadLine]:
        return read_records(self.results_path)[1] + read_records(self.sessions_path)[1]

    def has_results(self, spec_id: str) -> bool:
        return any(r.get("spec_id") == spec_id for r in self.records("result"))

    def load_results(
        self,
        *,
        spec_id: str | None = None,
        variant: str | None = None,
        session_id: str | None = None,
        where: Callable[[ResultSet], bool] | None = None,
    ) -> list[ResultSet]:
        """Matching result sets in append order."""
        if not self.results_path.exists():
            raise MissingFile(f"no results recorded yet ({self.results_path} missing)")
        out: list[ResultSet] = []
        for raw in self.records("result"):
            try:
                rs = ResultSet.model_validate(raw)
            except ValidationError as e:
                log.warning("skipping invalid result record: %s", e.errors()[0]["msg"])
                continue
            if spec_id is not None and rs.spec_id != spec_id:
                continue
            if variant is not None and rs.variant_name != variant:
                continue
            if session_id is not None and rs.session_id != session_id:
                continue
            if where is not None and not where(rs):
                continue
            out.append(rs)
        return out

    def load_checks(self) -> list[CheckOutcome]:
        return [CheckOutcome.model_validate(r) for r in self.records("check")]

    def load_sessions(self) -> dict[str, Session]:
        recs, _ = read_records(self.sessions_path)
        out: dict[str, Session] = {}
        for r in recs:
            if r.get("record") != "session":
                continue
            try:
                s = Session.model_validate(r["session"])
            except (KeyError, ValidationError) as e:
                log.warning("skipping invalid session record: %s", e)
                continue
            out[s.session_id] = s
        return out

    def latest_session_id(self, spec_id: str) -> str | None:
        ids = [r.get("session_id") for r in self.records("result") if r.get("spec_id") == spec_id]
        return ids[-1] if ids else None


def comparison_guard(a: ResultSet, b: ResultSet, sessions: dict[str, Session]) -> Diagnostic | None:
    """Warn when two result sets were not measured in the same session."""
    if a.session_id == b.session_id:
        return None
    what = f"{a.variant_name!r} ({a.session_id}) and {b.variant_name!r} ({b.session_id})"
    sa, sb = sessions.get(a.session_id), sessions.get(b.session_id)
    problems: list[str] = []
    if sa is None or sb is None:
        problems.append("session record missing")
    else:
        problems.extend(str(m) for m in diff_fingerprints(sa.fingerprint, sb.fingerprint))
        if sa.spec_hash != sb.spec_hash:
            problems.append("benchmark spec file changed between sessions")
    if not problems:
        return Diagnostic(
            code="CrossSession",
            message=f"{what} come from different sessions; prefer re-running both together",
            severity="note",
        )
    return Diagnostic(
        code="CrossSessionMismatch",
        message=f"{what} come from different sessions whose environment differs: " + "; ".join(problems),
        severity="warning",
    )
