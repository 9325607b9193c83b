import json
import os

import pytest

from metibench.exceptions import MissingFile, StoreLocked
from metibench.model import CheckOutcome
from metibench.store import ResultStore, comparison_guard, new_session_id, read_records, writer_lock

from conftest import make_fingerprint, make_rs


def test_session_ids_are_unique():
    assert new_session_id() != new_session_id()


def test_results_roundtrip(tmp_path, fingerprint):
    store = ResultStore(tmp_path)
    session = store.open_session(fingerprint, "hash")
    rs = make_rs([0.5, 0.6, 0.55], "quick", "sort", session.session_id, {"size": "10"})
    store.append_results(session, [rs])
    assert store.load_results() == [rs]
    assert store.load_results(spec_id="sort", variant="quick") == [rs]
    assert store.load_results(spec_id="other") == []
    assert store.load_sessions()[session.session_id] == session
    assert store.latest_session_id("sort") == session.session_id
    assert store.has_results("sort")


def test_every_record_carries_format_version(tmp_path, fingerprint):
    store = ResultStore(tmp_path)
    session = store.open_session(fingerprint, "hash")
    store.append_results(session, [make_rs([1.0], session_id=session.session_id)])
    store.append_check(CheckOutcome(spec_id="s", variant_name="a", passed=True))
    for path in (store.results_path, store.sessions_path):
        for line in path.read_text(encoding="utf-8").splitlines():
            assert json.loads(line)["format_version"] == 1


def test_missing_results_file(tmp_path):
    with pytest.raises(MissingFile):
        ResultStore(tmp_path).load_results()


def test_result_sets_must_belong_to_session(tmp_path, fingerprint):
    store = ResultStore(tmp_path)
    session = store.open_session(fingerprint, "hash")
    with pytest.raises(ValueError):
        store.append_results(session, [make_rs([1.0], session_id="other")])


def test_truncated_tail_is_reported_not_fatal(tmp_path, fingerprint):
    store = ResultStore(tmp_path)
    session = store.open_session(fingerprint, "hash")
    rs = make_rs([1.0, 1.1], session_id=session.session_id)
    store.append_results(session, [rs])
    with store.results_path.open("a", encoding="utf-8") as f:
        f.write('{"format_version": 1, "record": "res')
    assert store.load_results() == [rs]
    bad = store.bad_lines()
    assert len(bad) == 1 and bad[0].line_no == 2


def test_append_after_truncated_tail_keeps_new_record(tmp_path, fingerprint):
    store = ResultStore(tmp_path)
    session = store.open_session(fingerprint, "hash")
    a = make_rs([1.0], "a", session_id=session.session_id)
    b = make_rs([2.0], "b", session_id=session.session_id)
    store.append_results(session, [a])
    with store.results_path.open("a", encoding="utf-8") as f:
        f.write('{"format_version": 1, "record": "res')
    store.append_results(session, [b])
    assert [rs.variant_name for rs in store.load_results()] == ["a", "b"]
    assert [bl.line_no for bl in store.bad_lines()] == [2]
    assert store.results_path.read_text(encoding="utf-8").endswith("\n")


def test_appending_keeps_existing_prefix(tmp_path, fingerprint):
    store = ResultStore(tmp_path)
    session = store.open_session(fingerprint, "hash")
    store.append_results(session, [make_rs([1.0], session_id=session.session_id)])
    before = store.results_path.read_bytes()
    store.append_results(session, [make_rs([2.0], "b", session_id=session.session_id)])
    assert store.results_path.read_bytes().startswith(before)


def test_read_records_skips_non_objects(tmp_path):
    path = tmp_path / "x.ndjson"
    path.write_text('{"a": 1}\n[1, 2]\n\n{"b": 2}\n', encoding="utf-8")
    records, bad = read_records(path)
    assert records == [{"a": 1}, {"b": 2}]
    assert [b.line_no for b in bad] == [2]


def test_checks_roundtrip(tmp_path):
    store = ResultStore(tmp_path)
    outcome = CheckOutcome(spec_id="s", variant_name="a", passed=False, status=1, output_tail="boom")
    store.append_check(outcome)
    assert store.load_checks() == [outcome]


def test_writer_lock_excludes_second_writer(tmp_path):
    with writer_lock(tmp_path):
        with pytest.raises(StoreLocked):
            with writer_lock(tmp_path):
                pass
    with writer_lock(tmp_path):
        pass


def test_writer_lock_takes_over_stale_lock(tmp_path, monkeypatch):
    (tmp_path / ".metibench.lock").write_text("999999", encoding="utf-8")
    monkeypatch.setattr("psutil.pid_exists", lambda pid: False)
    with writer_lock(tmp_path) as path:
        assert path.read_text(encoding="utf-8") == str(os.getpid())
    assert not path.exists()


def test_guard_same_session_is_silent(tmp_path, fingerprint):
    store = ResultStore(tmp_path)
    s = store.open_session(fingerprint, "hash")
    a = make_rs([1.0], "a", session_id=s.session_id)
    b = make_rs([1.0], "b", session_id=s.session_id)
    assert comparison_guard(a, b, store.load_sessions()) is None


def test_guard_cross_session_same_environment_is_a_note(tmp_path, fingerprint):
    store = ResultStore(tmp_path)
    s1 = store.open_session(fingerprint, "hash")
    s2 = store.open_session(fingerprint, "hash")
    d = comparison_guard(make_rs([1.0], "a", session_id=s1.session_id), make_rs([1.0], "b", session_id=s2.session_id),
                         store.load_sessions())
    assert d.code == "CrossSession" and d.severity == "note"


def test_guard_escalates_on_power_change(tmp_path):
    store = ResultStore(tmp_path)
    s1 = store.open_session(make_fingerprint(on_ac_power=True), "hash")
    s2 = store.open_session(make_fingerprint(on_ac_power=False), "hash")
    d = comparison_guard(make_rs([1.0], "a", session_id=s1.session_id), make_rs([1.0], "b", session_id=s2.session_id),
                         store.load_sessions())
    assert d.code == "CrossSessionMismatch"
    assert d.severity == "warning"
    assert "on_ac_power" in d.message


def test_guard_notices_spec_file_change(tmp_path, fingerprint):
    store = ResultStore(tmp_path)
    s1 = store.open_session(fingerprint, "hash-1")
    s2 = store.open_session(fingerprint, "hash-2")
    d = comparison_guard(make_rs([1.0], "a", session_id=s1.session_id), make_rs([1.0], "b", session_id=s2.session_id),
                         store.load_sessions())
    assert d.code == "CrossSessionMismatch"
    assert "spec file changed" in d.message
