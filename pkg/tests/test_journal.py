from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from metibench.exceptions import DanglingRef, UnknownExplanation
from metibench.journal import Journal, JournalEntry, derive_statuses, journal_status, parse_ref
from metibench.store import ResultStore

from conftest import make_rs

VERDICTS = ["confirmed", "refuted", "inconclusive", "untestable"]


def test_parse_ref():
    assert parse_ref("entry:3") == ("entry", "3")
    assert parse_ref("7") == ("entry", "7")
    assert parse_ref("session:20240101T000000-abc") == ("session", "20240101T000000-abc")
    with pytest.raises(ValueError):
        parse_ref("commit:abc")


def test_entry_kind_fields_validated():
    with pytest.raises(ValidationError):
        JournalEntry(entry_id=1, kind="test", text="t", refs=["entry:1"])
    with pytest.raises(ValidationError):
        JournalEntry(entry_id=1, kind="observation", text="o", verdict="confirmed")
    with pytest.raises(ValidationError):
        JournalEntry(entry_id=1, kind="expectation", text="e")


def test_expectation_before_results_is_not_post_hoc(tmp_path):
    journal = Journal(tmp_path)
    entry = journal.record_expectation("sort", "mergesort wins")
    assert entry.post_hoc is False
    assert entry.refs == ["spec:sort"]


def test_expectation_after_results_is_post_hoc(tmp_path, fingerprint):
    store = ResultStore(tmp_path)
    session = store.open_session(fingerprint, "h")
    store.append_results(session, [make_rs([1.0], spec_id="sort", session_id=session.session_id)])
    journal = Journal(tmp_path, store)
    assert journal.record_expectation("sort", "too late").post_hoc is True
    assert journal.record_expectation("other", "in time").post_hoc is False
    assert [e.text for e in journal.status().post_hoc] == ["too late"]


def test_entry_ids_increase_and_file_is_append_only(tmp_path):
    journal = Journal(tmp_path)
    first = journal.record_observation("quicksort is slower")
    before = journal.path.read_bytes()
    second = journal.record_explanation("pivot choice is poor", [f"entry:{first.entry_id}"])
    assert (first.entry_id, second.entry_id) == (1, 2)
    assert journal.path.read_bytes().startswith(before)


def test_entry_after_truncated_tail_is_kept(tmp_path):
    journal = Journal(tmp_path)
    journal.record_observation("quicksort is slower")
    with journal.path.open("a", encoding="utf-8") as f:
        f.write('{"entry_id": 2, "kind": "obs')
    later = journal.record_observation("mergesort is steadier")
    assert [e.text for e in journal.entries()] == ["quicksort is slower", "mergesort is steadier"]
    assert later.entry_id == 2


def test_refs_must_resolve(tmp_path):
    journal = Journal(tmp_path)
    with pytest.raises(DanglingRef):
        journal.record_explanation("why", ["entry:9"])
    with pytest.raises(DanglingRef):
        journal.record_observation("what", ["session:nope"])
    obs = journal.record_observation("what")
    with pytest.raises(DanglingRef):
        journal.record_observation("again", ["not a ref"])
    expl = journal.record_explanation("why", [f"entry:{obs.entry_id}"])
    with pytest.raises(DanglingRef):
        # an observation cannot build on an explanation
        journal.record_observation("x", [f"entry:{expl.entry_id}"])


def test_tests_attach_only_to_explanations(tmp_path):
    journal = Journal(tmp_path)
    obs = journal.record_observation("what")
    with pytest.raises(UnknownExplanation):
        journal.attach_test(obs.entry_id, "t", "confirmed")
    with pytest.raises(UnknownExplanation):
        journal.attach_test(42, "t", "confirmed")


def test_status_lifecycle(tmp_path):
    journal = Journal(tmp_path)
    obs = journal.record_observation("mergesort wins")
    expl = journal.record_explanation("quicksort degenerates on its pivot", [f"entry:{obs.entry_id}"])
    assert journal.statuses()[expl.entry_id] == "proposed"
    assert [e.entry_id for e in journal.status().untested] == [expl.entry_id]

    journal.attach_test(expl.entry_id, "sorted input", "inconclusive")
    assert journal.statuses()[expl.entry_id] == "proposed"

    journal.attach_test(expl.entry_id, "random pivot", "refuted")
    assert journal.statuses()[expl.entry_id] == "refuted"
    assert [e.entry_id for e in journal.status().refuted_unrevised] == [expl.entry_id]

    revision = journal.record_explanation("allocation dominates", [f"entry:{expl.entry_id}"])
    report = journal.status()
    assert report.refuted_unrevised == []
    assert [e.entry_id for e in report.untested] == [revision.entry_id]

    journal.mark_conjecture(revision.entry_id, "no allocator hooks available")
    assert journal.statuses()[revision.entry_id] == "conjecture"
    assert journal.status().untested == []


def test_untestable_up_front(tmp_path):
    journal = Journal(tmp_path)
    obs = journal.record_observation("o")
    expl = journal.record_explanation("cache effects", [f"entry:{obs.entry_id}"], untestable=True)
    assert journal.statuses()[expl.entry_id] == "conjecture"


def test_missing_expectation_listed(tmp_path, fingerprint):
    store = ResultStore(tmp_path)
    session = store.open_session(fingerprint, "h")
    store.append_results(
        session,
        [
            make_rs([1.0], spec_id="sort", session_id=session.session_id),
            make_rs([1.0], spec_id="hash", session_id=session.session_id),
        ],
    )
    journal = Journal(tmp_path, store)
    journal.record_expectation("sort", "e")
    assert journal.status().missing_expectation == ["hash"]
    assert journal.status(["sort"]).missing_expectation == []


# randomized entry sequences

ops = st.lists(
    st.one_of(
        st.tuples(st.just("explain"), st.integers(0, 20)),
        st.tuples(st.just("test"), st.integers(0, 20), st.sampled_from(VERDICTS)),
        st.tuples(st.just("revise"), st.integers(0, 20)),
    ),
    max_size=40,
)


def build(sequence) -> tuple[list[JournalEntry], dict[int, str], set[int]]:
    entries = [JournalEntry(entry_id=1, kind="observation", text="o")]
    expected: dict[int, str] = {}
    revised: set[int] = set()
    explanations: list[int] = []

    def add(**fields) -> int:
        eid = len(entries) + 1
        entries.append(JournalEntry(entry_id=eid, **fields))
        return eid

    for op in sequence:
        if op[0] == "explain" or not explanations:
            explanations.append(add(kind="explanation", text="e", refs=["entry:1"]))
            expected[explanations[-1]] = "proposed"
            continue
        target = explanations[op[1] % len(explanations)]
        if op[0] == "test":
            add(kind="test", text="t", refs=[f"entry:{target}"], verdict=op[2])
            if op[2] != "inconclusive":
                expected[target] = "conjecture" if op[2] == "untestable" else op[2]
        else:
            explanations.append(add(kind="explanation", text="r", refs=[f"entry:{target}"]))
            expected[explanations[-1]] = "proposed"
            revised.add(target)
    return entries, expected, revised


@settings(max_examples=200)
@given(ops)
def test_derived_status_is_latest_decisive_verdict(sequence):
    entries, expected, _ = build(sequence)
    assert derive_statuses(entries) == expected
    assert derive_statuses(list(entries)) == derive_statuses(entries)


@settings(max_examples=200)
@given(ops)
def test_refuted_without_revision_always_reported(sequence):
    entries, expected, revised = build(sequence)
    report = journal_status(entries, ResultStore(Path("/nonexistent-metibench-store")))
    refuted = {eid for eid, status in expected.items() if status == "refuted" and eid not in revised}
    assert {e.entry_id for e in report.refuted_unrevised} == refuted
    assert {e.entry_id for e in report.untested} == {eid for eid, s in expected.items() if s == "proposed"}
