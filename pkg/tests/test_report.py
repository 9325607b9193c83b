import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from metibench.exceptions import MissingResults, ReportError
from metibench.model import QualitativeClaim
from metibench.project import Project, ProjectFile, save_project
from metibench.report import (
    evaluate_claim,
    export_json,
    load_export,
    point_verdict,
    render_comparison,
    render_report,
    render_summary_line,
)
from metibench.stats import RatioWithUncertainty, Summary

from conftest import make_fingerprint, make_rs


def ms(mean, sd, lo, hi, label=""):
    return Summary(mean=mean / 1e3, stddev=sd / 1e3, min=lo / 1e3, max=hi / 1e3, median=mean / 1e3, n=10, label=label)


PUBLISHED = {
    "quicksort": ms(622.6, 14.8, 598.6, 647.7),
    "mergesort": ms(461.5, 5.6, 453.9, 469.2),
}


def test_markdown_table_shape():
    lines = render_comparison(PUBLISHED).splitlines()
    assert lines[0] == "| Command | Mean [ms] | Min [ms] | Max [ms] | Relative |"
    assert lines[1] == "|:---|---:|---:|---:|---:|"
    assert lines[2] == "| `quicksort` | 622.6 ± 14.8 | 598.6 | 647.7 | 1.35 ± 0.04 |"
    assert lines[3] == "| `mergesort` | 461.5 ± 5.6 | 453.9 | 469.2 | 1.00 |"


def test_summary_line():
    assert render_summary_line(PUBLISHED) == (
        "Summary\n  `mergesort` ran\n    1.35 ± 0.04 times faster than `quicksort`\n"
    )
    assert render_summary_line({"only": PUBLISHED["quicksort"]}) == ""


def test_single_variant_relative_is_one():
    lines = render_comparison({"only": PUBLISHED["quicksort"]}).splitlines()
    assert lines[2].endswith("| 1.00 |")


def test_tie_goes_to_first_declared():
    same = ms(100.0, 1.0, 99.0, 101.0)
    rows = render_comparison({"first": same, "second": same}).splitlines()[2:]
    assert rows[0].endswith("| 1.00 |")
    assert rows[1].endswith("| 1.00 ± 0.01 |")


@given(st.lists(st.floats(min_value=1.0, max_value=1000.0), min_size=1, max_size=6))
def test_exactly_one_baseline(means):
    summaries = {f"v{i}": ms(m, m / 50, m * 0.9, m * 1.1) for i, m in enumerate(means)}
    cells = [line.rsplit("|", 2)[1].strip() for line in render_comparison(summaries).splitlines()[2:]]
    assert cells.count("1.00") == 1


# claims


@pytest.mark.parametrize(
    "ratio, sigma, verdict",
    [(1.31, 0.04, "pass"), (1.00, 0.02, "fail"), (1.06, 0.03, "undetermined")],
)
def test_point_verdict(ratio, sigma, verdict):
    assert point_verdict(RatioWithUncertainty(ratio=ratio, sigma=sigma), 0.05) == verdict


@given(st.floats(min_value=0.5, max_value=3.0), st.floats(min_value=0, max_value=0.5),
       st.floats(min_value=0, max_value=1), st.floats(min_value=0, max_value=1))
def test_raising_margin_never_turns_fail_into_pass(ratio, sigma, m1, m2):
    low, high = sorted((m1, m2))
    r = RatioWithUncertainty(ratio=ratio, sigma=sigma)
    if point_verdict(r, low) == "fail":
        assert point_verdict(r, high) == "fail"
    if point_verdict(r, high) == "pass":
        assert point_verdict(r, low) == "pass"


def claim(**kw):
    fields = dict(claim_id="c", subject_variant="merge", reference_variant="quick", spec_ids=["sort"])
    fields.update(kw)
    return QualitativeClaim(**fields)


def test_claim_passes_on_clear_speedup():
    results = [
        make_rs([0.62, 0.60, 0.64, 0.62], "quick", "sort"),
        make_rs([0.46, 0.46, 0.47, 0.45], "merge", "sort"),
    ]
    v = evaluate_claim(claim(), results)
    assert v.verdict == "pass"
    assert len(v.evidence) == 1 and v.evidence[0].ratio.ratio > 1.3


def test_claim_fails_when_subject_is_not_faster():
    walls = [1.0, 1.01, 0.99, 1.0]
    v = evaluate_claim(claim(), [make_rs(walls, "quick", "sort"), make_rs(walls, "merge", "sort")])
    assert v.verdict == "fail"


def test_claim_needs_all_points():
    results = [
        make_rs([1.0, 1.0], "quick", "sort", point={"n": "10"}),
        make_rs([0.5, 0.5], "merge", "sort", point={"n": "10"}),
        make_rs([1.0, 1.0], "quick", "sort", point={"n": "1000"}),
        make_rs([1.0, 1.0], "merge", "sort", point={"n": "1000"}),
    ]
    assert evaluate_claim(claim(), results).verdict == "fail"
    ranged = claim(param="n", param_range=(1, 100))
    assert evaluate_claim(ranged, results).verdict == "pass"


def test_claim_uses_latest_results():
    results = [
        make_rs([1.0, 1.0], "quick", "sort"),
        make_rs([1.0, 1.0], "merge", "sort"),
        make_rs([0.5, 0.5], "merge", "sort", session_id="sess-2"),
    ]
    assert evaluate_claim(claim(), results).verdict == "pass"


def test_claim_without_results():
    with pytest.raises(MissingResults):
        evaluate_claim(claim(), [make_rs([1.0], "quick", "sort")])


@given(st.sampled_from([0.5, 2.0, 1000.0]))
def test_claim_invariant_under_scaling(k):
    quick = [0.62, 0.60, 0.64, 0.62]
    merge = [0.58, 0.57, 0.60, 0.59]
    plain = evaluate_claim(claim(), [make_rs(quick, "quick", "sort"), make_rs(merge, "merge", "sort")])
    scaled = evaluate_claim(
        claim(), [make_rs([k * x for x in quick], "quick", "sort"), make_rs([k * x for x in merge], "merge", "sort")]
    )
    assert plain.verdict == scaled.verdict


# full report


@pytest.fixture
def sort_project(tmp_path):
    from metibench.config.init import example_project

    save_project(tmp_path, example_project())
    return Project.open(tmp_path)


def record_session(project, walls_by_variant, fingerprint=None, point=None):
    store = project.store
    session = store.open_session(fingerprint or make_fingerprint(), "hash")
    point = point or {"size": "10_000", "niters": "30"}
    store.append_results(
        session,
        [make_rs(w, v, "sort", session.session_id, point) for v, w in walls_by_variant.items()],
    )
    return session


def test_empty_project_report(tmp_path):
    save_project(tmp_path, ProjectFile())
    text = render_report(Project.open(tmp_path))
    for heading in ("## Claims", "## Benchmarks", "## Environment and sessions", "## Expectations vs outcomes"):
        assert heading in text


def test_report_sections_in_order(sort_project):
    sort_project.journal.record_expectation("sort", "mergesort about 1.3x faster")
    record_session(sort_project, {"quicksort": [0.62, 0.60, 0.64, 0.62], "mergesort": [0.46, 0.46, 0.47, 0.45]})
    text = render_report(sort_project)
    order = [text.index(h) for h in ("## Claims", "## Benchmarks", "## Environment", "## Expectations vs outcomes")]
    assert order == sorted(order)
    assert "**mergesort-faster**" in text and "**pass**" in text
    assert "| `mergesort` |" in text
    assert "_No correctness check._" in text
    assert "`mergesort` fastest" in text
    assert "recorded after results" not in text


def test_untested_explanation_is_a_conjecture(sort_project):
    j = sort_project.journal
    obs = j.record_observation("mergesort wins", ["spec:sort"])
    expl = j.record_explanation("first-element pivots degrade quicksort", [f"entry:{obs.entry_id}"])
    text = render_report(sort_project)
    conj = text.index("#### Conjectures")
    assert "we conjecture that first-element pivots degrade quicksort" in text[conj:]
    assert "#### Explanations" not in text

    j.attach_test(expl.entry_id, "randomized pivot closes the gap", "confirmed")
    text = render_report(sort_project)
    assert "#### Explanations" in text
    assert "#### Conjectures" not in text
    assert text.count("first-element pivots degrade quicksort") == 1


def test_every_explanation_appears_once(sort_project):
    j = sort_project.journal
    obs = j.record_observation("o", ["spec:sort"])
    loose = j.record_observation("unrelated")
    texts = []
    for i, verdict in enumerate(["confirmed", "refuted", None, "untestable"]):
        e = j.record_explanation(f"explanation number {i}", [f"entry:{obs.entry_id}"])
        texts.append(e.text)
        if verdict:
            j.attach_test(e.entry_id, "t", verdict)
    general = j.record_explanation("general explanation", [f"entry:{loose.entry_id}"])
    text = render_report(sort_project)
    for t in [*texts, general.text]:
        assert text.count(t) == 1
    assert "### General" in text


def test_post_hoc_expectation_badge(sort_project):
    record_session(sort_project, {"quicksort": [1.0, 1.0], "mergesort": [0.5, 0.5]})
    sort_project.journal.record_expectation("sort", "mergesort wins")
    assert "recorded after results" in render_report(sort_project)


def test_cross_session_warning_in_appendix(sort_project):
    record_session(sort_project, {"quicksort": [1.0, 1.1, 0.9]}, make_fingerprint(on_ac_power=True))
    record_session(sort_project, {"mergesort": [0.5, 0.55, 0.45]}, make_fingerprint(on_ac_power=False))
    text = render_report(sort_project)
    appendix = text[text.index("## Environment and sessions"):]
    assert "CrossSessionMismatch" in appendix and "on_ac_power" in appendix


def test_functionally_incorrect_variant(tmp_path):
    from metibench.config.init import example_project
    from metibench.model import CheckOutcome

    pf = example_project()
    spec = pf.specs[0].model_copy(update={"check_template": "./verify {impl}"})
    save_project(tmp_path, pf.model_copy(update={"specs": [spec]}))
    project = Project.open(tmp_path)
    session = record_session(project, {"mergesort": [0.5, 0.5]})
    project.store.append_check(
        CheckOutcome(
            spec_id="sort",
            variant_name="quicksort",
            param_point=project.store.load_results()[0].param_point,
            session_id=session.session_id,
            passed=False,
            status=1,
        )
    )
    text = render_report(project)
    assert "**functionally incorrect**: `quicksort`" in text
    assert "_No correctness check._" not in text


def test_failed_check_drops_variant_everywhere(tmp_path):
    from metibench.config.init import example_project
    from metibench.model import CheckOutcome
    from metibench.report.document import latest_checks

    pf = example_project()
    spec = pf.specs[0].model_copy(update={"check_template": "./verify {impl}"})
    save_project(tmp_path, pf.model_copy(update={"specs": [spec]}))
    project = Project.open(tmp_path)
    project.journal.record_expectation("sort", "quicksort stays ahead")
    record_session(project, {"quicksort": [0.5, 0.5], "mergesort": [1.0, 1.0]})
    broken = record_session(project, {"mergesort": [1.0, 1.0]})
    project.store.append_check(
        CheckOutcome(
            spec_id="sort",
            variant_name="quicksort",
            param_point=project.store.load_results()[0].param_point,
            session_id=broken.session_id,
            passed=False,
            status=1,
        )
    )

    text = render_report(project)
    assert "| `quicksort` |" not in text
    assert "| `mergesort` |" in text
    assert "**functionally incorrect**: `quicksort`" in text
    assert "(margin 5%): **undetermined**" in text
    outcome = next(line for line in text.splitlines() if "outcome:" in line)
    assert "quicksort" not in outcome and "`mergesort` fastest" in outcome

    results = project.store.load_results()
    with pytest.raises(MissingResults):
        evaluate_claim(pf.claims[0], results, checks=latest_checks(project.store))
    assert evaluate_claim(pf.claims[0], results).verdict == "fail"

    doc = export_json(project, None)
    assert [r.command for r in doc.benchmarks[0].results] == ["mergesort"]
    assert doc.claims[0].verdict == "undetermined"


# JSON export


def test_export_roundtrip(sort_project, tmp_path):
    record_session(sort_project, {"quicksort": [0.62, 0.60, 0.64], "mergesort": [0.46, 0.46, 0.47, 0.45]})
    path = tmp_path / "out" / "bench.json"
    doc = export_json(sort_project, path)
    raw = json.loads(path.read_text(encoding="utf-8"))
    assert raw["schema_version"] == 1
    again = load_export(path)
    assert again.benchmarks[0].summaries() == doc.benchmarks[0].summaries()
    counts = {r.command: len(r.times) for r in again.benchmarks[0].results}
    assert counts == {"quicksort": 3, "mergesort": 4}
    rel = {r.command: r.relative for r in again.benchmarks[0].results}
    assert rel["mergesort"] == 1.0 and rel["quicksort"] > 1.3
    assert again.claims[0].verdict == "pass"


def test_load_export_rejects_other_schema(tmp_path):
    path = tmp_path / "x.json"
    path.write_text('{"schema_version": 99}', encoding="utf-8")
    with pytest.raises(ReportError):
        load_export(path)
