import pytest
from pydantic import ValidationError

from metibench.exceptions import ConflictingBinding, ProjectFileError, SpecError, UnboundPlaceholder
from metibench.model import (
    BenchmarkSpec,
    ExplicitDomain,
    ParamPoint,
    RangeDomain,
    SweepGenerator,
    SweepSpec,
    Variant,
    format_param_value,
    param_points,
    placeholders,
    resolve_check,
    resolve_invocation,
    substitute,
    validate_spec,
)
from metibench.project import ProjectFile, load_project, save_project, select_specs


def sort_spec(**overrides) -> BenchmarkSpec:
    fields = dict(
        id="sort",
        command_template="./sortbench --size {size}",
        env_template={"IMPL": "{impl}", "NITERS": "{niters}"},
        params={"size": ["1000", "10_000"], "niters": ["10"]},
        variants=[
            Variant(name="quicksort", bindings={"impl": "quicksort"}),
            Variant(name="mergesort", bindings={"impl": "mergesort"}),
        ],
    )
    fields.update(overrides)
    return BenchmarkSpec(**fields)


def test_placeholders_in_order_and_escaped_braces():
    assert placeholders("{a} x {b} {a}") == ["a", "b", "a"]
    assert placeholders("echo {{literal}} {n}") == ["n"]


def test_placeholders_rejects_format_specs():
    with pytest.raises(SpecError):
        placeholders("{n:>5}")


def test_substitute_unbound():
    with pytest.raises(UnboundPlaceholder) as exc:
        substitute("run {missing}", {"other": "1"})
    assert exc.value.name == "missing"


def test_param_points_cartesian_product():
    points = param_points(sort_spec())
    assert [p.assignments for p in points] == [
        {"size": "1000", "niters": "10"},
        {"size": "10_000", "niters": "10"},
    ]


def test_resolve_invocation_direct():
    spec = sort_spec()
    point = param_points(spec)[1]
    inv = resolve_invocation(spec, spec.variant("mergesort"), point)
    assert inv.argv == ["./sortbench", "--size", "10_000"]
    assert inv.env == {"IMPL": "mergesort", "NITERS": "10"}
    assert inv.variant_name == "mergesort"
    assert inv.param_point == point


def test_resolve_invocation_keeps_quoted_tokens():
    spec = sort_spec(command_template="prog 'a b' {size}")
    inv = resolve_invocation(spec, spec.variant("quicksort"), param_points(spec)[0])
    assert inv.argv == ["prog", "a b", "1000"]


def test_resolve_invocation_shell_mode():
    spec = sort_spec(shell=True, command_template="./sortbench {size} | wc -l")
    inv = resolve_invocation(spec, spec.variant("quicksort"), param_points(spec)[0])
    assert inv.argv == ["/bin/sh", "-c", "./sortbench 1000 | wc -l"]


def test_resolve_rejects_point_that_does_not_match_params():
    spec = sort_spec()
    with pytest.raises(SpecError):
        resolve_invocation(spec, spec.variant("quicksort"), ParamPoint(assignments={"size": "1"}))


def test_resolve_conflicting_binding():
    spec = sort_spec(variants=[Variant(name="q", bindings={"impl": "q", "size": "5"})])
    with pytest.raises(ConflictingBinding):
        resolve_invocation(spec, spec.variants[0], param_points(spec)[0])


def test_resolve_check_absent():
    spec = sort_spec()
    assert resolve_check(spec, spec.variant("quicksort"), param_points(spec)[0]) is None


def test_resolve_check_present():
    spec = sort_spec(check_template="./verify {impl} {size}")
    inv = resolve_check(spec, spec.variant("quicksort"), param_points(spec)[0])
    assert inv.argv == ["./verify", "quicksort", "1000"]


def test_implicit_variant_named_after_spec():
    spec = BenchmarkSpec(id="solo", command_template="true")
    assert [v.name for v in spec.effective_variants()] == ["solo"]
    assert validate_spec(spec) == []


def test_validate_well_formed_spec():
    assert validate_spec(sort_spec()) == []


def test_validate_uncovered_placeholder():
    spec = sort_spec(
        variants=[
            Variant(name="quicksort", bindings={"impl": "quicksort"}),
            Variant(name="other", bindings={}),
        ]
    )
    codes = [d.code for d in validate_spec(spec)]
    assert codes == ["UncoveredPlaceholder"]


def test_validate_duplicate_variant_and_empty_id():
    spec = sort_spec(id=" ", variants=[Variant(name="x", bindings={"impl": "a"})] * 2)
    codes = {d.code for d in validate_spec(spec)}
    assert {"EmptyId", "DuplicateVariant"} <= codes


def test_validate_empty_domain():
    spec = sort_spec(params={"size": [], "niters": ["1"]})
    assert "EmptyParamDomain" in [d.code for d in validate_spec(spec)]


def test_validate_conflicting_binding():
    spec = sort_spec(variants=[Variant(name="q", bindings={"impl": "q", "niters": "1"})])
    assert "ConflictingBinding" in [d.code for d in validate_spec(spec)]


def test_identical_variants_detected_before_any_run():
    spec = BenchmarkSpec(
        id="dup",
        command_template="./bench {impl}",
        variants=[
            Variant(name="fast", bindings={"impl": "x", "unused": "1"}),
            Variant(name="slow", bindings={"impl": "x", "unused": "2"}),
        ],
    )
    diags = validate_spec(spec)
    assert [d.code for d in diags] == ["IdenticalVariants"]
    assert diags[0].severity == "warning"


def test_variant_binding_values_non_empty():
    with pytest.raises(ValidationError):
        Variant(name="x", bindings={"impl": ""})


def test_expected_wall_range_order():
    with pytest.raises(ValidationError):
        sort_spec(expected_wall_range=(3.0, 1.0))


def test_unknown_field_rejected():
    with pytest.raises(ValidationError):
        BenchmarkSpec(id="x", command_template="true", comand="typo")


def test_numeric_values_stringified():
    d = ExplicitDomain(values=[1000, 2.5])
    assert d.expand() == ["1000", "2.5"]


def test_range_domains():
    assert RangeDomain(kind="log", start=1000, stop=100000, count=3).expand() == ["1000", "10000", "100000"]
    assert RangeDomain(kind="linear", start=0, stop=1, count=3).expand() == ["0", "0.5", "1"]
    with pytest.raises(ValidationError):
        RangeDomain(kind="log", start=0, stop=10, count=3)


def test_format_param_value():
    assert format_param_value(10000.0) == "10000"
    assert format_param_value(0.25) == "0.25"


def test_sweep_spec_values_sorted_and_deduplicated():
    sw = SweepSpec(spec_id="s", swept_param="size", points=[4000, 1000, 2000, 1000])
    assert sw.values() == [1000.0, 2000.0, 4000.0]
    assert not sw.log_scale


def test_sweep_spec_generator():
    sw = SweepSpec(spec_id="s", swept_param="size", generator=SweepGenerator(kind="log", start=10, stop=1000, count=3))
    assert sw.values() == [10.0, 100.0, 1000.0]
    assert sw.log_scale


def test_sweep_spec_needs_exactly_one_source():
    with pytest.raises(ValidationError):
        SweepSpec(spec_id="s", swept_param="size")
    with pytest.raises(ValidationError):
        SweepSpec(spec_id="s", swept_param="size", points=[1.0])


def test_project_file_roundtrip(tmp_path):
    pf = ProjectFile(specs=[sort_spec()])
    save_project(tmp_path, pf)
    assert load_project(tmp_path) == pf


def test_project_file_missing(tmp_path):
    with pytest.raises(ProjectFileError, match="metibench init"):
        load_project(tmp_path)


def test_project_file_rejects_duplicate_spec_ids():
    with pytest.raises(ValidationError):
        ProjectFile(specs=[sort_spec(), sort_spec()])


def test_select_specs_only_skip_enabled():
    pf = ProjectFile(
        specs=[
            sort_spec(),
            sort_spec(id="other"),
            sort_spec(id="off", enabled=False),
        ]
    )
    assert [s.id for s in select_specs(pf)] == ["sort", "other"]
    assert [s.id for s in select_specs(pf, only=["sort"])] == ["sort"]
    assert [s.id for s in select_specs(pf, only=["off"])] == ["off"]
    assert [s.id for s in select_specs(pf, skip=["sort"])] == ["other"]
    with pytest.raises(ProjectFileError):
        select_specs(pf, only=["nope"])
