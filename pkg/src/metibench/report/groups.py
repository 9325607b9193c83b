from __future__ import annotations

from dataclasses import dataclass, field

from ..model.results import CheckOutcome, ResultSet
from ..model.spec import BenchmarkSpec, ParamPoint
from ..stats.summary import Summary, summarize


@dataclass
class BenchmarkGroup:
    """Latest result set of every variant at one parameter point of one spec."""

    spec_id: str
    point: ParamPoint
    result_sets: dict[str, ResultSet] = field(default_factory=dict)

    @property
    def session_ids(self) -> list[str]:
        return list(dict.fromkeys(rs.session_id for rs in self.result_sets.values()))

    def summaries(self) -> dict[str, Summary]:
        return {name: summarize(rs.wall_times, name) for name, rs in self.result_sets.items()}


CheckIndex = dict[tuple[str, str, str], CheckOutcome]


def check_failed(checks: CheckIndex | None, rs: ResultSet) -> bool:
    """True when the latest correctness check of this variant at this point failed."""
    if not checks:
        return False
    c = checks.get((rs.spec_id, rs.variant_name, rs.param_point.label()))
    return c is not None and not c.passed


def latest_groups(
    results: list[ResultSet],
    spec: BenchmarkSpec | None = None,
    spec_id: str | None = None,
    checks: CheckIndex | None = None,
) -> list[BenchmarkGroup]:
    """Group result sets by point, keeping the last appended set per variant.

    Variants whose latest check in ``checks`` failed are left out, older
    passing result sets included.

    Variants are ordered as the spec declares them (unknown ones last, by
    first appearance); points by first appearance.
    """
    sid = spec.id if spec is not None else spec_id
    groups: dict[str, BenchmarkGroup] = {}
    for rs in results:
        if sid is not None and rs.spec_id != sid:
            continue
        if check_failed(checks, rs):
            continue
        label = rs.param_point.label()
        g = groups.setdefault(label, BenchmarkGroup(spec_id=rs.spec_id, point=rs.param_point))
        g.result_sets[rs.variant_name] = rs

    if spec is not None:
        order = [v.name for v in spec.effective_variants()]
        for g in groups.values():
            known = [n for n in order if n in g.result_sets]
            rest = [n for n in g.result_sets if n not in order]
            g.result_sets = {n: g.result_sets[n] for n in known + rest}
    return list(groups.values())
