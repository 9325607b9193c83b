from __future__ import annotations

import logging
from typing import Literal

from pydantic import Field

from ..exceptions import MissingResults, StatsError
from ..model.results import ResultSet
from ..model.spec import Frozen, QualitativeClaim
from ..stats.summary import RatioWithUncertainty, SummaryMode, compare, geometric_mean, summarize
from .groups import CheckIndex, latest_groups

log = logging.getLogger(__name__)

ClaimOutcome = Literal["pass", "fail", "undetermined"]


class ClaimEvidence(Frozen):
    spec_id: str
    point: str
    ratio: RatioWithUncertainty
    verdict: ClaimOutcome


class ClaimVerdict(Frozen):
    claim_id: str
    verdict: ClaimOutcome
    evidence: list[ClaimEvidence] = Field(default_factory=list)

    @property
    def geometric_mean(self) -> float | None:
        if not self.evidence:
            return None
        return geometric_mean([e.ratio.ratio for e in self.evidence])


def point_verdict(ratio: RatioWithUncertainty, margin: float) -> ClaimOutcome:
    """``ratio`` is reference over subject: above one means the subject is faster."""
    bar = 1 + margin
    if ratio.ratio - ratio.sigma > bar:
        return "pass"
    if ratio.ratio + ratio.sigma < bar:
        return "fail"
    return "undetermined"


def combine(verdicts: list[ClaimOutcome]) -> ClaimOutcome:
    if verdicts and all(v == "pass" for v in verdicts):
        return "pass"
    if any(v == "fail" for v in verdicts):
        return "fail"
    return "undetermined"


def evaluate_claim(
    claim: QualitativeClaim,
    results: list[ResultSet],
    mode: SummaryMode = "mean",
    checks: CheckIndex | None = None,
) -> ClaimVerdict:
    """Check a "noticeably faster" claim on the latest results of each covered point.

    Raises MissingResults when a referenced spec has no point measured for both
    variants. Variants whose latest check in ``checks`` failed give no evidence.
    """
    evidence: list[ClaimEvidence] = []
    for spec_id in claim.spec_ids:
        found = False
        for g in latest_groups(results, spec_id=spec_id, checks=checks):
            if not claim.covers(g.point.assignments):
                continue
            subject = g.result_sets.get(claim.subject_variant)
            reference = g.result_sets.get(claim.reference_variant)
            if subject is None or reference is None:
                continue
            found = True
            try:
                ratio = compare(
                    summarize(reference.wall_times, claim.reference_variant),
                    summarize(subject.wall_times, claim.subject_variant),
                    mode,
                )
            except StatsError as e:
                log.warning("claim %s: no ratio at %s (%s)", claim.claim_id, g.point.label(), e)
                continue
            evidence.append(
                ClaimEvidence(
                    spec_id=spec_id,
                    point=g.point.label(),
                    ratio=ratio,
                    verdict=point_verdict(ratio, claim.margin),
                )
            )
        if not found:
            raise MissingResults(
                f"claim {claim.claim_id!r}: no results of both {claim.subject_variant!r} and "
                f"{claim.reference_variant!r} for spec {spec_id!r}"
            )
    return ClaimVerdict(
        claim_id=claim.claim_id,
        verdict=combine([e.verdict for e in evidence]),
        evidence=evidence,
    )
