"""Vendor/platform validation: duplicate safety net and scope checks."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..core.errors import InvalidState
from ..core.events import EventKind
from ..core.state import Run, WorldState
from ..core.types import (
    DecisionKind,
    Fingerprint,
    LifecycleState,
    Severity,
    ValidationOutcomeKind,
    stage_of_asset_token,
)
from ..gamification.rewards import PointsKind, award_points
from ..core.types import RewardKind


class ValidationMode(str, Enum):
    ENABLED = "enabled"
    SKIPPED = "skipped"


@dataclass(frozen=True)
class ValidationOutcome:
    kind: ValidationOutcomeKind
    original_report_id: str | None = None


_LIVE_STATES = {
    LifecycleState.SUBMITTED,
    LifecycleState.VENDOR_VALIDATED,
    LifecycleState.DISTRIBUTED,
    LifecycleState.AWAITING_VERDICTS,
}


def _anchors(world: WorldState, report_id: str, retain_dismissed: bool) -> bool:
    report = world.reports[report_id]
    if report.state in _LIVE_STATES:
        return True
    if report.state in (LifecycleState.DECIDED, LifecycleState.SETTLED):
        kind = report.decision.kind if report.decision else None
        if kind is DecisionKind.ACTIONABLE:
            return True
        if kind is DecisionKind.DISMISSED_WITH_REASONING:
            return retain_dismissed
        if kind is DecisionKind.ESCALATED:
            if report.override_accepted is None:
                return True  # still pending with the vendor
            return report.override_accepted or retain_dismissed
    # Gate-rejected reports are never indexed; duplicate- and scope-closed
    # reports do not anchor (the underlying issue was never accepted).
    return False


def duplicate_check(
    world: WorldState,
    fingerprint: Fingerprint,
    exclude_report_id: str | None = None,
    retain_dismissed: bool = False,
) -> str | None:
    """Earliest-submitted live report with an equal fingerprint, if any.

    First-come-first-served: candidates are scanned in submission order.
    ``retain_dismissed`` controls whether dismissed reports keep blocking
    resubmission of the same fingerprint (interacts with snipe behavior).
    """
    for report_id in world.fingerprint_index.get(fingerprint.key, []):
        if report_id == exclude_report_id:
            continue
        if _anchors(world, report_id, retain_dismissed):
            return report_id
    return None


def vendor_validate(
    run: Run,
    report_id: str,
    mode: ValidationMode,
    performed_by: str = "vendor",
) -> ValidationOutcome:
    """Validate a submitted report: duplicate fingerprint first, then scope.

    Skipped mode forwards unconditionally. Critical out-of-scope findings
    escalate to the vendor for case-by-case handling instead of being
    closed outright; duplicate submitters are compensated with points only.
    Raises :class:`InvalidState` unless the report is in SUBMITTED.
    """
    world = run.world
    report = world.reports[report_id]
    if report.state is not LifecycleState.SUBMITTED:
        raise InvalidState(
            f"report {report_id} is {report.state.value}, expected submitted"
        )
    program = world.programs[report.program_id]

    if mode is ValidationMode.SKIPPED:
        run.emit(
            EventKind.REPORT_VALIDATED,
            "system",
            {
                "report_id": report_id,
                "outcome": ValidationOutcomeKind.FORWARD.value,
                "performed_by": "none",
                "mode": mode.value,
            },
        )
        return ValidationOutcome(ValidationOutcomeKind.FORWARD)

    retain = world.config.verification.retain_dismissed_fingerprints
    original = duplicate_check(
        world, report.fingerprint, exclude_report_id=report_id, retain_dismissed=retain
    )
    if original is not None:
        run.emit(
            EventKind.REPORT_VALIDATED,
            performed_by,
            {
                "report_id": report_id,
                "outcome": ValidationOutcomeKind.DUPLICATE.value,
                "performed_by": performed_by,
                "mode": mode.value,
                "original_report_id": original,
            },
        )
        schedule = program.reward_schedule
        points = 0
        if PointsKind.DUPLICATE_CLOSED in schedule.base_points:
            points = award_points(
                PointsKind.DUPLICATE_CLOSED,
                world.hackers[report.reporter_id],
                schedule,
                program.ticks_since_launch(run.tick),
            )
        run.emit(
            EventKind.REWARD_ISSUED,
            performed_by,
            {
                "recipient_id": report.reporter_id,
                "kind": RewardKind.POINTS_ONLY.value,
                "amount": 0.0,
                "points": points,
                "report_id": report_id,
                "assignment_id": None,
                "program_id": report.program_id,
            },
        )
        return ValidationOutcome(ValidationOutcomeKind.DUPLICATE, original_report_id=original)

    stage = stage_of_asset_token(report.fingerprint.asset_token)
    if stage > program.active_stage:
        if report.claimed_severity is Severity.CRITICAL:
            run.emit(
                EventKind.REPORT_VALIDATED,
                performed_by,
                {
                    "report_id": report_id,
                    "outcome": ValidationOutcomeKind.ESCALATE_CRITICAL_OUT_OF_SCOPE.value,
                    "performed_by": performed_by,
                    "mode": mode.value,
                },
            )
            run.emit(
                EventKind.REPORT_DECIDED,
                performed_by,
                {
                    "report_id": report_id,
                    "decision": DecisionKind.ESCALATED.value,
                    "tally": [0, 0, 0],
                    "in_house": False,
                    "by": performed_by,
                },
            )
            return ValidationOutcome(ValidationOutcomeKind.ESCALATE_CRITICAL_OUT_OF_SCOPE)
        run.emit(
            EventKind.REPORT_VALIDATED,
            performed_by,
            {
                "report_id": report_id,
                "outcome": ValidationOutcomeKind.OUT_OF_SCOPE.value,
                "performed_by": performed_by,
                "mode": mode.value,
            },
        )
        return ValidationOutcome(ValidationOutcomeKind.OUT_OF_SCOPE)

    run.emit(
        EventKind.REPORT_VALIDATED,
        performed_by,
        {
            "report_id": report_id,
            "outcome": ValidationOutcomeKind.FORWARD.value,
            "performed_by": performed_by,
            "mode": mode.value,
        },
    )
    return ValidationOutcome(ValidationOutcomeKind.FORWARD)
