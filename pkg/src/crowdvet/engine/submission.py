"""Report submission through the policy gates."""

from __future__ import annotations

from dataclasses import dataclass

from ..core.errors import ProgramInactive
from ..core.events import EventKind
from ..core.state import Run
from ..core.types import (
    Fingerprint,
    GateReason,
    LifecycleState,
    Report,
    ReportFeature,
    Severity,
)
from ..gamification.rewards import PointsKind, award_points
from ..policies import rate_limit_check, signal_gate


@dataclass(frozen=True)
class ReportDraft:
    program_id: str
    reporter_id: str
    features: frozenset[ReportFeature]
    fingerprint: Fingerprint
    claimed_severity: Severity
    latent_vuln_id: str | None = None


@dataclass(frozen=True)
class SubmissionOutcome:
    report_id: str
    accepted: bool
    gate_reason: GateReason | None = None


def _draft_payload(draft: ReportDraft, report_id: str, tick: int) -> dict:
    return {
        "report_id": report_id,
        "program_id": draft.program_id,
        "reporter_id": draft.reporter_id,
        "submitted_at": tick,
        "features": sorted(f.value for f in draft.features),
        "fingerprint": draft.fingerprint.to_dict(),
        "claimed_severity": draft.claimed_severity.value,
        "latent_vuln_id": draft.latent_vuln_id,
    }


def submit_report(run: Run, draft: ReportDraft) -> SubmissionOutcome:
    """Run the rate and signal gates, then admit or reject the draft.

    A rejected draft still enters the ledger (state REJECTED_AT_GATE) so the
    rejection is auditable, but it consumes no rate-limit quota and never
    anchors duplicate checks. Raises :class:`ProgramInactive` when the target
    program has not launched or is paused.
    """
    world = run.world
    program = world.programs.get(draft.program_id)
    if program is None or not program.active:
        raise ProgramInactive(f"program {draft.program_id} is not accepting reports")
    profile = world.hackers[draft.reporter_id]
    policies = world.config.policies

    reason: GateReason | None = None
    if not rate_limit_check(profile.stats.last_submission_ticks, run.tick, policies.rate_policy()):
        reason = GateReason.RATE_LIMITED
    elif not signal_gate(profile.stats, policies.signal_policy()):
        reason = GateReason.LOW_SIGNAL

    report_id = world.new_report_id()
    payload = _draft_payload(draft, report_id, run.tick)

    if reason is not None:
        payload["reason"] = reason.value
        run.emit(EventKind.REPORT_GATE_REJECTED, draft.reporter_id, payload)
        return SubmissionOutcome(report_id=report_id, accepted=False, gate_reason=reason)

    schedule = program.reward_schedule
    points = 0
    if PointsKind.SUBMISSION_ACCEPTED in schedule.base_points:
        points = award_points(
            PointsKind.SUBMISSION_ACCEPTED, profile, schedule,
            program.ticks_since_launch(run.tick),
        )
    run.emit(EventKind.REPORT_SUBMITTED, draft.reporter_id, payload)
    if points > 0:
        run.emit(
            EventKind.POINTS_AWARDED,
            draft.reporter_id,
            {
                "hacker_id": draft.reporter_id,
                "kind": PointsKind.SUBMISSION_ACCEPTED,
                "points": points,
                "program_id": draft.program_id,
            },
        )
    return SubmissionOutcome(report_id=report_id, accepted=True)


def report_state(run: Run, report_id: str) -> LifecycleState:
    return run.world.reports[report_id].state


def draft_from_report(report: Report) -> ReportDraft:
    """Clone a report's identifying content into a fresh draft (snipe path)."""
    return ReportDraft(
        program_id=report.program_id,
        reporter_id=report.reporter_id,
        features=frozenset(report.features),
        fingerprint=report.fingerprint,
        claimed_severity=report.claimed_severity,
        latent_vuln_id=report.latent_vuln_id,
    )
