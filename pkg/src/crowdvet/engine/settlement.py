"""Settlement: bounties, verifier fees, feedback, and vendor overrides.

Settlement is atomic against the program budget: either every reward event
for a report fits in the remaining budget, or none is emitted and the
program pauses.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..core.errors import BudgetExhausted, InvalidState
from ..core.events import EventKind
from ..core.state import Run
from ..core.types import (
    DecisionKind,
    LifecycleState,
    Report,
    RewardKind,
)
from ..gamification.rewards import PointsKind, award_points, issue_certificate


@dataclass(frozen=True)
class RewardEventRecord:
    recipient_id: str
    kind: RewardKind
    amount: float
    points: int
    tick: int
    assignment_id: str | None = None


def _emit_reward(run: Run, report: Report, record: RewardEventRecord) -> None:
    run.emit(
        EventKind.REWARD_ISSUED,
        "vendor",
        {
            "recipient_id": record.recipient_id,
            "kind": record.kind.value,
            "amount": record.amount,
            "points": record.points,
            "report_id": report.report_id,
            "assignment_id": record.assignment_id,
            "program_id": report.program_id,
        },
    )


def _issue_certificates(run: Run, hacker_id: str) -> None:
    profile = run.world.hackers[hacker_id]
    tiers = run.world.config.gamification.certificate_tiers
    for threshold in tiers:
        certificate = issue_certificate(profile, threshold)
        if certificate is not None:
            run.emit(
                EventKind.CERTIFICATE_ISSUED,
                "system",
                {
                    "hacker_id": hacker_id,
                    "certificate_id": certificate.certificate_id,
                    "threshold": certificate.threshold,
                },
            )


def settle(run: Run, report_id: str) -> list[RewardEventRecord]:
    """Pay out a decided report and close it.

    Actionable: severity-scaled bounty to the reporter plus one fee per
    completed assignment. Dismissed: feedback (zero amount) plus the same
    fees; verifiers are paid regardless of which way they voted. Escalated:
    fees only, with the reporter's outcome deferred to the vendor override.
    Raises :class:`BudgetExhausted` (pausing the program, paying nothing)
    when the total would overdraw the budget.
    """
    world = run.world
    report = world.reports[report_id]
    if report.state is not LifecycleState.DECIDED:
        raise InvalidState(f"report {report_id} is {report.state.value}, expected decided")
    program = world.programs[report.program_id]
    schedule = program.reward_schedule
    ticks_since_launch = program.ticks_since_launch(run.tick)
    decision = report.decision

    completed = [
        a for a in world.panel_for(report)
        if a.verdict is not None
    ]
    completed.sort(key=lambda a: a.assignment_id)
    fee_total = schedule.verifier_fee * len(completed)

    records: list[RewardEventRecord] = []
    if decision.kind is DecisionKind.ACTIONABLE:
        bounty = schedule.bounty_for(report.claimed_severity, ticks_since_launch)
        reporter_points = 0
        if PointsKind.REPORT_ACTIONABLE in schedule.base_points:
            reporter_points = award_points(
                PointsKind.REPORT_ACTIONABLE,
                world.hackers[report.reporter_id],
                schedule,
                ticks_since_launch,
            )
        records.append(
            RewardEventRecord(
                recipient_id=report.reporter_id,
                kind=RewardKind.REPORTER_BOUNTY,
                amount=bounty,
                points=reporter_points,
                tick=run.tick,
            )
        )
    elif decision.kind is DecisionKind.DISMISSED_WITH_REASONING:
        records.append(
            RewardEventRecord(
                recipient_id=report.reporter_id,
                kind=RewardKind.FEEDBACK,
                amount=0.0,
                points=0,
                tick=run.tick,
            )
        )
    # Escalated: reporter settlement deferred to the vendor override.

    total = sum(r.amount for r in records) + fee_total
    if total > program.budget_remaining + 1e-9:
        run.emit(
            EventKind.PROGRAM_PAUSED,
            "system",
            {"program_id": program.program_id, "reason": "budget_exhausted"},
        )
        raise BudgetExhausted(
            f"program {program.program_id}: settlement of {total:.2f} exceeds "
            f"remaining budget {program.budget_remaining:.2f}"
        )

    for assignment in completed:
        records.append(
            RewardEventRecord(
                recipient_id=assignment.verifier_id,
                kind=RewardKind.VERIFIER_FEE,
                amount=schedule.verifier_fee,
                points=0,
                tick=run.tick,
                assignment_id=assignment.assignment_id,
            )
        )

    for record in records:
        _emit_reward(run, report, record)
    run.emit(EventKind.REPORT_SETTLED, "vendor", {"report_id": report_id})
    if decision.kind is DecisionKind.ACTIONABLE:
        _issue_certificates(run, report.reporter_id)
    return records


def record_inhouse_decision(
    run: Run, report_id: str, reproduced: bool, reviewer: str
) -> LifecycleState:
    """Single-reviewer decision used by the direct and platform variants."""
    world = run.world
    report = world.reports[report_id]
    if report.state is not LifecycleState.VENDOR_VALIDATED:
        raise InvalidState(
            f"report {report_id} is {report.state.value}, expected vendor_validated"
        )
    decision = DecisionKind.ACTIONABLE if reproduced else DecisionKind.DISMISSED_WITH_REASONING
    tally = [1, 0, 0] if reproduced else [0, 1, 0]
    run.emit(
        EventKind.REPORT_DECIDED,
        reviewer,
        {
            "report_id": report_id,
            "decision": decision.value,
            "tally": tally,
            "in_house": True,
            "by": reviewer,
        },
    )
    return world.reports[report_id].state


def vendor_override(run: Run, report_id: str, accept: bool) -> None:
    """Resolve an escalated report case-by-case after its fee settlement.

    Accepting pays the reporter's bounty (budget-gated like any settlement);
    rejecting counts against the reporter's signal like a dismissal. Each
    override represents one in-house verification's worth of vendor labor.
    """
    world = run.world
    report = world.reports[report_id]
    if (
        report.state is not LifecycleState.SETTLED
        or report.decision is None
        or report.decision.kind is not DecisionKind.ESCALATED
        or report.override_accepted is not None
    ):
        raise InvalidState(f"report {report_id} is not awaiting a vendor override")
    program = world.programs[report.program_id]
    schedule = program.reward_schedule
    ticks_since_launch = program.ticks_since_launch(run.tick)

    if accept:
        bounty = schedule.bounty_for(report.claimed_severity, ticks_since_launch)
        if bounty > program.budget_remaining + 1e-9:
            run.emit(
                EventKind.PROGRAM_PAUSED,
                "system",
                {"program_id": program.program_id, "reason": "budget_exhausted"},
            )
            raise BudgetExhausted(
                f"program {program.program_id}: override bounty {bounty:.2f} exceeds "
                f"remaining budget {program.budget_remaining:.2f}"
            )
        points = 0
        if PointsKind.REPORT_ACTIONABLE in schedule.base_points:
            points = award_points(
                PointsKind.REPORT_ACTIONABLE,
                world.hackers[report.reporter_id],
                schedule,
                ticks_since_launch,
            )
        run.emit(
            EventKind.VENDOR_OVERRIDE_RESOLVED,
            "vendor",
            {"report_id": report_id, "accepted": True},
        )
        _emit_reward(
            run,
            report,
            RewardEventRecord(
                recipient_id=report.reporter_id,
                kind=RewardKind.REPORTER_BOUNTY,
                amount=bounty,
                points=points,
                tick=run.tick,
            ),
        )
        _issue_certificates(run, report.reporter_id)
    else:
        run.emit(
            EventKind.VENDOR_OVERRIDE_RESOLVED,
            "vendor",
            {"report_id": report_id, "accepted": False},
        )
        _emit_reward(
            run,
            report,
            RewardEventRecord(
                recipient_id=report.reporter_id,
                kind=RewardKind.FEEDBACK,
                amount=0.0,
                points=0,
                tick=run.tick,
            ),
        )
