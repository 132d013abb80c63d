"""Crowd verification: panel assignment, verdict recording, consensus."""

from __future__ import annotations

import random

from ..core.errors import (
    AlreadyVerdicted,
    BadTally,
    DeadlineExpired,
    InsufficientVerifiers,
    InvalidState,
)
from ..core.events import EventKind
from ..core.state import Run
from ..core.types import (
    Decision,
    DecisionKind,
    HackerProfile,
    LifecycleState,
    Verdict,
    VerdictKind,
)
from ..gamification.rewards import PointsKind, award_points, evaluate_badges


def decide_tally(tally: tuple[int, int, int], q: int) -> DecisionKind:
    """Threshold rule shared by full and partial panels.

    Reproduced votes reaching q make the report actionable; not-reproduced
    votes reaching q dismiss it; anything else (including abstain-heavy
    panels) escalates to the vendor. Cannot-test counts toward neither side.
    """
    r, n, _ = tally
    if r >= q:
        return DecisionKind.ACTIONABLE
    if n >= q:
        return DecisionKind.DISMISSED_WITH_REASONING
    return DecisionKind.ESCALATED


def aggregate_verdicts(tally: tuple[int, int, int], q: int, k: int) -> Decision:
    """Consensus decision for a complete panel of k verdicts.

    Raises :class:`BadTally` when the counts are inconsistent with the panel
    size or the threshold is out of range.
    """
    r, n, c = tally
    if min(r, n, c) < 0 or r + n + c != k:
        raise BadTally(f"tally {tally} does not sum to panel size {k}")
    if not 0 < q <= k:
        raise BadTally(f"threshold q={q} out of range for k={k}")
    return Decision(kind=decide_tally(tally, q), tally=tally)


def _eligible_pool(
    pool: list[HackerProfile], reporter_id: str, exclude: set[str]
) -> list[HackerProfile]:
    return sorted(
        (
            p for p in pool
            if p.vetted and p.hacker_id != reporter_id and p.hacker_id not in exclude
        ),
        key=lambda p: p.hacker_id,
    )


def assign_verifiers(
    run: Run,
    report_id: str,
    pool: list[HackerProfile],
    k: int | None = None,
    rng: random.Random | None = None,
) -> list[str]:
    """Distribute a forwarded report to k distinct vetted verifiers.

    Selection is uniform over the eligible pool (vetted, not the reporter).
    Returns the new assignment ids. Raises :class:`InsufficientVerifiers`
    when fewer than k hackers are eligible.
    """
    world = run.world
    report = world.reports[report_id]
    if report.state is not LifecycleState.VENDOR_VALIDATED:
        raise InvalidState(
            f"report {report_id} is {report.state.value}, expected vendor_validated"
        )
    program = world.programs[report.program_id]
    panel_size = k if k is not None else program.quorum_size
    rng = rng if rng is not None else random.Random(0)

    eligible = _eligible_pool(pool, report.reporter_id, exclude=set())
    if len(eligible) < panel_size:
        raise InsufficientVerifiers(
            f"report {report_id}: need {panel_size} verifiers, only {len(eligible)} eligible"
        )
    chosen = rng.sample(eligible, panel_size)
    deadline = run.tick + world.config.verification.deadline_ticks

    assignments = []
    next_seq = world.next_assignment_seq
    for profile in chosen:
        assignments.append(
            {
                "assignment_id": f"a-{next_seq:06d}",
                "verifier_id": profile.hacker_id,
                "assigned_at": run.tick,
                "deadline": deadline,
            }
        )
        next_seq += 1
    run.emit(
        EventKind.VERIFIERS_ASSIGNED,
        "vendor",
        {"report_id": report_id, "assignments": assignments},
    )
    return [a["assignment_id"] for a in assignments]


def panel_tally(run: Run, report_id: str) -> tuple[int, int, int]:
    counts = {VerdictKind.REPRODUCED: 0, VerdictKind.NOT_REPRODUCED: 0, VerdictKind.CANNOT_TEST: 0}
    for assignment in run.world.panel_for(run.world.reports[report_id]):
        if assignment.verdict is not None:
            counts[assignment.verdict.kind] += 1
    return (
        counts[VerdictKind.REPRODUCED],
        counts[VerdictKind.NOT_REPRODUCED],
        counts[VerdictKind.CANNOT_TEST],
    )


def finalize_panel_if_complete(run: Run, report_id: str) -> bool:
    """Decide the report once every live panel slot holds a verdict.

    Abandoned slots (expired twice, or expired with no replacement
    available) drop out; if fewer than q verdicts were cast the report
    escalates to the vendor.
    """
    world = run.world
    report = world.reports[report_id]
    if report.state not in (LifecycleState.DISTRIBUTED, LifecycleState.AWAITING_VERDICTS):
        return False
    panel = world.panel_for(report)
    live = [a for a in panel if not a.abandoned]
    if any(a.verdict is None for a in live):
        return False
    tally = panel_tally(run, report_id)
    cast = sum(tally)
    q = world.programs[report.program_id].quorum_threshold
    decision = decide_tally(tally, q) if cast >= q else DecisionKind.ESCALATED
    run.emit(
        EventKind.REPORT_DECIDED,
        "panel",
        {
            "report_id": report_id,
            "decision": decision.value,
            "tally": list(tally),
            "in_house": False,
            "by": "panel",
        },
    )
    return True


def record_verdict(run: Run, assignment_id: str, verdict: Verdict) -> LifecycleState:
    """Store one verifier's verdict; completes the panel when it is the last.

    The verifier's fee is owed from this moment and pays out at settlement.
    Verification points and milestone badges are granted immediately.
    Raises :class:`AlreadyVerdicted` on double voting and
    :class:`DeadlineExpired` at or past the assignment deadline.
    """
    world = run.world
    assignment = world.assignments[assignment_id]
    if assignment.verdict is not None:
        raise AlreadyVerdicted(f"assignment {assignment_id} already has a verdict")
    if assignment.abandoned or run.tick >= assignment.deadline:
        raise DeadlineExpired(f"assignment {assignment_id} expired at {assignment.deadline}")

    report = world.reports[assignment.report_id]
    program = world.programs[report.program_id]
    run.emit(
        EventKind.VERDICT_RECORDED,
        assignment.verifier_id,
        {
            "assignment_id": assignment_id,
            "report_id": assignment.report_id,
            "verifier_id": assignment.verifier_id,
            "verdict": verdict.kind.value,
            "notes": verdict.notes,
        },
    )

    profile = world.hackers[assignment.verifier_id]
    schedule = program.reward_schedule
    if PointsKind.VERIFICATION_COMPLETED in schedule.base_points:
        points = award_points(
            PointsKind.VERIFICATION_COMPLETED, profile, schedule,
            program.ticks_since_launch(run.tick),
        )
        if points > 0:
            run.emit(
                EventKind.POINTS_AWARDED,
                assignment.verifier_id,
                {
                    "hacker_id": assignment.verifier_id,
                    "kind": PointsKind.VERIFICATION_COMPLETED,
                    "points": points,
                    "program_id": report.program_id,
                },
            )
    for badge in evaluate_badges(profile, schedule, run.tick):
        run.emit(
            EventKind.BADGE_AWARDED,
            "system",
            {
                "hacker_id": assignment.verifier_id,
                "badge_id": badge.badge_id,
                "criterion": badge.criterion,
            },
        )

    finalize_panel_if_complete(run, assignment.report_id)
    return world.reports[assignment.report_id].state


def expire_due_assignments(run: Run, rng: random.Random) -> list[str]:
    """Expire overdue assignments, reassigning each slot at most once.

    A first expiry draws a replacement verifier uniformly from the still
    eligible pool; a second expiry (or an empty pool) abandons the slot.
    Returns ids of reports whose panels completed through abandonment.
    """
    world = run.world
    due = sorted(
        aid for aid in world.open_assignment_ids
        if world.assignments[aid].deadline <= run.tick
    )
    decided: list[str] = []
    for assignment_id in due:
        assignment = world.assignments[assignment_id]
        if not assignment.open or assignment.deadline > run.tick:
            continue
        report = world.reports[assignment.report_id]
        run.emit(
            EventKind.ASSIGNMENT_EXPIRED,
            "system",
            {"assignment_id": assignment_id, "report_id": assignment.report_id},
        )
        if report.state not in (LifecycleState.DISTRIBUTED, LifecycleState.AWAITING_VERDICTS):
            continue
        reassigned = False
        if not assignment.is_replacement:
            on_panel = {world.assignments[a].verifier_id for a in report.assignment_ids}
            eligible = _eligible_pool(
                list(world.hackers.values()), report.reporter_id, exclude=on_panel
            )
            if eligible:
                replacement = rng.choice(eligible)
                run.emit(
                    EventKind.VERIFIER_REASSIGNED,
                    "vendor",
                    {
                        "report_id": assignment.report_id,
                        "replaces": assignment_id,
                        "assignment": {
                            "assignment_id": f"a-{world.next_assignment_seq:06d}",
                            "verifier_id": replacement.hacker_id,
                            "assigned_at": run.tick,
                            "deadline": run.tick + world.config.verification.deadline_ticks,
                        },
                    },
                )
                reassigned = True
        if not reassigned and finalize_panel_if_complete(run, assignment.report_id):
            decided.append(assignment.report_id)
    return decided
