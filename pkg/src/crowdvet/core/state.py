"""World state, event application, and deterministic replay.

Every state change in a run flows through :func:`apply_event`; the live
simulation and :func:`replay` share the exact same code path, which is what
makes a replayed ledger reproduce the final world field-for-field.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from ..config import SimulationConfig
from ..gamification.elements import trigger_elements
from ..gamification.engagement import (
    EngagementParams,
    apply_boost,
    apply_penalty,
    apply_triggers,
)
from .errors import CorruptEvent
from .events import Event, EventKind, EventLog, append_event
from .lifecycle import transition
from .types import (
    AgentState,
    BehaviorKind,
    Decision,
    DecisionKind,
    Fingerprint,
    GateReason,
    HackerProfile,
    LatentVuln,
    LifecycleState,
    ProcessVariant,
    Program,
    Report,
    ReportFeature,
    RewardSchedule,
    Severity,
    SubmissionStats,
    UserType,
    ValidationOutcomeKind,
    VerdictKind,
    Verdict,
    VerificationAssignment,
    Archetype,
)


@dataclass
class WorldState:
    tick: int = 0
    seed: int | None = None
    horizon: int = 0
    config: SimulationConfig | None = None
    hackers: dict[str, HackerProfile] = field(default_factory=dict)
    agents: dict[str, AgentState] = field(default_factory=dict)
    programs: dict[str, Program] = field(default_factory=dict)
    reports: dict[str, Report] = field(default_factory=dict)
    assignments: dict[str, VerificationAssignment] = field(default_factory=dict)
    # (due_tick, report_id, reviewer) for in-house review variants.
    pending_reviews: list[tuple[int, str, str]] = field(default_factory=list)
    # (due_tick, verifier_id, report_id) for planned snipe resubmissions.
    pending_snipes: list[tuple[int, str, str]] = field(default_factory=list)
    next_report_seq: int = 1
    next_assignment_seq: int = 1
    finished: bool = False
    # Derived indexes, rebuilt by apply; excluded from snapshots.
    fingerprint_index: dict[tuple[str, str, str], list[str]] = field(default_factory=dict)
    open_assignment_ids: set[str] = field(default_factory=set)
    open_assignments_by_verifier: dict[str, set[str]] = field(default_factory=dict)

    @property
    def engagement_params(self) -> EngagementParams:
        gam = self.config.gamification if self.config else None
        if gam is None:
            return EngagementParams()
        return EngagementParams(decay=gam.engagement_decay, gain=gam.trigger_gain)

    def new_report_id(self) -> str:
        return f"r-{self.next_report_seq:06d}"

    def new_assignment_id(self) -> str:
        return f"a-{self.next_assignment_seq:06d}"

    def reports_for_program(self, program_id: str) -> list[Report]:
        return [r for r in self.reports.values() if r.program_id == program_id]

    def panel_for(self, report: Report) -> list[VerificationAssignment]:
        return [self.assignments[a] for a in report.assignment_ids]

    def to_dict(self) -> dict:
        return {
            "tick": self.tick,
            "seed": self.seed,
            "horizon": self.horizon,
            "config_digest": self.config.digest() if self.config else None,
            "hackers": {k: v.to_dict() for k, v in sorted(self.hackers.items())},
            "agents": {k: v.to_dict() for k, v in sorted(self.agents.items())},
            "programs": {k: v.to_dict() for k, v in sorted(self.programs.items())},
            "reports": {k: v.to_dict() for k, v in sorted(self.reports.items())},
            "assignments": {k: v.to_dict() for k, v in sorted(self.assignments.items())},
            "pending_reviews": [list(p) for p in sorted(self.pending_reviews)],
            "pending_snipes": [list(p) for p in sorted(self.pending_snipes)],
            "next_report_seq": self.next_report_seq,
            "next_assignment_seq": self.next_assignment_seq,
            "finished": self.finished,
        }

    def digest(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()


class Run:
    """A world plus its ledger; ``emit`` is the only way state changes."""

    def __init__(self, world: WorldState | None = None, log: EventLog | None = None):
        self.world = world if world is not None else WorldState()
        self.log = log if log is not None else EventLog()
        self.tick = self.world.tick

    def emit(self, kind: str, actor: str, payload: dict | None = None) -> Event:
        event = Event(
            tick=self.tick,
            seq=self.log.next_seq(),
            actor=actor,
            kind=kind,
            payload=payload or {},
        )
        append_event(self.log, event)
        apply_event(self.world, event)
        return event


def replay(log: EventLog) -> WorldState:
    """Fold a ledger into the unique world state it describes.

    Raises :class:`CorruptEvent` for unknown event kinds. Replaying a
    serialized-and-reparsed log is idempotent: same events, same state.
    """
    world = WorldState()
    for event in log:
        apply_event(world, event)
    return world


def replay_lines(lines: list[str]) -> WorldState:
    return replay(EventLog.from_lines(lines))


# ---------------------------------------------------------------------------
# Event application
# ---------------------------------------------------------------------------

def apply_event(world: WorldState, event: Event) -> None:
    handler = _HANDLERS.get(event.kind)
    if handler is None:
        raise CorruptEvent(f"unknown event kind: {event.kind!r}")
    world.tick = event.tick
    handler(world, event)


def _broadcast_triggers(world: WorldState, kind: str, tick: int) -> None:
    triggers = trigger_elements(kind)
    params = world.engagement_params
    for profile in world.hackers.values():
        apply_triggers(profile, triggers, tick, params)


def _grant_points(
    world: WorldState,
    hacker_id: str,
    points: int,
    tick: int,
    program_id: str | None,
    trigger_kind: str,
) -> None:
    profile = world.hackers[hacker_id]
    if points > 0:
        old = profile.points
        profile.points = old + points
        profile.points_tick = tick
        if program_id is not None:
            profile.points_by_program[program_id] = (
                profile.points_by_program.get(program_id, 0) + points
            )
        apply_triggers(profile, trigger_elements(trigger_kind), tick, world.engagement_params)
        gam = world.config.gamification if world.config else None
        if gam is not None and gam.round_number_hazard and not profile.hazard_applied:
            if old // gam.hazard_multiple < profile.points // gam.hazard_multiple:
                apply_penalty(profile, gam.hazard_penalty, tick, world.engagement_params)
                profile.hazard_applied = True


def _report_from_payload(payload: dict, state: LifecycleState) -> Report:
    return Report(
        report_id=payload["report_id"],
        program_id=payload["program_id"],
        reporter_id=payload["reporter_id"],
        submitted_at=payload["submitted_at"],
        features={ReportFeature(f) for f in payload["features"]},
        fingerprint=Fingerprint.from_dict(payload["fingerprint"]),
        claimed_severity=Severity(payload["claimed_severity"]),
        latent_vuln_id=payload.get("latent_vuln_id"),
        state=state,
    )


def _on_run_started(world: WorldState, event: Event) -> None:
    world.seed = event.payload["seed"]
    world.horizon = event.payload["horizon"]
    world.config = SimulationConfig.model_validate(event.payload["config"])


def _on_run_finished(world: WorldState, event: Event) -> None:
    world.finished = True


def _on_hacker_registered(world: WorldState, event: Event) -> None:
    p = event.payload
    world.hackers[p["hacker_id"]] = HackerProfile(
        hacker_id=p["hacker_id"],
        user_type=UserType(p["user_type"]),
        archetype=Archetype(p["archetype"]),
        skill=p["skill"],
        vetted=p["vetted"],
        stats=SubmissionStats(),
        engagement=p["engagement"],
        engagement_tick=event.tick,
    )
    world.agents[p["hacker_id"]] = AgentState(
        hacker_id=p["hacker_id"],
        behavior=BehaviorKind(p.get("behavior", "honest")),
        activation=p.get("activation", 0.0),
        leak_prob=p.get("leak_prob", 0.0),
        partner_id=p.get("partner_id"),
    )


def _on_team_joined(world: WorldState, event: Event) -> None:
    p = event.payload
    profile = world.hackers[p["hacker_id"]]
    profile.team_id = p["team_id"]
    apply_triggers(
        profile, trigger_elements(EventKind.TEAM_JOINED), event.tick, world.engagement_params
    )


def _on_program_registered(world: WorldState, event: Event) -> None:
    p = event.payload
    world.programs[p["program_id"]] = Program(
        program_id=p["program_id"],
        variant=ProcessVariant(p["variant"]),
        scope_stages=[tuple(s) for s in p["scope_stages"]],
        budget=p["budget"],
        reward_schedule=RewardSchedule.from_dict(p["reward_schedule"]),
        quorum_size=p["quorum_size"],
        quorum_threshold=p["quorum_threshold"],
        launch_tick=p["launch_tick"],
        latent_vulns={v["vuln_id"]: LatentVuln.from_dict(v) for v in p["latent_vulns"]},
        budget_remaining=p["budget"],
    )


def _on_program_launched(world: WorldState, event: Event) -> None:
    world.programs[event.payload["program_id"]].launched = True


def _on_program_paused(world: WorldState, event: Event) -> None:
    world.programs[event.payload["program_id"]].paused = True


def _on_scope_stage_activated(world: WorldState, event: Event) -> None:
    p = event.payload
    program = world.programs[p["program_id"]]
    program.active_stage = p["stage_index"]
    program.stage_actionable_count = 0
    # Fresh scope wipes accumulated hunting fatigue on this program.
    for agent in world.agents.values():
        if agent.fatigue.get(p["program_id"], 0.0) > 0.0:
            agent.fatigue[p["program_id"]] = 0.0
            agent.fatigue_tick[p["program_id"]] = event.tick
    _broadcast_triggers(world, EventKind.SCOPE_STAGE_ACTIVATED, event.tick)


def _on_purpose_broadcast(world: WorldState, event: Event) -> None:
    _broadcast_triggers(world, EventKind.PURPOSE_BROADCAST, event.tick)


def _on_hacker_onboarded(world: WorldState, event: Event) -> None:
    hacker_id = event.payload["hacker_id"]
    world.agents[hacker_id].onboarded = True
    boost = world.config.gamification.onboarding_boost if world.config else 0.0
    apply_boost(world.hackers[hacker_id], boost, event.tick, world.engagement_params)


def _on_hunts_performed(world: WorldState, event: Event) -> None:
    recovery = world.config.behavior.effort_recovery if world.config else 0.0
    for hacker_id, program_id in event.payload["hunts"]:
        agent = world.agents[hacker_id]
        agent.effort[program_id] = agent.effort.get(program_id, 0) + 1
        agent.add_fatigue(program_id, event.tick, recovery)
        if agent.last_program is not None and agent.last_program != program_id:
            agent.switch_count += 1
        agent.last_program = program_id


def _on_report_submitted(world: WorldState, event: Event) -> None:
    p = event.payload
    report = _report_from_payload(p, LifecycleState.SUBMITTED)
    world.reports[report.report_id] = report
    world.next_report_seq += 1
    world.fingerprint_index.setdefault(report.fingerprint.key, []).append(report.report_id)
    profile = world.hackers[report.reporter_id]
    profile.stats.record_submission(event.tick)
    profile.accepted_count += 1
    if report.latent_vuln_id is not None:
        vuln = world.programs[report.program_id].latent_vulns.get(report.latent_vuln_id)
        if vuln is not None and not vuln.discovered:
            vuln.discovered = True


def _on_report_gate_rejected(world: WorldState, event: Event) -> None:
    p = event.payload
    report = _report_from_payload(p, LifecycleState.REJECTED_AT_GATE)
    report.gate_reason = GateReason(p["reason"])
    world.reports[report.report_id] = report
    world.next_report_seq += 1
    # Gate-rejected reports never anchor duplicate checks and consume no
    # rate-limit quota: they were never processed.


def _on_report_validated(world: WorldState, event: Event) -> None:
    p = event.payload
    report = world.reports[p["report_id"]]
    outcome = ValidationOutcomeKind(p["outcome"])
    if outcome is ValidationOutcomeKind.FORWARD:
        transition(report, LifecycleState.VENDOR_VALIDATED)
        _maybe_enqueue_review(world, report, event.tick)
    elif outcome is ValidationOutcomeKind.DUPLICATE:
        report.duplicate_of = p["original_report_id"]
        transition(report, LifecycleState.CLOSED_DUPLICATE)
        world.hackers[report.reporter_id].stats.unverified_count += 1
    elif outcome is ValidationOutcomeKind.OUT_OF_SCOPE:
        transition(report, LifecycleState.CLOSED_OUT_OF_SCOPE)
        world.hackers[report.reporter_id].stats.unverified_count += 1
    # ESCALATE_CRITICAL_OUT_OF_SCOPE leaves the state alone; the decided
    # event that immediately follows performs the transition.


def _maybe_enqueue_review(world: WorldState, report: Report, tick: int) -> None:
    program = world.programs[report.program_id]
    costs = world.config.costs if world.config else None
    if program.variant is ProcessVariant.DIRECT:
        delay = costs.vendor_review_delay if costs else 0
        world.pending_reviews.append((tick + delay, report.report_id, "vendor"))
    elif program.variant is ProcessVariant.PLATFORM:
        delay = costs.platform_review_delay if costs else 0
        world.pending_reviews.append((tick + delay, report.report_id, "platform"))


def _on_vendor_correspondence(world: WorldState, event: Event) -> None:
    pass  # cost accounting only; metrics count these events


def _on_platform_fee_charged(world: WorldState, event: Event) -> None:
    pass  # operational cost, not drawn from the reward budget


def _index_open_assignment(world: WorldState, assignment: VerificationAssignment) -> None:
    world.open_assignment_ids.add(assignment.assignment_id)
    world.open_assignments_by_verifier.setdefault(assignment.verifier_id, set()).add(
        assignment.assignment_id
    )


def _unindex_assignment(world: WorldState, assignment: VerificationAssignment) -> None:
    world.open_assignment_ids.discard(assignment.assignment_id)
    by_verifier = world.open_assignments_by_verifier.get(assignment.verifier_id)
    if by_verifier is not None:
        by_verifier.discard(assignment.assignment_id)


def _on_verifiers_assigned(world: WorldState, event: Event) -> None:
    p = event.payload
    report = world.reports[p["report_id"]]
    for a in p["assignments"]:
        assignment = VerificationAssignment(
            assignment_id=a["assignment_id"],
            report_id=p["report_id"],
            verifier_id=a["verifier_id"],
            assigned_at=a["assigned_at"],
            deadline=a["deadline"],
        )
        world.assignments[assignment.assignment_id] = assignment
        report.assignment_ids.append(assignment.assignment_id)
        world.next_assignment_seq += 1
        _index_open_assignment(world, assignment)
    transition(report, LifecycleState.DISTRIBUTED)


def _on_assignment_expired(world: WorldState, event: Event) -> None:
    assignment = world.assignments[event.payload["assignment_id"]]
    assignment.abandoned = True
    _unindex_assignment(world, assignment)


def _on_verifier_reassigned(world: WorldState, event: Event) -> None:
    p = event.payload
    a = p["assignment"]
    assignment = VerificationAssignment(
        assignment_id=a["assignment_id"],
        report_id=p["report_id"],
        verifier_id=a["verifier_id"],
        assigned_at=a["assigned_at"],
        deadline=a["deadline"],
        is_replacement=True,
    )
    world.assignments[assignment.assignment_id] = assignment
    world.reports[p["report_id"]].assignment_ids.append(assignment.assignment_id)
    world.next_assignment_seq += 1
    _index_open_assignment(world, assignment)


def _on_verdict_recorded(world: WorldState, event: Event) -> None:
    p = event.payload
    assignment = world.assignments[p["assignment_id"]]
    assignment.verdict = Verdict(kind=VerdictKind(p["verdict"]), notes=p.get("notes", ""))
    _unindex_assignment(world, assignment)
    world.hackers[assignment.verifier_id].stats.verifications_completed += 1
    report = world.reports[assignment.report_id]
    if report.state is LifecycleState.DISTRIBUTED:
        transition(report, LifecycleState.AWAITING_VERDICTS)


def _on_report_decided(world: WorldState, event: Event) -> None:
    p = event.payload
    report = world.reports[p["report_id"]]
    report.decision = Decision(kind=DecisionKind(p["decision"]), tally=tuple(p["tally"]))
    report.decided_at = event.tick
    transition(report, LifecycleState.DECIDED)


def _on_report_settled(world: WorldState, event: Event) -> None:
    report = world.reports[event.payload["report_id"]]
    transition(report, LifecycleState.SETTLED)
    stats = world.hackers[report.reporter_id].stats
    if report.decision is not None:
        if report.decision.kind is DecisionKind.ACTIONABLE:
            stats.verified_count += 1
            program = world.programs[report.program_id]
            program.settled_actionable_count += 1
            program.stage_actionable_count += 1
        elif report.decision.kind is DecisionKind.DISMISSED_WITH_REASONING:
            stats.unverified_count += 1
        # Escalated reports resolve their stats via the vendor override.


def _on_vendor_override_resolved(world: WorldState, event: Event) -> None:
    p = event.payload
    report = world.reports[p["report_id"]]
    report.override_accepted = p["accepted"]
    stats = world.hackers[report.reporter_id].stats
    if p["accepted"]:
        stats.verified_count += 1
        program = world.programs[report.program_id]
        program.settled_actionable_count += 1
        program.stage_actionable_count += 1
    else:
        stats.unverified_count += 1


def _on_reward_issued(world: WorldState, event: Event) -> None:
    p = event.payload
    program = world.programs[p["program_id"]]
    program.budget_remaining -= p["amount"]
    _grant_points(
        world, p["recipient_id"], p["points"], event.tick, p["program_id"],
        EventKind.REWARD_ISSUED,
    )


def _on_points_awarded(world: WorldState, event: Event) -> None:
    p = event.payload
    _grant_points(
        world, p["hacker_id"], p["points"], event.tick, p.get("program_id"),
        EventKind.POINTS_AWARDED,
    )


def _on_badge_awarded(world: WorldState, event: Event) -> None:
    p = event.payload
    profile = world.hackers[p["hacker_id"]]
    profile.badges.add(p["badge_id"])
    apply_triggers(
        profile, trigger_elements(EventKind.BADGE_AWARDED), event.tick, world.engagement_params
    )


def _on_certificate_issued(world: WorldState, event: Event) -> None:
    p = event.payload
    profile = world.hackers[p["hacker_id"]]
    profile.certificates.add(p["certificate_id"])
    apply_triggers(
        profile, trigger_elements(EventKind.CERTIFICATE_ISSUED), event.tick,
        world.engagement_params,
    )


def _on_submission_race(world: WorldState, event: Event) -> None:
    triggers = trigger_elements(EventKind.SUBMISSION_RACE)
    params = world.engagement_params
    for hacker_id in event.payload["hacker_ids"]:
        apply_triggers(world.hackers[hacker_id], triggers, event.tick, params)


def _on_snipe_planned(world: WorldState, event: Event) -> None:
    p = event.payload
    world.pending_snipes.append((p["due_tick"], p["verifier_id"], p["report_id"]))


def _on_leak_recorded(world: WorldState, event: Event) -> None:
    p = event.payload
    vuln_id = p.get("vuln_id")
    if vuln_id is not None:
        vuln = world.programs[p["program_id"]].latent_vulns.get(vuln_id)
        if vuln is not None:
            vuln.leaked = True


_HANDLERS = {
    EventKind.RUN_STARTED: _on_run_started,
    EventKind.RUN_FINISHED: _on_run_finished,
    EventKind.HACKER_REGISTERED: _on_hacker_registered,
    EventKind.TEAM_JOINED: _on_team_joined,
    EventKind.PROGRAM_REGISTERED: _on_program_registered,
    EventKind.PROGRAM_LAUNCHED: _on_program_launched,
    EventKind.PROGRAM_PAUSED: _on_program_paused,
    EventKind.SCOPE_STAGE_ACTIVATED: _on_scope_stage_activated,
    EventKind.PURPOSE_BROADCAST: _on_purpose_broadcast,
    EventKind.HACKER_ONBOARDED: _on_hacker_onboarded,
    EventKind.HUNTS_PERFORMED: _on_hunts_performed,
    EventKind.REPORT_SUBMITTED: _on_report_submitted,
    EventKind.REPORT_GATE_REJECTED: _on_report_gate_rejected,
    EventKind.REPORT_VALIDATED: _on_report_validated,
    EventKind.VENDOR_CORRESPONDENCE: _on_vendor_correspondence,
    EventKind.PLATFORM_FEE_CHARGED: _on_platform_fee_charged,
    EventKind.VERIFIERS_ASSIGNED: _on_verifiers_assigned,
    EventKind.ASSIGNMENT_EXPIRED: _on_assignment_expired,
    EventKind.VERIFIER_REASSIGNED: _on_verifier_reassigned,
    EventKind.VERDICT_RECORDED: _on_verdict_recorded,
    EventKind.REPORT_DECIDED: _on_report_decided,
    EventKind.REPORT_SETTLED: _on_report_settled,
    EventKind.VENDOR_OVERRIDE_RESOLVED: _on_vendor_override_resolved,
    EventKind.REWARD_ISSUED: _on_reward_issued,
    EventKind.POINTS_AWARDED: _on_points_awarded,
    EventKind.BADGE_AWARDED: _on_badge_awarded,
    EventKind.CERTIFICATE_ISSUED: _on_certificate_issued,
    EventKind.SUBMISSION_RACE: _on_submission_race,
    EventKind.SNIPE_PLANNED: _on_snipe_planned,
    EventKind.LEAK_RECORDED: _on_leak_recorded,
}
