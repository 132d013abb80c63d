"""Tick driver: advances a seeded world through the configured horizon.

One tick, in order: program launches and scope/broadcast housekeeping, due
snipe resubmissions, in-house review resolutions, assignment expiries, agent
actions (hunt / verify / idle), then end-of-tick bookkeeping (batched hunt
effort, submission races). Settlement happens in the same tick a decision is
reached, so the ledger never carries an unexplained gap between the two.

(config, seed) -> event log is a pure function: all randomness flows from a
single generator seeded once, and every state change goes through the ledger.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from ..config import SimulationConfig
from ..core.errors import BudgetExhausted, InsufficientVerifiers, ProgramInactive
from ..core.events import EventKind, EventLog
from ..core.state import Run, WorldState
from ..core.types import (
    DecisionKind,
    LatentVuln,
    LifecycleState,
    ProcessVariant,
    Report,
)
from ..engine.settlement import record_inhouse_decision, settle, vendor_override
from ..engine.submission import ReportDraft, submit_report
from ..engine.validation import ValidationMode, ValidationOutcomeKind, vendor_validate
from ..engine.verification import (
    assign_verifiers,
    expire_due_assignments,
    finalize_panel_if_complete,
    record_verdict,
)
from ..policies import quality_score, reproduction_probability
from .agents import Action, choose_action, hunt_step, verify_step
from .payoff import PayoffModel
from .population import build_genesis


@dataclass
class RunResult:
    config: SimulationConfig
    seed: int
    world: WorldState
    log: EventLog
    elapsed_seconds: float


def run_simulation(config: SimulationConfig, seed: int) -> RunResult:
    """Execute ``config.horizon`` ticks from a fresh world; fully reproducible."""
    started = time.perf_counter()
    rng = random.Random(seed)
    run = Run()
    build_genesis(run, config, seed, rng)
    payoff = PayoffModel.from_config(config.payoff)
    for tick in range(config.horizon):
        run.tick = tick
        run.world.tick = tick
        step_world(run, payoff, rng)
    run.tick = config.horizon
    run.world.tick = config.horizon
    _finalize(run, rng)
    return RunResult(
        config=config,
        seed=seed,
        world=run.world,
        log=run.log,
        elapsed_seconds=time.perf_counter() - started,
    )


def step_world(run: Run, payoff: PayoffModel, rng: random.Random) -> None:
    """Advance the world by one tick; deterministic given (world, rng state)."""
    world = run.world

    _activate_programs(run)
    _process_due_snipes(run, rng)
    _process_due_reviews(run, rng)
    for report_id in expire_due_assignments(run, rng):
        _settle_and_resolve(run, report_id, rng)

    # Pools snapshot lazily at tick start so same-tick hunters can race to
    # the same undiscovered issue.
    pools: dict[str, tuple[list[LatentVuln], list[LatentVuln]]] = {}
    accepted_by_program: dict[str, list[str]] = {}
    hunts: list[tuple[str, str]] = []
    order = sorted(world.agents)
    rng.shuffle(order)
    for hacker_id in order:
        action = choose_action(world, hacker_id, payoff, rng)
        if action.kind == "idle":
            continue
        if not world.agents[hacker_id].onboarded:
            run.emit(EventKind.HACKER_ONBOARDED, hacker_id, {"hacker_id": hacker_id})
        if action.kind == "hunt":
            hunts.append((hacker_id, action.program_id))
            if action.program_id not in pools:
                pools[action.program_id] = _tick_pools(world, action.program_id)
            in_scope, future = pools[action.program_id]
            draft = hunt_step(
                world, hacker_id, action.program_id, payoff, rng, in_scope, future
            )
            if draft is not None:
                _submit_and_process(run, draft, rng, accepted_by_program)
        elif action.kind == "verify":
            _perform_verification(run, hacker_id, action, rng)

    if hunts:
        run.emit(
            EventKind.HUNTS_PERFORMED,
            "system",
            {"hunts": [[h, p] for h, p in hunts]},
        )
    for program_id in sorted(accepted_by_program):
        if len(accepted_by_program[program_id]) >= 2:
            reporters = sorted(set(accepted_by_program[program_id]))
            run.emit(
                EventKind.SUBMISSION_RACE,
                "system",
                {"program_id": program_id, "hacker_ids": reporters},
            )


def _activate_programs(run: Run) -> None:
    world = run.world
    tick = run.tick
    interval = world.config.gamification.purpose_broadcast_interval
    for program_id in sorted(world.programs):
        program = world.programs[program_id]
        if not program.launched and program.launch_tick <= tick:
            run.emit(EventKind.PROGRAM_LAUNCHED, "system", {"program_id": program_id})
        if not program.active:
            continue
        since_launch = program.ticks_since_launch(tick)
        for stage_index, (activation_tick, fraction) in enumerate(program.scope_stages):
            if stage_index > program.active_stage and activation_tick <= since_launch:
                run.emit(
                    EventKind.SCOPE_STAGE_ACTIVATED,
                    "system",
                    {
                        "program_id": program_id,
                        "stage_index": stage_index,
                        "fraction": fraction,
                    },
                )
        if interval > 0 and since_launch % interval == 0:
            run.emit(EventKind.PURPOSE_BROADCAST, "system", {"program_id": program_id})


def _tick_pools(world: WorldState, program_id: str) -> tuple[list[LatentVuln], list[LatentVuln]]:
    """Undiscovered vulns split into (in active scope, beyond active scope)."""
    program = world.programs[program_id]
    in_scope: list[LatentVuln] = []
    future: list[LatentVuln] = []
    for vuln_id in sorted(program.latent_vulns):
        vuln = program.latent_vulns[vuln_id]
        if vuln.discovered:
            continue
        if vuln.in_scope_stage <= program.active_stage:
            in_scope.append(vuln)
        else:
            future.append(vuln)
    return in_scope, future


def _submit_and_process(
    run: Run,
    draft: ReportDraft,
    rng: random.Random,
    accepted_by_program: dict[str, list[str]],
) -> None:
    try:
        outcome = submit_report(run, draft)
    except ProgramInactive:
        return
    if not outcome.accepted:
        return
    accepted_by_program.setdefault(draft.program_id, []).append(draft.reporter_id)
    _process_pipeline(run, outcome.report_id, rng)


def _process_pipeline(run: Run, report_id: str, rng: random.Random) -> None:
    """Post-acceptance routing: validation, then the variant's verification path."""
    world = run.world
    report = world.reports[report_id]
    program = world.programs[report.program_id]
    variant = program.variant

    if variant is ProcessVariant.CROWD_VETTED:
        mode = (
            ValidationMode.ENABLED
            if world.config.verification.vendor_validation
            else ValidationMode.SKIPPED
        )
        outcome = vendor_validate(run, report_id, mode, performed_by="vendor")
        if outcome.kind is ValidationOutcomeKind.FORWARD:
            try:
                assign_verifiers(
                    run, report_id, list(world.hackers.values()),
                    k=program.quorum_size, rng=rng,
                )
            except InsufficientVerifiers:
                run.emit(
                    EventKind.REPORT_DECIDED,
                    "vendor",
                    {
                        "report_id": report_id,
                        "decision": DecisionKind.ESCALATED.value,
                        "tally": [0, 0, 0],
                        "in_house": False,
                        "by": "vendor",
                    },
                )
                _settle_and_resolve(run, report_id, rng)
        elif outcome.kind is ValidationOutcomeKind.ESCALATE_CRITICAL_OUT_OF_SCOPE:
            _settle_and_resolve(run, report_id, rng)
        return

    performer = "vendor" if variant is ProcessVariant.DIRECT else "platform"
    outcome = vendor_validate(run, report_id, ValidationMode.ENABLED, performed_by=performer)
    if outcome.kind is ValidationOutcomeKind.ESCALATE_CRITICAL_OUT_OF_SCOPE:
        _settle_and_resolve(run, report_id, rng)
        return
    if outcome.kind is not ValidationOutcomeKind.FORWARD:
        return
    if variant is ProcessVariant.DIRECT:
        quality = quality_score(report.features, world.config.policies.weights())
        if quality < world.config.costs.correspondence_quality_threshold:
            run.emit(
                EventKind.VENDOR_CORRESPONDENCE,
                "vendor",
                {"report_id": report_id, "program_id": report.program_id},
            )
    else:
        run.emit(
            EventKind.PLATFORM_FEE_CHARGED,
            "platform",
            {
                "report_id": report_id,
                "program_id": report.program_id,
                "amount": world.config.costs.platform_fee_per_report,
            },
        )


def _perform_verification(run: Run, hacker_id: str, action: Action, rng: random.Random) -> None:
    world = run.world
    assignment = world.assignments[action.assignment_id]
    result = verify_step(world, hacker_id, action.assignment_id, rng)
    state = record_verdict(run, action.assignment_id, result.verdict)
    report = world.reports[assignment.report_id]
    if result.leak:
        vuln = None
        if report.latent_vuln_id is not None:
            vuln = world.programs[report.program_id].latent_vulns.get(report.latent_vuln_id)
        run.emit(
            EventKind.LEAK_RECORDED,
            hacker_id,
            {
                "assignment_id": action.assignment_id,
                "report_id": assignment.report_id,
                "verifier_id": hacker_id,
                "program_id": report.program_id,
                "vuln_id": report.latent_vuln_id,
                "severity": vuln.severity.value if vuln else report.claimed_severity.value,
            },
        )
    if result.snipe:
        run.emit(
            EventKind.SNIPE_PLANNED,
            hacker_id,
            {
                "verifier_id": hacker_id,
                "report_id": assignment.report_id,
                "due_tick": run.tick + 1,
            },
        )
    if state is LifecycleState.DECIDED:
        _settle_and_resolve(run, assignment.report_id, rng)


def _process_due_snipes(run: Run, rng: random.Random) -> None:
    """Submit the copies snipers planned; the gates apply like any submission."""
    world = run.world
    due = sorted(
        (entry for entry in world.pending_snipes if entry[0] == run.tick),
    )
    for _, verifier_id, report_id in due:
        original = world.reports[report_id]
        draft = ReportDraft(
            program_id=original.program_id,
            reporter_id=verifier_id,
            features=frozenset(original.features),
            fingerprint=original.fingerprint,
            claimed_severity=original.claimed_severity,
            latent_vuln_id=original.latent_vuln_id,
        )
        try:
            outcome = submit_report(run, draft)
        except ProgramInactive:
            continue
        if outcome.accepted:
            _process_pipeline(run, outcome.report_id, rng)


def _process_due_reviews(run: Run, rng: random.Random) -> None:
    """Resolve in-house reviews (direct and platform variants) falling due now."""
    world = run.world
    due = sorted(
        (entry for entry in world.pending_reviews if entry[0] == run.tick),
        key=lambda e: (e[0], e[1]),
    )
    for _, report_id, reviewer in due:
        report = world.reports[report_id]
        if report.state is not LifecycleState.VENDOR_VALIDATED:
            continue
        if world.programs[report.program_id].paused:
            continue
        reproduced = _inhouse_reproduces(world, report, reviewer, rng)
        record_inhouse_decision(run, report_id, reproduced, reviewer)
        _settle_and_resolve(run, report_id, rng)


def _inhouse_reproduces(
    world: WorldState, report: Report, reviewer: str, rng: random.Random
) -> bool:
    program = world.programs[report.program_id]
    vuln = (
        program.latent_vulns.get(report.latent_vuln_id)
        if report.latent_vuln_id is not None
        else None
    )
    if vuln is None:
        return False
    skill = (
        world.config.costs.vendor_skill
        if reviewer == "vendor"
        else world.config.costs.platform_skill
    )
    quality = quality_score(report.features, world.config.policies.weights())
    return rng.random() < reproduction_probability(quality, skill, vuln.difficulty)


def _settle_and_resolve(run: Run, report_id: str, rng: random.Random) -> None:
    """Settle a decided report; escalations get the vendor's case-by-case call."""
    world = run.world
    report = world.reports[report_id]
    try:
        settle(run, report_id)
    except BudgetExhausted:
        return
    if report.decision is not None and report.decision.kind is DecisionKind.ESCALATED:
        accept = _inhouse_reproduces(world, report, "vendor", rng)
        try:
            vendor_override(run, report_id, accept)
        except BudgetExhausted:
            return


def _finalize(run: Run, rng: random.Random) -> None:
    """Close the program window at the horizon.

    Open assignments are expired (horizon acts as a universal deadline),
    panels decide on whatever verdicts were cast, and every decided report
    settles, so no completed assignment is left without its fee. Unresolved
    in-house reviews simply lapse with the window.
    """
    world = run.world
    open_ids = sorted(world.open_assignment_ids)
    for assignment_id in open_ids:
        assignment = world.assignments[assignment_id]
        run.emit(
            EventKind.ASSIGNMENT_EXPIRED,
            "system",
            {"assignment_id": assignment_id, "report_id": assignment.report_id},
        )
        finalize_panel_if_complete(run, assignment.report_id)
    for report_id in sorted(world.reports):
        report = world.reports[report_id]
        if report.state is LifecycleState.DECIDED:
            _settle_and_resolve(run, report_id, rng)
    run.emit(EventKind.RUN_FINISHED, "system", {"tick": run.tick})
