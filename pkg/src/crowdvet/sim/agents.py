"""Agent decision model: what each hacker does with their tick.

Participation is gated by engagement; among the live options (hunting any
active program, or clearing an open verification assignment) agents sample
a softmax over expected currency per tick. Adversarial verifier behaviors
(collusion, leaking, dismiss-then-resubmit sniping) ride on top of the
honest verification model.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
import math

from ..core.state import WorldState
from ..core.types import (
    BehaviorKind,
    Fingerprint,
    LatentVuln,
    Program,
    ReportFeature,
    Severity,
    VerdictKind,
    Verdict,
    VulnClass,
    asset_token_for_stage,
    stage_of_asset_token,
)
from ..engine.submission import ReportDraft
from ..gamification.engagement import current_engagement
from ..policies import quality_score, reproduction_probability
from .payoff import PayoffModel, expected_marginal_payoff
from .population import ARCHETYPE_FEATURE_MEANS, weighted_choice


@dataclass(frozen=True)
class Action:
    kind: str  # "hunt" | "verify" | "idle"
    program_id: str | None = None
    assignment_id: str | None = None

    @classmethod
    def idle(cls) -> "Action":
        return cls(kind="idle")


@dataclass(frozen=True)
class VerifyResult:
    verdict: Verdict
    snipe: bool = False
    leak: bool = False


def program_emp(world: WorldState, hacker_id: str, program: Program, payoff: PayoffModel) -> float:
    """Expected marginal payoff of hunting ``program`` for this hacker now."""
    effort = world.agents[hacker_id].current_fatigue(
        program.program_id, world.tick, world.config.behavior.effort_recovery
    )
    next_k = program.stage_actionable_count + 1
    multiplier = program.reward_schedule.payout_multiplier(
        program.ticks_since_launch(world.tick)
    )
    return expected_marginal_payoff(payoff, effort, next_k, multiplier)


def _softmax_pick(
    rng: random.Random, options: list[tuple[Action, float]], temperature: float
) -> Action:
    top = max(u for _, u in options)
    weights = [math.exp((u - top) / temperature) for _, u in options]
    total = sum(weights)
    roll = rng.random() * total
    acc = 0.0
    for (action, _), weight in zip(options, weights):
        acc += weight
        if roll < acc:
            return action
    return options[-1][0]


def hunt_utility(
    world: WorldState, hacker_id: str, program: Program, payoff: PayoffModel
) -> float:
    """Decision utility of hunting a program: EMP with a ladder-growth tilt.

    Programs early in their bounty ladder appreciate fastest (the next
    confirmed bug bumps payouts by the largest ratio), so hunters weight
    current EMP by that anticipated growth, amplified by the payoff model's
    super-linear exponent.
    """
    emp = program_emp(world, hacker_id, program, payoff)
    next_k = program.stage_actionable_count + 1
    appreciation = (next_k + 1) / next_k
    weight = world.config.behavior.appreciation_weight * payoff.bounty_growth
    return emp * appreciation ** weight


def choose_action(
    world: WorldState, hacker_id: str, payoff: PayoffModel, rng: random.Random
) -> Action:
    """Pick this tick's action for one agent.

    A participation roll against current engagement comes first (engagement
    zero means certain idleness). Idle also wins when every option's payoff
    rate sits below the configured floor; otherwise a softmax over the
    utilities decides between hunting programs and verifying the most
    urgent open assignment, with a stay-bias on the program hunted last so
    near-parity options do not degenerate into coin-flip hopping.
    """
    profile = world.hackers[hacker_id]
    agent = world.agents[hacker_id]
    behavior_cfg = world.config.behavior
    engagement = current_engagement(profile, world.tick, world.engagement_params)
    if rng.random() >= engagement:
        return Action.idle()

    # Stronger super-linear payout scaling raises the value of keeping a
    # presence on every program, so diversification pressure erodes the
    # stay-bias as the exponent grows past linear.
    stay_bias = 1.0 + behavior_cfg.switch_inertia * math.exp(
        -behavior_cfg.diversification_weight * max(0.0, payoff.bounty_growth - 1.0)
    )
    options: list[tuple[Action, float]] = []
    for program_id in sorted(world.programs):
        program = world.programs[program_id]
        if not program.active:
            continue
        utility = hunt_utility(world, hacker_id, program, payoff)
        if program_id == agent.last_program:
            utility *= stay_bias
        options.append((Action(kind="hunt", program_id=program_id), utility))

    open_ids = world.open_assignments_by_verifier.get(hacker_id)
    if open_ids:
        candidates = sorted(
            (world.assignments[a] for a in open_ids),
            key=lambda a: (a.deadline, a.assignment_id),
        )
        next_up = candidates[0]
        fee = world.programs[
            world.reports[next_up.report_id].program_id
        ].reward_schedule.verifier_fee
        options.append(
            (Action(kind="verify", assignment_id=next_up.assignment_id), fee)
        )

    if not options or max(u for _, u in options) < behavior_cfg.idle_utility_floor:
        return Action.idle()
    return _softmax_pick(rng, options, behavior_cfg.softmax_temperature)


def _draw_features(world: WorldState, hacker_id: str, rng: random.Random) -> frozenset[ReportFeature]:
    mean = ARCHETYPE_FEATURE_MEANS[world.hackers[hacker_id].archetype]
    p = mean / len(ReportFeature)
    count = sum(1 for _ in range(len(ReportFeature)) if rng.random() < p)
    return frozenset(rng.sample(list(ReportFeature), count))


def hunt_step(
    world: WorldState,
    hacker_id: str,
    program_id: str,
    payoff: PayoffModel,
    rng: random.Random,
    in_scope_pool: list[LatentVuln],
    future_pool: list[LatentVuln],
) -> ReportDraft | None:
    """One hunt attempt; the caller records the effort at end of tick.

    Returns a report draft on a real find (occasionally targeting a
    not-yet-released scope stage), a fabricated "noise" draft for low-skill
    misfires, or None. An exhausted in-scope pool yields nothing. Pools are
    tick-start snapshots, so two hunters can collide on the same issue and
    race to submit it.
    """
    if not in_scope_pool:
        return None
    profile = world.hackers[hacker_id]
    agent = world.agents[hacker_id]
    behavior_cfg = world.config.behavior
    effort = agent.current_fatigue(program_id, world.tick, behavior_cfg.effort_recovery)
    p_find = min(1.0, payoff.discovery_prob(effort) * (0.5 + profile.skill))

    if rng.random() < p_find:
        pool = in_scope_pool
        if future_pool and rng.random() < behavior_cfg.out_of_scope_discovery_prob:
            pool = future_pool
        vuln = pool[rng.randrange(len(pool))]
        return ReportDraft(
            program_id=program_id,
            reporter_id=hacker_id,
            features=_draw_features(world, hacker_id, rng),
            fingerprint=Fingerprint(
                asset_token=asset_token_for_stage(vuln.in_scope_stage, f"asset-{vuln.vuln_id}"),
                vuln_class=vuln.vuln_class,
                location_token=f"loc-{vuln.vuln_id}",
            ),
            claimed_severity=vuln.severity,
            latent_vuln_id=vuln.vuln_id,
        )

    if rng.random() < behavior_cfg.noise_report_prob * (1.0 - profile.skill):
        program = world.programs[program_id]
        stage = program.active_stage
        if rng.random() < behavior_cfg.noise_out_of_scope_prob:
            stage = program.active_stage + 1
        classes = list(VulnClass)
        severity_order = [s.value for s in Severity]
        mix = world.config.programs_by_id()[program_id].severity_mix
        severity = Severity(
            weighted_choice(rng, [(s, mix.get(s, 0.0)) for s in severity_order])
        )
        tag = f"noise-{hacker_id}-t{world.tick}"
        return ReportDraft(
            program_id=program_id,
            reporter_id=hacker_id,
            features=_draw_features(world, hacker_id, rng),
            fingerprint=Fingerprint(
                asset_token=asset_token_for_stage(stage, f"asset-{tag}"),
                vuln_class=classes[rng.randrange(len(classes))],
                location_token=f"loc-{tag}",
            ),
            claimed_severity=severity,
            latent_vuln_id=None,
        )
    return None


def _honest_verdict(
    world: WorldState,
    verifier_skill: float,
    report_quality: float,
    vuln: LatentVuln | None,
    in_scope: bool,
    rng: random.Random,
) -> tuple[Verdict, bool]:
    """Honest verification outcome plus whether reproduction truly succeeded."""
    cannot_test_prob = world.config.behavior.cannot_test_prob
    if not in_scope:
        return Verdict(VerdictKind.NOT_REPRODUCED, "asset outside the active scope"), False
    if vuln is not None:
        p = reproduction_probability(report_quality, verifier_skill, vuln.difficulty)
        if rng.random() < p:
            return Verdict(VerdictKind.REPRODUCED, "reproduced as described"), True
    # Either the issue does not exist or reproduction failed.
    if rng.random() < cannot_test_prob:
        return Verdict(VerdictKind.CANNOT_TEST, "could not assemble a test environment"), False
    return Verdict(VerdictKind.NOT_REPRODUCED, "could not reproduce"), False


def verify_step(
    world: WorldState, hacker_id: str, assignment_id: str, rng: random.Random
) -> VerifyResult:
    """Produce this verifier's verdict, with adversarial side intents.

    Honest verifiers reproduce with probability driven by report quality,
    their own skill, and the issue's difficulty; out-of-scope issues are
    voted down. Colluders confirm their partner's reports unchecked; snipers
    vote everything down and plan to resubmit issues they could actually
    reproduce; leakers verify honestly but may leak the details.
    """
    assignment = world.assignments[assignment_id]
    report = world.reports[assignment.report_id]
    program = world.programs[report.program_id]
    profile = world.hackers[hacker_id]
    agent = world.agents[hacker_id]

    quality = quality_score(report.features, world.config.policies.weights())
    vuln = (
        program.latent_vulns.get(report.latent_vuln_id)
        if report.latent_vuln_id is not None
        else None
    )
    in_scope = stage_of_asset_token(report.fingerprint.asset_token) <= program.active_stage

    if agent.behavior is BehaviorKind.COLLUDER and agent.partner_id == report.reporter_id:
        if rng.random() < agent.activation:
            return VerifyResult(Verdict(VerdictKind.REPRODUCED, "reproduced as described"))
        verdict, _ = _honest_verdict(world, profile.skill, quality, vuln, in_scope, rng)
        return VerifyResult(verdict)

    if agent.behavior is BehaviorKind.SNIPER:
        _, reproduced = _honest_verdict(world, profile.skill, quality, vuln, in_scope, rng)
        snipe = reproduced and rng.random() < agent.activation
        return VerifyResult(
            Verdict(VerdictKind.NOT_REPRODUCED, "could not reproduce"), snipe=snipe
        )

    verdict, _ = _honest_verdict(world, profile.skill, quality, vuln, in_scope, rng)
    if agent.behavior is BehaviorKind.LEAKER and rng.random() < agent.leak_prob:
        return VerifyResult(verdict, leak=True)
    return VerifyResult(verdict)
