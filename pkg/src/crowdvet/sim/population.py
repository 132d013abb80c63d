"""Genesis: seed a run's ledger with its population and programs."""

from __future__ import annotations

import random

from ..config import ProgramConfig, SimulationConfig
from ..core.events import EventKind
from ..core.state import Run
from ..core.types import Archetype, BehaviorKind, Severity, UserType, VulnClass

# Mean report-feature counts (out of 8) per archetype: project-specific
# contributors invest the most effort per report.
ARCHETYPE_FEATURE_MEANS = {
    Archetype.PROJECT_SPECIFIC: 6.0,
    Archetype.NON_PROJECT_SPECIFIC: 3.0,
    Archetype.GENERALIST: 4.5,
}


def weighted_choice(rng: random.Random, ordered: list[tuple[str, float]]) -> str:
    """Draw one key from (key, weight) pairs; iteration order is the caller's."""
    total = sum(w for _, w in ordered)
    roll = rng.random() * total
    acc = 0.0
    for key, weight in ordered:
        acc += weight
        if roll < acc:
            return key
    return ordered[-1][0]


def _ordered_mix(mix: dict[str, float], order: list[str]) -> list[tuple[str, float]]:
    return [(key, mix.get(key, 0.0)) for key in order]


def _generate_latent_vulns(program: ProgramConfig, rng: random.Random) -> list[dict]:
    n = program.vuln_count
    severity_order = [s.value for s in Severity]
    classes = list(VulnClass)
    fractions = [f for _, f in program.scope_stages]
    lo, hi = program.difficulty_range
    vulns = []
    for i in range(n):
        stage = len(program.scope_stages)
        for s, fraction in enumerate(fractions):
            if i < fraction * n:
                stage = s
                break
        severity = weighted_choice(rng, _ordered_mix(program.severity_mix, severity_order))
        difficulty = lo + (hi - lo) * rng.random()
        vuln_class = classes[rng.randrange(len(classes))]
        vulns.append(
            {
                "vuln_id": f"{program.program_id}-v{i:04d}",
                "program_id": program.program_id,
                "severity": severity,
                "difficulty": difficulty,
                "vuln_class": vuln_class.value,
                "in_scope_stage": stage,
                "discovered": False,
                "leaked": False,
            }
        )
    return vulns


def build_genesis(run: Run, config: SimulationConfig, seed: int, rng: random.Random) -> None:
    """Emit the genesis events: run header, hackers, teams, programs.

    All randomness (types, skills, vetting, behaviors, latent pools) draws
    from ``rng`` in a fixed order, so genesis is a pure function of
    (config, seed).
    """
    run.emit(
        EventKind.RUN_STARTED,
        "system",
        {
            "seed": seed,
            "horizon": config.horizon,
            "config": config.canonical_dict(),
            "config_digest": config.digest(),
        },
    )

    pop = config.population
    hacker_ids = [f"h-{i:03d}" for i in range(pop.agent_count)]
    user_order = [u.value for u in UserType]
    archetype_order = [a.value for a in Archetype]
    behavior_order = [b.value for b in BehaviorKind]
    lo, hi = pop.skill_range

    for hacker_id in hacker_ids:
        user_type = weighted_choice(rng, _ordered_mix(pop.user_type_mix, user_order))
        archetype = weighted_choice(rng, _ordered_mix(pop.archetype_mix, archetype_order))
        skill = lo + (hi - lo) * rng.random()
        vetted = rng.random() < pop.vetted_fraction
        behavior = weighted_choice(rng, _ordered_mix(pop.adversary_mix, behavior_order))
        partner_id = None
        if behavior == BehaviorKind.COLLUDER.value and len(hacker_ids) > 1:
            others = [h for h in hacker_ids if h != hacker_id]
            partner_id = others[rng.randrange(len(others))]
        run.emit(
            EventKind.HACKER_REGISTERED,
            "system",
            {
                "hacker_id": hacker_id,
                "user_type": user_type,
                "archetype": archetype,
                "skill": skill,
                "vetted": vetted,
                "engagement": pop.initial_engagement,
                "behavior": behavior,
                "activation": pop.adversary_activation,
                "leak_prob": pop.leak_prob,
                "partner_id": partner_id,
            },
        )

    if pop.team_count > 0:
        for hacker_id in hacker_ids:
            team_id = f"team-{rng.randrange(pop.team_count)}"
            run.emit(
                EventKind.TEAM_JOINED,
                hacker_id,
                {"hacker_id": hacker_id, "team_id": team_id},
            )

    for program in config.programs:
        run.emit(
            EventKind.PROGRAM_REGISTERED,
            "system",
            {
                "program_id": program.program_id,
                "variant": config.process_variant.value,
                "scope_stages": [list(s) for s in program.scope_stages],
                "budget": program.budget,
                "reward_schedule": program.reward_schedule.build().to_dict(),
                "quorum_size": program.quorum.k,
                "quorum_threshold": program.quorum.q,
                "launch_tick": program.launch_tick,
                "latent_vulns": _generate_latent_vulns(program, rng),
            },
        )
