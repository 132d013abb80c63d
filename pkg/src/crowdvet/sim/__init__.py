"""Seeded agent-based simulation of hacker populations against bounty programs."""

from .agents import Action, VerifyResult, choose_action, hunt_step, program_emp, verify_step  # noqa: F401
from .payoff import PayoffModel, expected_marginal_payoff  # noqa: F401
from .population import ARCHETYPE_FEATURE_MEANS, build_genesis, weighted_choice  # noqa: F401
from .runner import RunResult, run_simulation, step_world  # noqa: F401
