"""Hunting economics: effort-decayed discovery against payouts that grow per find.

A program's early bugs are cheap to find and cheap to pay; as a hacker sinks
effort into one program their personal discovery rate decays exponentially,
while the bounty for the program's next bug grows as a power of how many have
already been found. Crossing those two curves is what makes agents switch
programs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..core.errors import DomainError
from ..config import PayoffConfig


@dataclass(frozen=True)
class PayoffModel:
    base_discovery_prob: float  # per hunt-tick, before effort decay, in (0, 1]
    effort_decay: float         # >= 0; rate at which own effort erodes discovery
    base_bounty: float          # > 0; bounty for a program's first bug
    bounty_growth: float        # > 0; exponent: the k-th bug pays base * k**growth

    def __post_init__(self):
        if not 0.0 < self.base_discovery_prob <= 1.0:
            raise DomainError(
                f"base_discovery_prob must lie in (0, 1], got {self.base_discovery_prob!r}"
            )
        if self.effort_decay < 0.0:
            raise DomainError(f"effort_decay must be >= 0, got {self.effort_decay!r}")
        if self.base_bounty <= 0.0:
            raise DomainError(f"base_bounty must be > 0, got {self.base_bounty!r}")
        if self.bounty_growth <= 0.0:
            raise DomainError(f"bounty_growth must be > 0, got {self.bounty_growth!r}")

    @classmethod
    def from_config(cls, config: PayoffConfig) -> "PayoffModel":
        return cls(
            base_discovery_prob=config.base_discovery_prob,
            effort_decay=config.effort_decay,
            base_bounty=config.base_bounty,
            bounty_growth=config.bounty_growth,
        )

    def discovery_prob(self, effort: float) -> float:
        if effort < 0:
            raise DomainError(f"effort must be >= 0, got {effort!r}")
        return self.base_discovery_prob * math.exp(-self.effort_decay * effort)


def expected_marginal_payoff(
    payoff: PayoffModel,
    effort: float,
    next_k: int,
    payout_multiplier: float = 1.0,
) -> float:
    """Expected currency per hunt tick on a program.

    discovery probability (decayed by the hacker's cumulative effort on the
    program) times the bounty anticipated for the program's ``next_k``-th
    bug, scaled by the program's current payout-curve multiplier.
    """
    if effort < 0:
        raise DomainError(f"effort must be >= 0, got {effort!r}")
    if next_k < 1:
        raise DomainError(f"next_k must be >= 1, got {next_k!r}")
    return (
        payoff.discovery_prob(effort)
        * payoff.base_bounty
        * next_k ** payoff.bounty_growth
        * payout_multiplier
    )
