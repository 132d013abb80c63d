"""Per-hacker engagement dynamics: exponential decay plus trigger-driven gains.

Engagement is stored lazily: each profile keeps its last updated value and
the tick it was updated at, and readers decay it on demand. That keeps the
ledger free of per-tick noise while staying fully replay-deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..core.types import HackerProfile, UserType
from .elements import GamificationElement, affinity_for

DEFAULT_DECAY = 0.01   # per-tick exponential decay constant
DEFAULT_GAIN = 0.05    # per-trigger gain before affinity weighting


@dataclass(frozen=True)
class EngagementParams:
    decay: float = DEFAULT_DECAY
    gain: float = DEFAULT_GAIN


def clamp_unit(x: float) -> float:
    return min(1.0, max(0.0, x))


def decayed(value: float, dt: int, decay: float) -> float:
    if dt <= 0:
        return value
    return value * math.exp(-decay * dt)


def engagement_update(
    engagement: float,
    user_type: UserType,
    triggers: list[GamificationElement],
    dt: int,
    params: EngagementParams = EngagementParams(),
) -> float:
    """Decay ``engagement`` over ``dt`` ticks, then add affinity-weighted gains.

    Adding a trigger can never lower the result, and the output is clamped
    to [0, 1].
    """
    value = decayed(engagement, dt, params.decay)
    for element in triggers:
        value += params.gain * affinity_for(user_type, element)
    return clamp_unit(value)


def current_engagement(profile: HackerProfile, tick: int, params: EngagementParams) -> float:
    """Engagement as of ``tick``, decaying from the profile's last anchor."""
    return decayed(profile.engagement, tick - profile.engagement_tick, params.decay)


def apply_triggers(
    profile: HackerProfile,
    triggers: list[GamificationElement],
    tick: int,
    params: EngagementParams,
) -> None:
    """Advance the profile's engagement anchor to ``tick`` applying ``triggers``."""
    profile.engagement = engagement_update(
        profile.engagement, profile.user_type, triggers,
        tick - profile.engagement_tick, params,
    )
    profile.engagement_tick = tick


def apply_boost(profile: HackerProfile, boost: float, tick: int, params: EngagementParams) -> None:
    """Flat engagement bump (onboarding) applied after decay, clamped to [0, 1]."""
    value = decayed(profile.engagement, tick - profile.engagement_tick, params.decay)
    profile.engagement = clamp_unit(value + boost)
    profile.engagement_tick = tick


def apply_penalty(profile: HackerProfile, penalty: float, tick: int, params: EngagementParams) -> None:
    """Flat engagement drop (round-number stall hazard), clamped to [0, 1]."""
    value = decayed(profile.engagement, tick - profile.engagement_tick, params.decay)
    profile.engagement = clamp_unit(value - penalty)
    profile.engagement_tick = tick
