"""Gamification elements, their user-type mapping, and event-to-element triggers.

The element/user-type/goal table ships as ``element_table.json`` next to this
module and is loaded once at import. Affinity encodes how strongly each user
type responds to each element: 1.0 for the elements mapped to that type,
0.5 for points and badges (which double as general progress-and-feedback
mechanics for everyone), 0.1 otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from importlib import resources

from ..core.events import EventKind
from ..core.types import UserType

GENERAL_AFFINITY = 0.5
BASE_AFFINITY = 0.1


class GamificationElement(str, Enum):
    BADGES_ACHIEVEMENTS = "badges_achievements"
    LEADERBOARDS = "leaderboards"
    POINTS_EXPERIENCE = "points_experience"
    CERTIFICATES = "certificates"
    CHALLENGES = "challenges"
    SOCIAL_STATUS = "social_status"
    COMPETITION = "competition"
    GUILDS_TEAMS = "guilds_teams"
    MEANING_PURPOSE = "meaning_purpose"


# Elements that act as general progress/feedback mechanics for all user types.
_GENERAL_ELEMENTS = {
    GamificationElement.POINTS_EXPERIENCE,
    GamificationElement.BADGES_ACHIEVEMENTS,
}


@dataclass(frozen=True)
class ElementInfo:
    element: GamificationElement
    user_type: UserType
    motivation: str
    issues_addressed: frozenset[str]


def _load_table() -> dict[GamificationElement, ElementInfo]:
    raw = resources.files(__package__).joinpath("element_table.json").read_text("utf-8")
    data = json.loads(raw)
    table: dict[GamificationElement, ElementInfo] = {}
    for row in data["rows"]:
        element = GamificationElement(row["element"])
        table[element] = ElementInfo(
            element=element,
            user_type=UserType(row["user_type"]),
            motivation=row["motivation"],
            issues_addressed=frozenset(row["issues_addressed"]),
        )
    missing = set(GamificationElement) - set(table)
    if missing:
        raise ValueError(f"element table is missing rows for: {sorted(m.value for m in missing)}")
    return table


ELEMENT_TABLE: dict[GamificationElement, ElementInfo] = _load_table()


def _build_affinity() -> dict[UserType, dict[GamificationElement, float]]:
    matrix: dict[UserType, dict[GamificationElement, float]] = {}
    for user_type in UserType:
        row: dict[GamificationElement, float] = {}
        for element, info in ELEMENT_TABLE.items():
            if info.user_type == user_type:
                row[element] = 1.0
            elif element in _GENERAL_ELEMENTS:
                row[element] = GENERAL_AFFINITY
            else:
                row[element] = BASE_AFFINITY
        matrix[user_type] = row
    return matrix


AFFINITY: dict[UserType, dict[GamificationElement, float]] = _build_affinity()


# Deterministic event-kind -> element mapping. Points flow feeds both the
# experience and leaderboard mechanics; certificates are included so the
# mastery element has a trigger path.
_TRIGGER_MAP: dict[str, tuple[GamificationElement, ...]] = {
    EventKind.POINTS_AWARDED: (
        GamificationElement.POINTS_EXPERIENCE,
        GamificationElement.LEADERBOARDS,
    ),
    EventKind.REWARD_ISSUED: (
        GamificationElement.POINTS_EXPERIENCE,
        GamificationElement.LEADERBOARDS,
    ),
    EventKind.BADGE_AWARDED: (GamificationElement.BADGES_ACHIEVEMENTS,),
    EventKind.CERTIFICATE_ISSUED: (GamificationElement.CERTIFICATES,),
    EventKind.SCOPE_STAGE_ACTIVATED: (GamificationElement.CHALLENGES,),
    EventKind.TEAM_JOINED: (
        GamificationElement.GUILDS_TEAMS,
        GamificationElement.SOCIAL_STATUS,
    ),
    EventKind.PURPOSE_BROADCAST: (GamificationElement.MEANING_PURPOSE,),
    EventKind.SUBMISSION_RACE: (GamificationElement.COMPETITION,),
}


def trigger_elements(event_kind: str) -> list[GamificationElement]:
    """Which gamification elements an event kind activates (possibly none)."""
    return list(_TRIGGER_MAP.get(event_kind, ()))


def affinity_for(user_type: UserType, element: GamificationElement) -> float:
    return AFFINITY[user_type][element]
