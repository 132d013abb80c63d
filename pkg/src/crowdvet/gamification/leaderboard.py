"""Leaderboards over hacker, per-program, and team point totals."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from ..core.types import HackerProfile


class LeaderboardScope(str, Enum):
    GLOBAL = "global"
    PROGRAM = "program"
    TEAM = "team"


@dataclass(frozen=True)
class LeaderboardEntry:
    subject_id: str
    points: int
    first_achieved_tick: int  # tick the subject first reached its current total


@dataclass
class Leaderboard:
    scope: LeaderboardScope
    entries: list[LeaderboardEntry] = field(default_factory=list)


def _sorted_entries(entries: list[LeaderboardEntry]) -> list[LeaderboardEntry]:
    # Higher points first; equal points ordered by who got there first.
    return sorted(entries, key=lambda e: (-e.points, e.first_achieved_tick, e.subject_id))


def build_leaderboard(
    profiles: dict[str, HackerProfile],
    scope: LeaderboardScope = LeaderboardScope.GLOBAL,
    program_id: str | None = None,
) -> Leaderboard:
    """Assemble a leaderboard from profile point totals.

    Subjects with zero points are absent. Team totals sum member points; a
    team's achievement tick is the latest member tick that contributed to
    the current total.
    """
    entries: list[LeaderboardEntry] = []
    if scope is LeaderboardScope.TEAM:
        teams: dict[str, list[HackerProfile]] = {}
        for profile in profiles.values():
            if profile.team_id is not None:
                teams.setdefault(profile.team_id, []).append(profile)
        for team_id, members in teams.items():
            total = sum(m.points for m in members)
            if total <= 0:
                continue
            achieved = max(m.points_tick for m in members if m.points > 0)
            entries.append(LeaderboardEntry(team_id, total, achieved))
    else:
        for profile in profiles.values():
            if scope is LeaderboardScope.PROGRAM:
                if program_id is None:
                    raise ValueError("program scope requires a program_id")
                points = profile.points_by_program.get(program_id, 0)
            else:
                points = profile.points
            if points <= 0:
                continue
            entries.append(LeaderboardEntry(profile.hacker_id, points, profile.points_tick))
    return Leaderboard(scope=scope, entries=_sorted_entries(entries))


def leaderboard_rank(board: Leaderboard, subject_id: str) -> int | None:
    """1-based rank of ``subject_id``, or None when absent from the board.

    Ranks follow the board's total order: points descending, ties broken by
    earlier first-achievement tick, then subject id.
    """
    for index, entry in enumerate(_sorted_entries(board.entries), start=1):
        if entry.subject_id == subject_id:
            return index
    return None
