"""Point awards, milestone badges, and mastery certificates."""

from __future__ import annotations

from dataclasses import dataclass

from ..core.errors import UnknownEventKind
from ..core.types import HackerProfile, RewardSchedule


class PointsKind:
    """Event kinds that carry base point values in a reward schedule."""

    SUBMISSION_ACCEPTED = "submission_accepted"
    VERIFICATION_COMPLETED = "verification_completed"
    REPORT_ACTIONABLE = "report_actionable"
    DUPLICATE_CLOSED = "duplicate_closed"


@dataclass(frozen=True)
class Badge:
    badge_id: str
    criterion: str
    awarded_at: int


@dataclass(frozen=True)
class Certificate:
    certificate_id: str
    threshold: int


def award_points(
    kind: str,
    profile: HackerProfile,
    schedule: RewardSchedule,
    ticks_since_launch: int,
) -> int:
    """Point delta for an event of ``kind`` happening now.

    The first-submission multiplier applies only to a hacker's first-ever
    accepted submission; any active event window multiplies the result.
    Call before the triggering event is applied, so ``accepted_count``
    still reflects the prior state.
    """
    if kind not in schedule.base_points:
        raise UnknownEventKind(kind)
    value = float(schedule.base_points[kind])
    if kind == PointsKind.SUBMISSION_ACCEPTED and profile.accepted_count == 0:
        value *= schedule.first_submission_multiplier
    value *= schedule.window_multiplier(ticks_since_launch)
    return max(0, int(round(value)))


def verification_badge_id(milestone: int) -> str:
    return f"verifier-milestone-{milestone}"


def evaluate_badges(profile: HackerProfile, schedule: RewardSchedule, tick: int) -> list[Badge]:
    """Milestone badges newly earned by the profile's verification count.

    One badge per ``badge_every_n_verifications`` completed verifications.
    Idempotent: re-evaluating an unchanged profile yields nothing new.
    """
    every = schedule.badge_every_n_verifications
    earned: list[Badge] = []
    milestone = every
    while milestone <= profile.stats.verifications_completed:
        badge_id = verification_badge_id(milestone)
        if badge_id not in profile.badges:
            earned.append(
                Badge(
                    badge_id=badge_id,
                    criterion=f"complete {milestone} verifications",
                    awarded_at=tick,
                )
            )
        milestone += every
    return earned


def certificate_id_for(threshold: int) -> str:
    return f"mastery-{threshold}"


def issue_certificate(profile: HackerProfile, mastery_threshold: int) -> Certificate | None:
    """Certificate for ``mastery_threshold`` verified reports, once per tier."""
    cert_id = certificate_id_for(mastery_threshold)
    if cert_id in profile.certificates:
        return None
    if profile.stats.verified_count >= mastery_threshold:
        return Certificate(certificate_id=cert_id, threshold=mastery_threshold)
    return None
