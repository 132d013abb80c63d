"""Gamification layer: elements, points, badges, leaderboards, engagement."""

from .elements import (  # noqa: F401
    AFFINITY,
    ELEMENT_TABLE,
    ElementInfo,
    GamificationElement,
    affinity_for,
    trigger_elements,
)
from .engagement import (  # noqa: F401
    EngagementParams,
    apply_boost,
    apply_penalty,
    apply_triggers,
    current_engagement,
    engagement_update,
)
from .leaderboard import (  # noqa: F401
    Leaderboard,
    LeaderboardEntry,
    LeaderboardScope,
    build_leaderboard,
    leaderboard_rank,
)
from .rewards import (  # noqa: F401
    Badge,
    Certificate,
    PointsKind,
    award_points,
    evaluate_badges,
    issue_certificate,
)
