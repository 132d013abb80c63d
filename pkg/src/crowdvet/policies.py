"""Submission-quality policy gates: signal requirement, rate limiter, report scoring.

All functions here are pure and deterministic; the engine calls them at
submission time and the simulator reuses the quality/reproduction models
when agents draft and verify reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core.errors import DomainError
from .core.types import ReportFeature, SubmissionStats


@dataclass(frozen=True)
class SignalPolicy:
    """Admit only hackers whose verified/unverified ratio clears a threshold.

    Hackers with fewer than ``grace_submissions`` settled submissions bypass
    the check entirely, so newcomers are not locked out before their first
    reports resolve.
    """

    threshold: float = 0.2
    grace_submissions: int = 3


@dataclass(frozen=True)
class RatePolicy:
    """Cap reports per hacker inside a sliding window ending at the current tick."""

    window: int = 168
    max_reports: int = 5


def _uniform_weights() -> dict[ReportFeature, float]:
    n = len(ReportFeature)
    return {f: 1.0 / n for f in ReportFeature}


@dataclass(frozen=True)
class QualityWeights:
    """Per-feature weights for report quality; must be non-negative and sum to 1."""

    weights: dict[ReportFeature, float] = field(default_factory=_uniform_weights)

    def __post_init__(self):
        if any(w < 0 for w in self.weights.values()):
            raise DomainError("quality weights must be non-negative")
        total = sum(self.weights.get(f, 0.0) for f in ReportFeature)
        if abs(total - 1.0) > 1e-9:
            raise DomainError(f"quality weights must sum to 1, got {total!r}")


def signal_score(stats: SubmissionStats) -> float:
    """Verified-to-unverified submission ratio with a guarded denominator."""
    return stats.verified_count / max(1, stats.unverified_count)


def signal_gate(stats: SubmissionStats, policy: SignalPolicy) -> bool:
    """Pass while inside the newcomer grace, then require score >= threshold."""
    total = stats.verified_count + stats.unverified_count
    if total < policy.grace_submissions:
        return True
    return signal_score(stats) >= policy.threshold


def rate_limit_check(history: list[int], now: int, policy: RatePolicy) -> bool:
    """Pass iff the count of submissions in (now - window, now] is below the cap.

    ``history`` must be sorted ascending.
    """
    lo = now - policy.window
    in_window = sum(1 for t in history if lo < t <= now)
    return in_window < policy.max_reports


def quality_score(features: set[ReportFeature], weights: QualityWeights) -> float:
    """Sum of the weights of the features present; 1.0 means a complete report."""
    return sum(weights.weights.get(f, 0.0) for f in features)


def reproduction_probability(quality: float, verifier_skill: float, difficulty: float) -> float:
    """Chance a verifier reproduces a genuine issue from its report.

    Monotone non-decreasing in quality and skill, non-increasing in
    difficulty. This functional form is a modelling choice, not an
    empirical law; the harness sweeps its inputs for sensitivity.
    """
    for name, value in (("quality", quality), ("verifier_skill", verifier_skill),
                        ("difficulty", difficulty)):
        if not 0.0 <= value <= 1.0:
            raise DomainError(f"{name} must lie in [0, 1], got {value!r}")
    p = quality * (0.5 + 0.5 * verifier_skill) * (1.0 - 0.5 * difficulty)
    return min(1.0, max(0.0, p))
