"""Run metrics derived purely from the event ledger.

``compute_metrics`` folds a log through the same state-application code the
live run used, counting as it goes, so every number here is recomputable
from the log alone (the run header event carries the full config). A cost
model override allows sensitivity sweeps without re-running simulations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from statistics import mean

from ..config import CostModelConfig
from ..core.errors import CorruptEvent
from ..core.events import EventKind, EventLog
from ..core.state import WorldState, apply_event
from ..core.types import DecisionKind, ValidationOutcomeKind
from ..gamification.engagement import current_engagement

WEEK_TICKS = 168


@dataclass
class MetricsSummary:
    variant: str = ""
    seed: int | None = None
    horizon: int = 0
    # Submission flow
    accepted_submissions: int = 0
    gate_rejected_submissions: int = 0
    valid_submissions: int = 0
    invalid_submissions: int = 0
    snr: float = 0.0
    duplicate_count: int = 0
    out_of_scope_count: int = 0
    # Vendor labor and platform pricing
    vendor_validations: int = 0
    vendor_correspondences: int = 0
    vendor_inhouse_verifications: int = 0
    vendor_overhead_minutes: float = 0.0
    platform_fees: float = 0.0
    # Reward flow
    reward_spend: float = 0.0
    bounty_spend: float = 0.0
    fee_spend: float = 0.0
    # Decisions
    actionable_count: int = 0
    dismissed_count: int = 0
    escalated_count: int = 0
    time_to_actionable: float | None = None
    # Population dynamics
    coverage: float = 0.0
    discovered_vulns: int = 0
    total_vulns: int = 0
    switch_count: int = 0
    switches_per_agent: float = 0.0
    leak_count: int = 0
    mean_engagement: float = 0.0
    engagement_trajectory: list[float] = field(default_factory=list)
    weekly: list[dict] = field(default_factory=list)

    SCALAR_FIELDS = (
        "accepted_submissions",
        "gate_rejected_submissions",
        "valid_submissions",
        "invalid_submissions",
        "snr",
        "duplicate_count",
        "out_of_scope_count",
        "vendor_validations",
        "vendor_correspondences",
        "vendor_inhouse_verifications",
        "vendor_overhead_minutes",
        "platform_fees",
        "reward_spend",
        "bounty_spend",
        "fee_spend",
        "actionable_count",
        "dismissed_count",
        "escalated_count",
        "time_to_actionable",
        "coverage",
        "discovered_vulns",
        "total_vulns",
        "switch_count",
        "switches_per_agent",
        "leak_count",
        "mean_engagement",
    )

    def scalars(self) -> dict:
        return {name: getattr(self, name) for name in self.SCALAR_FIELDS}

    def to_dict(self) -> dict:
        out = {"variant": self.variant, "seed": self.seed, "horizon": self.horizon}
        out.update(self.scalars())
        out["engagement_trajectory"] = list(self.engagement_trajectory)
        out["weekly"] = [dict(row) for row in self.weekly]
        return out


def _sample_points(horizon: int) -> list[int]:
    points = list(range(WEEK_TICKS, horizon + 1, WEEK_TICKS))
    if not points or points[-1] != horizon:
        points.append(horizon)
    return points


def compute_metrics(
    log: EventLog, cost_model: CostModelConfig | None = None
) -> MetricsSummary:
    """Fold a complete run ledger into a metrics summary.

    ``cost_model`` overrides the costs recorded in the run header, which is
    how the harness sweeps triage-labor assumptions over existing logs.
    """
    world = WorldState()
    summary = MetricsSummary()
    costs = cost_model
    sample_points: list[int] = []
    sample_idx = 0
    actionable_latencies: list[int] = []
    weekly_accepted: dict[int, int] = {}
    weekly_actionable: dict[int, int] = {}
    weekly_spend: dict[int, float] = {}

    def take_samples_up_to(tick: int) -> None:
        nonlocal sample_idx
        params = world.engagement_params
        while sample_idx < len(sample_points) and sample_points[sample_idx] <= tick:
            point = sample_points[sample_idx]
            if world.hackers:
                value = mean(
                    current_engagement(p, point, params) for p in world.hackers.values()
                )
            else:
                value = 0.0
            summary.engagement_trajectory.append(value)
            sample_idx += 1

    for event in log:
        take_samples_up_to(event.tick - 1 if event.tick > 0 else -1)
        apply_event(world, event)
        kind = event.kind
        payload = event.payload
        week = event.tick // WEEK_TICKS

        if kind == EventKind.RUN_STARTED:
            if world.config is None:
                raise CorruptEvent("run header carried no configuration")
            summary.seed = payload["seed"]
            summary.horizon = payload["horizon"]
            summary.variant = world.config.variant
            if costs is None:
                costs = world.config.costs
            sample_points = _sample_points(summary.horizon)
        elif kind == EventKind.REPORT_SUBMITTED:
            summary.accepted_submissions += 1
            weekly_accepted[week] = weekly_accepted.get(week, 0) + 1
            if payload.get("latent_vuln_id") is not None:
                summary.valid_submissions += 1
            else:
                summary.invalid_submissions += 1
        elif kind == EventKind.REPORT_GATE_REJECTED:
            summary.gate_rejected_submissions += 1
        elif kind == EventKind.REPORT_VALIDATED:
            if payload["performed_by"] == "vendor":
                summary.vendor_validations += 1
            outcome = payload["outcome"]
            if outcome == ValidationOutcomeKind.DUPLICATE.value:
                summary.duplicate_count += 1
            elif outcome == ValidationOutcomeKind.OUT_OF_SCOPE.value:
                summary.out_of_scope_count += 1
        elif kind == EventKind.VENDOR_CORRESPONDENCE:
            summary.vendor_correspondences += 1
        elif kind == EventKind.REPORT_DECIDED:
            decision = payload["decision"]
            if payload.get("in_house") and payload.get("by") == "vendor":
                summary.vendor_inhouse_verifications += 1
            if decision == DecisionKind.ACTIONABLE.value:
                summary.actionable_count += 1
                weekly_actionable[week] = weekly_actionable.get(week, 0) + 1
                report = world.reports[payload["report_id"]]
                actionable_latencies.append(event.tick - report.submitted_at)
            elif decision == DecisionKind.DISMISSED_WITH_REASONING.value:
                summary.dismissed_count += 1
            else:
                summary.escalated_count += 1
        elif kind == EventKind.VENDOR_OVERRIDE_RESOLVED:
            # Each override is one in-house verification's worth of vendor labor.
            summary.vendor_inhouse_verifications += 1
            if payload["accepted"]:
                summary.actionable_count += 1
                weekly_actionable[week] = weekly_actionable.get(week, 0) + 1
                report = world.reports[payload["report_id"]]
                actionable_latencies.append(event.tick - report.submitted_at)
        elif kind == EventKind.PLATFORM_FEE_CHARGED:
            summary.platform_fees += payload["amount"]
        elif kind == EventKind.REWARD_ISSUED:
            amount = payload["amount"]
            summary.reward_spend += amount
            weekly_spend[week] = weekly_spend.get(week, 0.0) + amount
            if payload["kind"] == "reporter_bounty":
                summary.bounty_spend += amount
            elif payload["kind"] == "verifier_fee":
                summary.fee_spend += amount
        elif kind == EventKind.LEAK_RECORDED:
            summary.leak_count += 1

    take_samples_up_to(summary.horizon)

    if costs is not None:
        summary.vendor_overhead_minutes = (
            costs.vendor_validation_minutes * summary.vendor_validations
            + costs.vendor_correspondence_minutes * summary.vendor_correspondences
            + costs.vendor_inhouse_verification_minutes * summary.vendor_inhouse_verifications
        )
    summary.snr = summary.valid_submissions / max(1, summary.invalid_submissions)
    if actionable_latencies:
        summary.time_to_actionable = mean(actionable_latencies)

    total = sum(len(p.latent_vulns) for p in world.programs.values())
    discovered = sum(
        1 for p in world.programs.values() for v in p.latent_vulns.values() if v.discovered
    )
    summary.total_vulns = total
    summary.discovered_vulns = discovered
    summary.coverage = discovered / total if total else 0.0

    summary.switch_count = sum(a.switch_count for a in world.agents.values())
    summary.switches_per_agent = (
        summary.switch_count / len(world.agents) if world.agents else 0.0
    )
    if summary.engagement_trajectory:
        summary.mean_engagement = mean(summary.engagement_trajectory)

    n_weeks = (summary.horizon + WEEK_TICKS - 1) // WEEK_TICKS if summary.horizon else 0
    for week in range(n_weeks):
        end_tick = min((week + 1) * WEEK_TICKS, summary.horizon)
        engagement = (
            summary.engagement_trajectory[week]
            if week < len(summary.engagement_trajectory)
            else 0.0
        )
        summary.weekly.append(
            {
                "week": week,
                "end_tick": end_tick,
                "accepted_submissions": weekly_accepted.get(week, 0),
                "actionable": weekly_actionable.get(week, 0),
                "reward_spend": weekly_spend.get(week, 0.0),
                "mean_engagement": engagement,
            }
        )
    return summary


def reports_submitted_after(log: EventLog, program_id: str, tick: int) -> int:
    """Accepted submissions for one program at or after ``tick`` (drain studies)."""
    return sum(
        1
        for e in log
        if e.kind == EventKind.REPORT_SUBMITTED
        and e.payload["program_id"] == program_id
        and e.tick >= tick
    )
