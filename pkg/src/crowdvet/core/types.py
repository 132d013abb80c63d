"""Domain types shared by the protocol engine, gamification layer, and simulator.

Everything here is a plain dataclass or enum with a stable ``to_dict`` /
``from_dict`` round trip, so that world state can be snapshotted and compared
byte-for-byte between a live run and a replayed ledger.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

# Recent submission ticks kept per hacker; only ticks inside the rate window
# matter, so a small bound is safe for any sane window/max-reports pairing.
SUBMISSION_HISTORY_BOUND = 32


class ProcessVariant(str, Enum):
    """The three bug bounty process shapes under comparison."""

    DIRECT = "direct"            # hacker -> vendor, vendor validates and verifies in house
    PLATFORM = "platform"        # hacker -> platform -> vendor, platform triages for a fee
    CROWD_VETTED = "crowd_vetted"  # hacker -> vendor -> vetted hacker panel -> vendor

    @property
    def short(self) -> str:
        return {"direct": "a", "platform": "b", "crowd_vetted": "c"}[self.value]

    @classmethod
    def from_short(cls, token: str) -> "ProcessVariant":
        table = {"a": cls.DIRECT, "b": cls.PLATFORM, "c": cls.CROWD_VETTED}
        key = token.strip().lower()
        if key in table:
            return table[key]
        return cls(key)


class Severity(str, Enum):
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"
    CRITICAL = "critical"

    @property
    def rank(self) -> int:
        return _SEVERITY_ORDER.index(self)


_SEVERITY_ORDER = [Severity.LOW, Severity.MEDIUM, Severity.HIGH, Severity.CRITICAL]


class ReportFeature(str, Enum):
    """Checklist items a well-formed disclosure report can carry."""

    AFFECTED_ASSET = "affected_asset"
    VULN_CLASS = "vuln_class"
    REPRODUCTION_STEPS = "reproduction_steps"
    PROOF_OF_CONCEPT = "proof_of_concept"
    IMPACT_ASSESSMENT = "impact_assessment"
    ENVIRONMENT_DETAILS = "environment_details"
    SUGGESTED_REMEDIATION = "suggested_remediation"
    CONTACT_INFO = "contact_info"


class VulnClass(str, Enum):
    XSS = "xss"
    SQLI = "sqli"
    SSRF = "ssrf"
    RCE = "rce"
    IDOR = "idor"
    AUTH_BYPASS = "auth_bypass"
    MISCONFIG = "misconfig"
    INFO_LEAK = "info_leak"


class LifecycleState(str, Enum):
    SUBMITTED = "submitted"
    VENDOR_VALIDATED = "vendor_validated"
    DISTRIBUTED = "distributed"
    AWAITING_VERDICTS = "awaiting_verdicts"
    DECIDED = "decided"
    SETTLED = "settled"
    REJECTED_AT_GATE = "rejected_at_gate"
    CLOSED_DUPLICATE = "closed_duplicate"
    CLOSED_OUT_OF_SCOPE = "closed_out_of_scope"


class GateReason(str, Enum):
    RATE_LIMITED = "rate_limited"
    LOW_SIGNAL = "low_signal"


class ValidationOutcomeKind(str, Enum):
    FORWARD = "forward"
    DUPLICATE = "duplicate"
    OUT_OF_SCOPE = "out_of_scope"
    ESCALATE_CRITICAL_OUT_OF_SCOPE = "escalate_critical_out_of_scope"


class VerdictKind(str, Enum):
    REPRODUCED = "reproduced"
    NOT_REPRODUCED = "not_reproduced"
    CANNOT_TEST = "cannot_test"


class DecisionKind(str, Enum):
    ACTIONABLE = "actionable"
    DISMISSED_WITH_REASONING = "dismissed_with_reasoning"
    ESCALATED = "escalated"


class RewardKind(str, Enum):
    REPORTER_BOUNTY = "reporter_bounty"
    VERIFIER_FEE = "verifier_fee"
    POINTS_ONLY = "points_only"
    FEEDBACK = "feedback"


class UserType(str, Enum):
    PLAYER = "player"
    ACHIEVER = "achiever"
    SOCIALISER = "socialiser"
    PHILANTHROPIST = "philanthropist"


class Archetype(str, Enum):
    """Contributor classes differing in per-report effort.

    Project-specific contributors invest the most effort per report,
    non-project-specific the least; generalists sit in between.
    """

    PROJECT_SPECIFIC = "project_specific"
    NON_PROJECT_SPECIFIC = "non_project_specific"
    GENERALIST = "generalist"


class BehaviorKind(str, Enum):
    HONEST = "honest"
    COLLUDER = "colluder"
    LEAKER = "leaker"
    SNIPER = "sniper"


def normalize_token(raw: str) -> str:
    """Canonical form used for fingerprint comparison: lowercase, trimmed."""
    return raw.strip().lower()


@dataclass(frozen=True)
class Fingerprint:
    """Exact-match identity of a reported issue.

    Equality is component-wise on normalized tokens; no fuzzy matching.
    """

    asset_token: str
    vuln_class: VulnClass
    location_token: str

    def __post_init__(self):
        object.__setattr__(self, "asset_token", normalize_token(self.asset_token))
        object.__setattr__(self, "location_token", normalize_token(self.location_token))

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.asset_token, self.vuln_class.value, self.location_token)

    def to_dict(self) -> dict:
        return {
            "asset_token": self.asset_token,
            "vuln_class": self.vuln_class.value,
            "location_token": self.location_token,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Fingerprint":
        return cls(
            asset_token=data["asset_token"],
            vuln_class=VulnClass(data["vuln_class"]),
            location_token=data["location_token"],
        )


def asset_token_for_stage(stage: int, name: str) -> str:
    """Build an asset token that encodes which scope stage the asset belongs to.

    Scope membership must be decidable from report-visible data alone, so the
    stage index rides inside the token rather than in any hidden field.
    """
    return f"s{stage}:{name}"


def stage_of_asset_token(token: str) -> int:
    """Parse the scope stage out of an asset token; unknown formats map to 0."""
    head, _, _ = token.partition(":")
    if head.startswith("s") and head[1:].isdigit():
        return int(head[1:])
    return 0


@dataclass
class Verdict:
    kind: VerdictKind
    notes: str = ""

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "notes": self.notes}

    @classmethod
    def from_dict(cls, data: dict) -> "Verdict":
        return cls(kind=VerdictKind(data["kind"]), notes=data.get("notes", ""))


@dataclass
class Decision:
    kind: DecisionKind
    tally: tuple[int, int, int]  # (reproduced, not_reproduced, cannot_test)

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "tally": list(self.tally)}

    @classmethod
    def from_dict(cls, data: dict) -> "Decision":
        return cls(kind=DecisionKind(data["kind"]), tally=tuple(data["tally"]))


@dataclass
class Report:
    """A submitted vulnerability claim and its lifecycle bookkeeping.

    ``latent_vuln_id`` is simulation ground truth only: it is carried for
    audit and metrics but never consulted by engine decision logic.
    """

    report_id: str
    program_id: str
    reporter_id: str
    submitted_at: int
    features: set[ReportFeature]
    fingerprint: Fingerprint
    claimed_severity: Severity
    latent_vuln_id: str | None = None
    state: LifecycleState = LifecycleState.SUBMITTED
    gate_reason: GateReason | None = None
    duplicate_of: str | None = None
    decision: Decision | None = None
    decided_at: int | None = None
    assignment_ids: list[str] = field(default_factory=list)
    override_accepted: bool | None = None

    def to_dict(self) -> dict:
        return {
            "report_id": self.report_id,
            "program_id": self.program_id,
            "reporter_id": self.reporter_id,
            "submitted_at": self.submitted_at,
            "features": sorted(f.value for f in self.features),
            "fingerprint": self.fingerprint.to_dict(),
            "claimed_severity": self.claimed_severity.value,
            "latent_vuln_id": self.latent_vuln_id,
            "state": self.state.value,
            "gate_reason": self.gate_reason.value if self.gate_reason else None,
            "duplicate_of": self.duplicate_of,
            "decision": self.decision.to_dict() if self.decision else None,
            "decided_at": self.decided_at,
            "assignment_ids": list(self.assignment_ids),
            "override_accepted": self.override_accepted,
        }


@dataclass
class VerificationAssignment:
    assignment_id: str
    report_id: str
    verifier_id: str
    assigned_at: int
    deadline: int
    verdict: Verdict | None = None
    is_replacement: bool = False
    abandoned: bool = False

    @property
    def open(self) -> bool:
        return self.verdict is None and not self.abandoned

    def to_dict(self) -> dict:
        return {
            "assignment_id": self.assignment_id,
            "report_id": self.report_id,
            "verifier_id": self.verifier_id,
            "assigned_at": self.assigned_at,
            "deadline": self.deadline,
            "verdict": self.verdict.to_dict() if self.verdict else None,
            "is_replacement": self.is_replacement,
            "abandoned": self.abandoned,
        }


@dataclass
class SubmissionStats:
    """Per-hacker submission record feeding the signal and rate gates."""

    verified_count: int = 0
    unverified_count: int = 0
    verifications_completed: int = 0
    last_submission_ticks: list[int] = field(default_factory=list)

    def record_submission(self, tick: int) -> None:
        self.last_submission_ticks.append(tick)
        if len(self.last_submission_ticks) > SUBMISSION_HISTORY_BOUND:
            del self.last_submission_ticks[: -SUBMISSION_HISTORY_BOUND]

    def to_dict(self) -> dict:
        return {
            "verified_count": self.verified_count,
            "unverified_count": self.unverified_count,
            "verifications_completed": self.verifications_completed,
            "last_submission_ticks": list(self.last_submission_ticks),
        }


@dataclass
class HackerProfile:
    hacker_id: str
    user_type: UserType
    archetype: Archetype
    skill: float
    vetted: bool
    stats: SubmissionStats = field(default_factory=SubmissionStats)
    points: int = 0
    badges: set[str] = field(default_factory=set)
    certificates: set[str] = field(default_factory=set)
    team_id: str | None = None
    engagement: float = 0.5
    # Bookkeeping beyond the minimum contract: lazy engagement decay anchor,
    # leaderboard tie-break tick, first-submission multiplier flag, and the
    # one-shot round-number disengagement marker.
    engagement_tick: int = 0
    points_tick: int = 0
    accepted_count: int = 0
    points_by_program: dict[str, int] = field(default_factory=dict)
    hazard_applied: bool = False

    def to_dict(self) -> dict:
        return {
            "hacker_id": self.hacker_id,
            "user_type": self.user_type.value,
            "archetype": self.archetype.value,
            "skill": self.skill,
            "vetted": self.vetted,
            "stats": self.stats.to_dict(),
            "points": self.points,
            "badges": sorted(self.badges),
            "certificates": sorted(self.certificates),
            "team_id": self.team_id,
            "engagement": self.engagement,
            "engagement_tick": self.engagement_tick,
            "points_tick": self.points_tick,
            "accepted_count": self.accepted_count,
            "points_by_program": dict(sorted(self.points_by_program.items())),
            "hazard_applied": self.hazard_applied,
        }


@dataclass
class LatentVuln:
    """Simulation ground truth: a plantable vulnerability in a program."""

    vuln_id: str
    program_id: str
    severity: Severity
    difficulty: float
    vuln_class: VulnClass
    in_scope_stage: int
    discovered: bool = False
    leaked: bool = False

    def to_dict(self) -> dict:
        return {
            "vuln_id": self.vuln_id,
            "program_id": self.program_id,
            "severity": self.severity.value,
            "difficulty": self.difficulty,
            "vuln_class": self.vuln_class.value,
            "in_scope_stage": self.in_scope_stage,
            "discovered": self.discovered,
            "leaked": self.leaked,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LatentVuln":
        return cls(
            vuln_id=data["vuln_id"],
            program_id=data["program_id"],
            severity=Severity(data["severity"]),
            difficulty=data["difficulty"],
            vuln_class=VulnClass(data["vuln_class"]),
            in_scope_stage=data["in_scope_stage"],
            discovered=data.get("discovered", False),
            leaked=data.get("leaked", False),
        )


@dataclass
class RewardSchedule:
    """Monetary and point reward rules for one program.

    ``payout_curve`` and ``event_windows`` use ticks relative to the program
    launch tick. The curve is a step function; windows multiply point awards
    while active.
    """

    first_submission_multiplier: float = 2.0
    badge_every_n_verifications: int = 10
    base_points: dict[str, int] = field(default_factory=dict)
    payout_curve: list[tuple[int, float]] = field(default_factory=lambda: [(0, 1.0)])
    event_windows: list[tuple[int, int, float]] = field(default_factory=list)
    severity_bounties: dict[Severity, float] = field(default_factory=dict)
    verifier_fee: float = 25.0

    def payout_multiplier(self, ticks_since_launch: int) -> float:
        mult = 1.0
        for start, value in self.payout_curve:
            if ticks_since_launch >= start:
                mult = value
            else:
                break
        return mult

    def window_multiplier(self, ticks_since_launch: int) -> float:
        mult = 1.0
        for start, end, value in self.event_windows:
            if start <= ticks_since_launch < end:
                mult *= value
        return mult

    def bounty_for(self, severity: Severity, ticks_since_launch: int) -> float:
        return self.severity_bounties[severity] * self.payout_multiplier(ticks_since_launch)

    def to_dict(self) -> dict:
        return {
            "first_submission_multiplier": self.first_submission_multiplier,
            "badge_every_n_verifications": self.badge_every_n_verifications,
            "base_points": dict(sorted(self.base_points.items())),
            "payout_curve": [list(p) for p in self.payout_curve],
            "event_windows": [list(w) for w in self.event_windows],
            "severity_bounties": {s.value: v for s, v in sorted(self.severity_bounties.items())},
            "verifier_fee": self.verifier_fee,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RewardSchedule":
        return cls(
            first_submission_multiplier=data["first_submission_multiplier"],
            badge_every_n_verifications=data["badge_every_n_verifications"],
            base_points=dict(data["base_points"]),
            payout_curve=[tuple(p) for p in data["payout_curve"]],
            event_windows=[tuple(w) for w in data["event_windows"]],
            severity_bounties={Severity(k): v for k, v in data["severity_bounties"].items()},
            verifier_fee=data["verifier_fee"],
        )


@dataclass
class Program:
    """A bounty program: scope stages, budget, reward rules, latent vuln pool."""

    program_id: str
    variant: ProcessVariant
    scope_stages: list[tuple[int, float]]  # (activation tick since launch, scope fraction)
    budget: float
    reward_schedule: RewardSchedule
    quorum_size: int
    quorum_threshold: int
    launch_tick: int = 0
    latent_vulns: dict[str, LatentVuln] = field(default_factory=dict)
    # Runtime state, event-driven.
    launched: bool = False
    paused: bool = False
    active_stage: int = -1
    budget_remaining: float = 0.0
    settled_actionable_count: int = 0
    # Bounty ladder position: confirmed bugs within the current scope stage.
    # A new stage restarts the ladder (fresh asset class, fresh payout ramp).
    stage_actionable_count: int = 0

    @property
    def active(self) -> bool:
        return self.launched and not self.paused

    def ticks_since_launch(self, tick: int) -> int:
        return tick - self.launch_tick

    def to_dict(self) -> dict:
        return {
            "program_id": self.program_id,
            "variant": self.variant.value,
            "scope_stages": [list(s) for s in self.scope_stages],
            "budget": self.budget,
            "reward_schedule": self.reward_schedule.to_dict(),
            "quorum_size": self.quorum_size,
            "quorum_threshold": self.quorum_threshold,
            "launch_tick": self.launch_tick,
            "latent_vulns": {k: v.to_dict() for k, v in sorted(self.latent_vulns.items())},
            "launched": self.launched,
            "paused": self.paused,
            "active_stage": self.active_stage,
            "budget_remaining": self.budget_remaining,
            "settled_actionable_count": self.settled_actionable_count,
            "stage_actionable_count": self.stage_actionable_count,
        }


@dataclass
class AgentState:
    """Simulation-side runtime for one hacker agent."""

    hacker_id: str
    behavior: BehaviorKind = BehaviorKind.HONEST
    activation: float = 0.0
    leak_prob: float = 0.0
    partner_id: str | None = None
    effort: dict[str, int] = field(default_factory=dict)  # program_id -> hunt count
    # Fatigue is the effective effort driving discovery odds: each hunt adds
    # one unit, time away from the program recovers it linearly, and a fresh
    # scope stage clears it outright. Stored lazily as (value, anchor tick).
    fatigue: dict[str, float] = field(default_factory=dict)
    fatigue_tick: dict[str, int] = field(default_factory=dict)
    last_program: str | None = None
    switch_count: int = 0
    onboarded: bool = False

    def total_effort(self) -> int:
        return sum(self.effort.values())

    def current_fatigue(self, program_id: str, tick: int, recovery: float) -> float:
        value = self.fatigue.get(program_id, 0.0)
        if value <= 0.0:
            return 0.0
        dt = tick - self.fatigue_tick.get(program_id, tick)
        if dt <= 0 or recovery <= 0.0:
            return value
        return max(0.0, value - recovery * dt)

    def add_fatigue(self, program_id: str, tick: int, recovery: float) -> None:
        self.fatigue[program_id] = self.current_fatigue(program_id, tick, recovery) + 1.0
        self.fatigue_tick[program_id] = tick

    def to_dict(self) -> dict:
        return {
            "hacker_id": self.hacker_id,
            "behavior": self.behavior.value,
            "activation": self.activation,
            "leak_prob": self.leak_prob,
            "partner_id": self.partner_id,
            "effort": dict(sorted(self.effort.items())),
            "fatigue": dict(sorted(self.fatigue.items())),
            "fatigue_tick": dict(sorted(self.fatigue_tick.items())),
            "last_program": self.last_program,
            "switch_count": self.switch_count,
            "onboarded": self.onboarded,
        }
