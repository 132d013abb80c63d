"""Run configuration: schema, defaults, strict validation, and file loading.

The file format is YAML (JSON is valid YAML and also accepted). Unknown keys
are hard errors everywhere, so typos never silently fall back to defaults.
All tick-valued fields are simulated hours; program-relative ticks (payout
curves, event windows, scope stage activations) count from the program's
launch tick.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .core.errors import ConfigError
from .core.types import (
    Archetype,
    BehaviorKind,
    ProcessVariant,
    ReportFeature,
    RewardSchedule,
    Severity,
    UserType,
)
from .gamification.rewards import PointsKind
from .policies import QualityWeights, RatePolicy, SignalPolicy


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


def _default_base_points() -> dict[str, int]:
    return {
        PointsKind.SUBMISSION_ACCEPTED: 100,
        PointsKind.VERIFICATION_COMPLETED: 40,
        PointsKind.REPORT_ACTIONABLE: 150,
        PointsKind.DUPLICATE_CLOSED: 25,
    }


def _default_severity_bounties() -> dict[str, float]:
    return {"low": 50.0, "medium": 150.0, "high": 400.0, "critical": 1000.0}


class QuorumConfig(StrictModel):
    k: int = Field(default=3, ge=1, description="verifiers assigned per report")
    q: int = Field(default=2, ge=1, description="concurring verdicts required")

    @model_validator(mode="after")
    def _check_threshold(self) -> "QuorumConfig":
        if self.q > self.k:
            raise ValueError(f"quorum threshold q={self.q} exceeds panel size k={self.k}")
        return self


class RewardScheduleConfig(StrictModel):
    first_submission_multiplier: float = Field(default=2.0, ge=1.0)
    badge_every_n_verifications: int = Field(default=10, ge=1)
    base_points: dict[str, int] = Field(default_factory=_default_base_points)
    payout_curve: list[tuple[int, float]] = Field(default_factory=lambda: [(0, 1.0)])
    event_windows: list[tuple[int, int, float]] = Field(default_factory=list)
    severity_bounties: dict[str, float] = Field(default_factory=_default_severity_bounties)
    verifier_fee: float = Field(default=25.0, ge=0.0)

    @field_validator("base_points")
    @classmethod
    def _points_non_negative(cls, v: dict[str, int]) -> dict[str, int]:
        for kind, value in v.items():
            if value < 0:
                raise ValueError(f"base points for {kind!r} must be non-negative")
        return v

    @field_validator("payout_curve")
    @classmethod
    def _curve_well_formed(cls, v: list[tuple[int, float]]) -> list[tuple[int, float]]:
        if not v or v[0][0] != 0:
            raise ValueError("payout_curve must start at tick 0")
        ticks = [t for t, _ in v]
        if ticks != sorted(set(ticks)):
            raise ValueError("payout_curve ticks must be strictly increasing")
        if any(m <= 0 for _, m in v):
            raise ValueError("payout_curve multipliers must be positive")
        return v

    @field_validator("event_windows")
    @classmethod
    def _windows_well_formed(
        cls, v: list[tuple[int, int, float]]
    ) -> list[tuple[int, int, float]]:
        for start, end, mult in v:
            if end <= start:
                raise ValueError(f"event window ({start}, {end}) must have end > start")
            if mult <= 0:
                raise ValueError("event window multipliers must be positive")
        return v

    @field_validator("severity_bounties")
    @classmethod
    def _bounties_cover_severities(cls, v: dict[str, float]) -> dict[str, float]:
        want = {s.value for s in Severity}
        got = set(v)
        if got != want:
            raise ValueError(f"severity_bounties keys must be exactly {sorted(want)}")
        if any(amount < 0 for amount in v.values()):
            raise ValueError("severity bounties must be non-negative")
        return v

    def build(self) -> RewardSchedule:
        return RewardSchedule(
            first_submission_multiplier=self.first_submission_multiplier,
            badge_every_n_verifications=self.badge_every_n_verifications,
            base_points=dict(self.base_points),
            payout_curve=[tuple(p) for p in self.payout_curve],
            event_windows=[tuple(w) for w in self.event_windows],
            severity_bounties={Severity(k): v for k, v in self.severity_bounties.items()},
            verifier_fee=self.verifier_fee,
        )


class ProgramConfig(StrictModel):
    program_id: str
    launch_tick: int = Field(default=0, ge=0)
    budget: float = Field(default=500_000.0, ge=0.0)
    vuln_count: int = Field(default=120, ge=0)
    scope_stages: list[tuple[int, float]] = Field(
        default_factory=lambda: [(0, 0.5), (1080, 0.7), (2160, 0.85), (3240, 1.0)]
    )
    severity_mix: dict[str, float] = Field(
        default_factory=lambda: {"low": 0.4, "medium": 0.3, "high": 0.2, "critical": 0.1}
    )
    difficulty_range: tuple[float, float] = (0.2, 0.7)
    reward_schedule: RewardScheduleConfig = Field(default_factory=RewardScheduleConfig)
    quorum: QuorumConfig = Field(default_factory=QuorumConfig)

    @field_validator("scope_stages")
    @classmethod
    def _stages_well_formed(cls, v: list[tuple[int, float]]) -> list[tuple[int, float]]:
        if not v or v[0][0] != 0:
            raise ValueError("scope_stages must start with an activation at tick 0")
        ticks = [t for t, _ in v]
        if ticks != sorted(set(ticks)):
            raise ValueError("scope stage activation ticks must be strictly increasing")
        fractions = [f for _, f in v]
        if any(not 0.0 < f <= 1.0 for f in fractions):
            raise ValueError("scope fractions must lie in (0, 1]")
        if fractions != sorted(fractions):
            raise ValueError("scope fractions must be non-decreasing across stages")
        return v

    @field_validator("severity_mix")
    @classmethod
    def _severity_mix_valid(cls, v: dict[str, float]) -> dict[str, float]:
        _check_mix(v, {s.value for s in Severity}, "severity_mix")
        return v

    @field_validator("difficulty_range")
    @classmethod
    def _difficulty_valid(cls, v: tuple[float, float]) -> tuple[float, float]:
        lo, hi = v
        if not (0.0 <= lo <= hi <= 1.0):
            raise ValueError("difficulty_range must satisfy 0 <= low <= high <= 1")
        return v


class PopulationConfig(StrictModel):
    agent_count: int = Field(default=50, ge=0)
    user_type_mix: dict[str, float] = Field(
        default_factory=lambda: {
            "player": 0.25, "achiever": 0.25, "socialiser": 0.25, "philanthropist": 0.25
        }
    )
    archetype_mix: dict[str, float] = Field(
        default_factory=lambda: {
            "project_specific": 0.6, "non_project_specific": 0.3, "generalist": 0.1
        }
    )
    vetted_fraction: float = Field(default=0.6, ge=0.0, le=1.0)
    skill_range: tuple[float, float] = (0.05, 0.95)
    initial_engagement: float = Field(default=0.7, ge=0.0, le=1.0)
    team_count: int = Field(default=0, ge=0)
    adversary_mix: dict[str, float] = Field(
        default_factory=lambda: {"honest": 1.0, "colluder": 0.0, "leaker": 0.0, "sniper": 0.0}
    )
    adversary_activation: float = Field(default=0.5, ge=0.0, le=1.0)
    leak_prob: float = Field(default=0.1, ge=0.0, le=1.0)

    @field_validator("user_type_mix")
    @classmethod
    def _user_mix_valid(cls, v: dict[str, float]) -> dict[str, float]:
        _check_mix(v, {u.value for u in UserType}, "user_type_mix")
        return v

    @field_validator("archetype_mix")
    @classmethod
    def _archetype_mix_valid(cls, v: dict[str, float]) -> dict[str, float]:
        _check_mix(v, {a.value for a in Archetype}, "archetype_mix")
        return v

    @field_validator("adversary_mix")
    @classmethod
    def _adversary_mix_valid(cls, v: dict[str, float]) -> dict[str, float]:
        _check_mix(v, {b.value for b in BehaviorKind}, "adversary_mix")
        return v

    @field_validator("skill_range")
    @classmethod
    def _skill_valid(cls, v: tuple[float, float]) -> tuple[float, float]:
        lo, hi = v
        if not (0.0 <= lo <= hi <= 1.0):
            raise ValueError("skill_range must satisfy 0 <= low <= high <= 1")
        return v


class PayoffConfig(StrictModel):
    """Hunting economics: discovery decays with own effort, payouts grow with finds."""

    base_discovery_prob: float = Field(default=0.02, gt=0.0, le=1.0)
    effort_decay: float = Field(default=0.1, ge=0.0)
    base_bounty: float = Field(default=100.0, gt=0.0)
    bounty_growth: float = Field(default=1.2, gt=0.0)


class PolicyConfig(StrictModel):
    signal_threshold: float = Field(default=0.2, ge=0.0)
    signal_grace: int = Field(default=3, ge=0)
    rate_window: int = Field(default=168, ge=1)
    rate_max_reports: int = Field(default=5, ge=1)
    quality_weights: dict[str, float] | None = None

    @field_validator("quality_weights")
    @classmethod
    def _weights_valid(cls, v: dict[str, float] | None) -> dict[str, float] | None:
        if v is None:
            return v
        want = {f.value for f in ReportFeature}
        if set(v) != want:
            raise ValueError(f"quality_weights keys must be exactly {sorted(want)}")
        if any(w < 0 for w in v.values()):
            raise ValueError("quality weights must be non-negative")
        if abs(sum(v.values()) - 1.0) > 1e-9:
            raise ValueError("quality weights must sum to 1")
        return v

    def signal_policy(self) -> SignalPolicy:
        return SignalPolicy(threshold=self.signal_threshold, grace_submissions=self.signal_grace)

    def rate_policy(self) -> RatePolicy:
        return RatePolicy(window=self.rate_window, max_reports=self.rate_max_reports)

    def weights(self) -> QualityWeights:
        if self.quality_weights is None:
            return QualityWeights()
        return QualityWeights({ReportFeature(k): w for k, w in self.quality_weights.items()})


class BehaviorConfig(StrictModel):
    """Agent decision model knobs."""

    softmax_temperature: float = Field(default=1.0, gt=0.0)
    idle_utility_floor: float = Field(default=0.0, ge=0.0)
    # Multiplicative stay-bias on the program hunted last; suppresses
    # coin-flip program hopping when two options pay almost the same.
    switch_inertia: float = Field(default=0.5, ge=0.0)
    # Weight on the anticipated bounty-ladder growth of a program inside
    # hunt utilities (scaled by the payoff model's super-linear exponent).
    appreciation_weight: float = Field(default=1.0, ge=0.0)
    # How fast diversification pressure erodes the stay-bias as the payoff
    # exponent grows past linear.
    diversification_weight: float = Field(default=3.0, ge=0.0)
    # Hunting fatigue recovers linearly while a hacker stays away from a
    # program (units per tick; 0 freezes fatigue at its cumulative value).
    effort_recovery: float = Field(default=0.05, ge=0.0)
    noise_report_prob: float = Field(default=0.1, ge=0.0, le=1.0)
    noise_out_of_scope_prob: float = Field(default=0.15, ge=0.0, le=1.0)
    out_of_scope_discovery_prob: float = Field(default=0.05, ge=0.0, le=1.0)
    cannot_test_prob: float = Field(default=0.3, ge=0.0, le=1.0)


class GamificationConfig(StrictModel):
    # Decay is per tick (one simulated hour); 0.0005 gives an engagement
    # half-life of roughly two simulated months when no rewards flow.
    engagement_decay: float = Field(default=0.0005, gt=0.0)
    trigger_gain: float = Field(default=0.05, gt=0.0)
    onboarding_boost: float = Field(default=0.15, ge=0.0, le=1.0)
    purpose_broadcast_interval: int = Field(default=168, ge=0)  # 0 disables
    round_number_hazard: bool = False
    hazard_penalty: float = Field(default=0.2, ge=0.0, le=1.0)
    hazard_multiple: int = Field(default=100, ge=1)
    certificate_tiers: list[int] = Field(default_factory=lambda: [10, 25, 50])

    @field_validator("certificate_tiers")
    @classmethod
    def _tiers_valid(cls, v: list[int]) -> list[int]:
        if any(t < 1 for t in v):
            raise ValueError("certificate tiers must be positive")
        if v != sorted(set(v)):
            raise ValueError("certificate tiers must be strictly increasing")
        return v


class VerificationConfig(StrictModel):
    deadline_ticks: int = Field(default=72, ge=1)
    vendor_validation: bool = True  # crowd-vetted variant only; direct/platform always validate
    retain_dismissed_fingerprints: bool = False


class CostModelConfig(StrictModel):
    """Simulated triage labor (staff minutes) and platform pricing."""

    vendor_validation_minutes: float = Field(default=10.0, ge=0.0)
    vendor_correspondence_minutes: float = Field(default=20.0, ge=0.0)
    vendor_inhouse_verification_minutes: float = Field(default=120.0, ge=0.0)
    platform_fee_per_report: float = Field(default=50.0, ge=0.0)
    correspondence_quality_threshold: float = Field(default=0.75, ge=0.0, le=1.0)
    vendor_review_delay: int = Field(default=48, ge=0)
    platform_review_delay: int = Field(default=24, ge=0)
    vendor_skill: float = Field(default=0.7, ge=0.0, le=1.0)
    platform_skill: float = Field(default=0.8, ge=0.0, le=1.0)


def _default_programs() -> list[ProgramConfig]:
    return [
        ProgramConfig(program_id="prog-alpha"),
        ProgramConfig(program_id="prog-beta"),
    ]


class SimulationConfig(StrictModel):
    variant: str = "crowd_vetted"
    horizon: int = Field(default=4380, gt=0)
    seed: int | None = None
    programs: list[ProgramConfig] = Field(default_factory=_default_programs)
    population: PopulationConfig = Field(default_factory=PopulationConfig)
    payoff: PayoffConfig = Field(default_factory=PayoffConfig)
    policies: PolicyConfig = Field(default_factory=PolicyConfig)
    behavior: BehaviorConfig = Field(default_factory=BehaviorConfig)
    gamification: GamificationConfig = Field(default_factory=GamificationConfig)
    verification: VerificationConfig = Field(default_factory=VerificationConfig)
    costs: CostModelConfig = Field(default_factory=CostModelConfig)
    out_dir: str | None = None

    @field_validator("variant")
    @classmethod
    def _variant_valid(cls, v: str) -> str:
        return ProcessVariant.from_short(v).value

    @model_validator(mode="after")
    def _programs_valid(self) -> "SimulationConfig":
        if not self.programs:
            raise ValueError("at least one program is required")
        ids = [p.program_id for p in self.programs]
        if len(ids) != len(set(ids)):
            raise ValueError("program ids must be unique")
        return self

    @property
    def process_variant(self) -> ProcessVariant:
        return ProcessVariant(self.variant)

    def programs_by_id(self) -> dict[str, ProgramConfig]:
        return {p.program_id: p for p in self.programs}

    def canonical_dict(self) -> dict[str, Any]:
        return self.model_dump(mode="json")

    def digest(self) -> str:
        blob = json.dumps(self.canonical_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()

    def with_overrides(self, **kwargs: Any) -> "SimulationConfig":
        data = self.canonical_dict()
        data.update(kwargs)
        return config_from_dict(data)


def _check_mix(mix: dict[str, float], allowed: set[str], name: str) -> None:
    unknown = set(mix) - allowed
    if unknown:
        raise ValueError(f"{name} has unknown keys: {sorted(unknown)}")
    if any(w < 0 for w in mix.values()):
        raise ValueError(f"{name} weights must be non-negative")
    total = sum(mix.values())
    if abs(total - 1.0) > 1e-6:
        raise ValueError(f"{name} weights must sum to 1, got {total}")


def _format_validation_error(exc: ValidationError) -> list[str]:
    messages = []
    for err in exc.errors():
        path = ".".join(str(part) for part in err["loc"]) or "<root>"
        messages.append(f"{path}: {err['msg']}")
    return messages


def config_from_dict(data: Any) -> SimulationConfig:
    """Validate a raw mapping into a config; raises ConfigError on any problem."""
    if not isinstance(data, dict):
        raise ConfigError(["<root>: configuration must be a mapping"])
    try:
        return SimulationConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(_format_validation_error(exc)) from exc


def load_config(path: str | Path) -> SimulationConfig:
    """Load and validate a YAML/JSON config file.

    Unknown keys are hard errors; every error message carries the offending
    field path.
    """
    file_path = Path(path)
    if not file_path.exists():
        raise ConfigError([f"<file>: config file not found: {file_path}"])
    try:
        raw = yaml.safe_load(file_path.read_text("utf-8"))
    except yaml.YAMLError as exc:
        raise ConfigError([f"<file>: could not parse {file_path}: {exc}"]) from exc
    if raw is None:
        raw = {}
    return config_from_dict(raw)
