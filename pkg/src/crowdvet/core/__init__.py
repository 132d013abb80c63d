"""Shared domain types and the append-only, replayable event ledger.

``crowdvet.core.state`` (world state + replay) is imported explicitly by
consumers rather than re-exported here: it depends on the configuration
schema, which in turn depends on these base types.
"""

from .errors import (  # noqa: F401
    AlreadyVerdicted,
    BadTally,
    BudgetExhausted,
    ConfigError,
    CorruptEvent,
    CrowdvetError,
    DeadlineExpired,
    DomainError,
    InsufficientVerifiers,
    InvalidState,
    OutOfOrderTick,
    ProgramInactive,
    UnknownEventKind,
)
from .events import Event, EventKind, EventLog, append_event  # noqa: F401
from .lifecycle import ALLOWED_TRANSITIONS, TERMINAL_STATES, can_transition, transition  # noqa: F401
from .types import (  # noqa: F401
    AgentState,
    Archetype,
    BehaviorKind,
    Decision,
    DecisionKind,
    Fingerprint,
    GateReason,
    HackerProfile,
    LatentVuln,
    LifecycleState,
    ProcessVariant,
    Program,
    Report,
    ReportFeature,
    RewardKind,
    RewardSchedule,
    Severity,
    SubmissionStats,
    UserType,
    ValidationOutcomeKind,
    Verdict,
    VerdictKind,
    VerificationAssignment,
    VulnClass,
)
