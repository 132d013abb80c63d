"""Append-only event ledger with line-delimited JSON serialization.

One event per line, compact JSON with sorted keys, so a log written twice
from the same run is byte-identical and diffs cleanly. Replaying a parsed
log through :mod:`crowdvet.core.state` reproduces the world exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import CorruptEvent, OutOfOrderTick


class EventKind:
    """String constants for every ledger event kind."""

    RUN_STARTED = "run_started"
    RUN_FINISHED = "run_finished"
    HACKER_REGISTERED = "hacker_registered"
    TEAM_JOINED = "team_joined"
    PROGRAM_REGISTERED = "program_registered"
    PROGRAM_LAUNCHED = "program_launched"
    PROGRAM_PAUSED = "program_paused"
    SCOPE_STAGE_ACTIVATED = "scope_stage_activated"
    PURPOSE_BROADCAST = "purpose_broadcast"
    HACKER_ONBOARDED = "hacker_onboarded"
    HUNTS_PERFORMED = "hunts_performed"
    REPORT_SUBMITTED = "report_submitted"
    REPORT_GATE_REJECTED = "report_gate_rejected"
    REPORT_VALIDATED = "report_validated"
    VENDOR_CORRESPONDENCE = "vendor_correspondence"
    PLATFORM_FEE_CHARGED = "platform_fee_charged"
    VERIFIERS_ASSIGNED = "verifiers_assigned"
    ASSIGNMENT_EXPIRED = "assignment_expired"
    VERIFIER_REASSIGNED = "verifier_reassigned"
    VERDICT_RECORDED = "verdict_recorded"
    REPORT_DECIDED = "report_decided"
    REPORT_SETTLED = "report_settled"
    VENDOR_OVERRIDE_RESOLVED = "vendor_override_resolved"
    REWARD_ISSUED = "reward_issued"
    POINTS_AWARDED = "points_awarded"
    BADGE_AWARDED = "badge_awarded"
    CERTIFICATE_ISSUED = "certificate_issued"
    SUBMISSION_RACE = "submission_race"
    SNIPE_PLANNED = "snipe_planned"
    LEAK_RECORDED = "leak_recorded"

    @classmethod
    def all(cls) -> frozenset[str]:
        return _ALL_KINDS


_ALL_KINDS = frozenset(
    value for name, value in vars(EventKind).items()
    if not name.startswith("_") and isinstance(value, str)
)


@dataclass(frozen=True)
class Event:
    tick: int
    seq: int
    actor: str
    kind: str
    payload: dict = field(default_factory=dict)

    def to_line(self) -> str:
        return json.dumps(
            {
                "tick": self.tick,
                "seq": self.seq,
                "actor": self.actor,
                "kind": self.kind,
                "payload": self.payload,
            },
            sort_keys=True,
            separators=(",", ":"),
        )

    @classmethod
    def from_line(cls, line: str) -> "Event":
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorruptEvent(f"unparseable event line: {exc}") from exc
        try:
            event = cls(
                tick=data["tick"],
                seq=data["seq"],
                actor=data["actor"],
                kind=data["kind"],
                payload=data["payload"],
            )
        except (KeyError, TypeError) as exc:
            raise CorruptEvent(f"event line missing field: {exc}") from exc
        if event.kind not in _ALL_KINDS:
            raise CorruptEvent(f"unknown event kind: {event.kind!r}")
        return event


@dataclass
class EventLog:
    """Strictly ordered, append-only sequence of events."""

    events: list[Event] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    @property
    def last(self) -> Event | None:
        return self.events[-1] if self.events else None

    def next_seq(self) -> int:
        return self.events[-1].seq + 1 if self.events else 0

    def to_lines(self) -> list[str]:
        return [e.to_line() for e in self.events]

    def to_text(self) -> str:
        return "".join(line + "\n" for line in self.to_lines())

    @classmethod
    def from_lines(cls, lines: list[str]) -> "EventLog":
        log = cls()
        for line in lines:
            stripped = line.strip()
            if not stripped:
                continue
            append_event(log, Event.from_line(stripped))
        return log

    @classmethod
    def from_text(cls, text: str) -> "EventLog":
        return cls.from_lines(text.splitlines())


def append_event(log: EventLog, event: Event) -> EventLog:
    """Append one event, enforcing (tick, seq) monotonicity.

    Same-tick events are permitted and ordered by their sequence number.
    Raises :class:`OutOfOrderTick` when the event's tick precedes the last
    logged tick, or when its sequence number does not advance.
    """
    last = log.last
    if last is not None:
        if event.tick < last.tick:
            raise OutOfOrderTick(
                f"event tick {event.tick} precedes last logged tick {last.tick}"
            )
        if event.seq <= last.seq:
            raise OutOfOrderTick(
                f"event seq {event.seq} does not advance past {last.seq}"
            )
    log.events.append(event)
    return log
