"""Report lifecycle graph: which state transitions the process allows.

No skipping, no regression. Submission enters at SUBMITTED (or terminally at
REJECTED_AT_GATE when a policy gate fires). Critical out-of-scope escalations
jump straight from SUBMITTED to DECIDED because the panel never convenes for
them; in-house review variants decide directly after validation.
"""

from __future__ import annotations

from .errors import InvalidState
from .types import LifecycleState, Report

ALLOWED_TRANSITIONS: dict[LifecycleState, frozenset[LifecycleState]] = {
    LifecycleState.SUBMITTED: frozenset(
        {
            LifecycleState.VENDOR_VALIDATED,
            LifecycleState.CLOSED_DUPLICATE,
            LifecycleState.CLOSED_OUT_OF_SCOPE,
            LifecycleState.DECIDED,
        }
    ),
    LifecycleState.VENDOR_VALIDATED: frozenset(
        {LifecycleState.DISTRIBUTED, LifecycleState.DECIDED}
    ),
    LifecycleState.DISTRIBUTED: frozenset(
        {LifecycleState.AWAITING_VERDICTS, LifecycleState.DECIDED}
    ),
    LifecycleState.AWAITING_VERDICTS: frozenset({LifecycleState.DECIDED}),
    LifecycleState.DECIDED: frozenset({LifecycleState.SETTLED}),
    LifecycleState.SETTLED: frozenset(),
    LifecycleState.REJECTED_AT_GATE: frozenset(),
    LifecycleState.CLOSED_DUPLICATE: frozenset(),
    LifecycleState.CLOSED_OUT_OF_SCOPE: frozenset(),
}

TERMINAL_STATES = frozenset(
    state for state, nexts in ALLOWED_TRANSITIONS.items() if not nexts
)


def can_transition(current: LifecycleState, target: LifecycleState) -> bool:
    return target in ALLOWED_TRANSITIONS[current]


def transition(report: Report, target: LifecycleState) -> None:
    """Move ``report`` to ``target`` or raise :class:`InvalidState`."""
    if not can_transition(report.state, target):
        raise InvalidState(
            f"report {report.report_id}: illegal transition "
            f"{report.state.value} -> {target.value}"
        )
    report.state = target
