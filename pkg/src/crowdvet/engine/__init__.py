"""Protocol engine: report lifecycle from submission through settlement.

The lifecycle transition graph itself lives in ``crowdvet.core.lifecycle``
(state application needs it) and is re-exported here as part of the engine
surface.
"""

from ..core.lifecycle import (  # noqa: F401
    ALLOWED_TRANSITIONS,
    TERMINAL_STATES,
    can_transition,
    transition,
)
from .settlement import (  # noqa: F401
    RewardEventRecord,
    record_inhouse_decision,
    settle,
    vendor_override,
)
from .submission import (  # noqa: F401
    ReportDraft,
    SubmissionOutcome,
    draft_from_report,
    submit_report,
)
from .validation import (  # noqa: F401
    ValidationMode,
    ValidationOutcome,
    duplicate_check,
    vendor_validate,
)
from .verification import (  # noqa: F401
    aggregate_verdicts,
    assign_verifiers,
    decide_tally,
    expire_due_assignments,
    finalize_panel_if_complete,
    panel_tally,
    record_verdict,
)
