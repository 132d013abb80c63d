"""Exception types shared across the engine, simulator, and harness."""


class CrowdvetError(Exception):
    """Base class for all package-specific errors."""


class OutOfOrderTick(CrowdvetError):
    """An event was appended with a tick earlier than the log's last event."""


class CorruptEvent(CrowdvetError):
    """A serialized event could not be parsed or names an unknown kind."""


class InvalidState(CrowdvetError):
    """A report lifecycle transition was attempted outside the allowed graph."""


class ProgramInactive(CrowdvetError):
    """The target program is not launched yet, or is paused."""


class InsufficientVerifiers(CrowdvetError):
    """The eligible verifier pool is smaller than the requested panel size."""


class AlreadyVerdicted(CrowdvetError):
    """A verdict was recorded on an assignment that already has one."""


class DeadlineExpired(CrowdvetError):
    """A verdict arrived at or after the assignment deadline."""


class BadTally(CrowdvetError):
    """Verdict counts are inconsistent with the panel size or threshold."""


class BudgetExhausted(CrowdvetError):
    """A settlement would drive the program budget below zero; nothing paid."""


class DomainError(CrowdvetError, ValueError):
    """A numeric argument lies outside its documented domain."""


class UnknownEventKind(CrowdvetError, KeyError):
    """A points award was requested for an event kind with no base value."""


class ConfigError(CrowdvetError):
    """Configuration failed to parse or validate.

    ``errors`` holds one human-readable message per offending field,
    each prefixed with the field path.
    """

    def __init__(self, errors: list[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))
