"""Exception types shared across the package."""


class ElicitationError(Exception):
    """Base class for all package-specific errors."""


class AlreadyKnown(ElicitationError):
    """The outcome of this question is already derivable from the knowledge base."""


class DirectContradiction(ElicitationError):
    """The proposed outcome directly contradicts a derivable fact.

    Raised when the reverse of a proposed strict preference, or a strict
    preference conflicting with a proposed indifference, is already in the
    closure.  Under contradiction-prevention (derivable questions are never
    asked) this can only be triggered by an external answer stream; callers
    there must route outcomes through ``resolve_contradiction`` first.
    """


class Unresolvable(ElicitationError):
    """A contradiction that outcome replacement cannot fix.

    Signals a corrupted external answer stream: the exact reverse of a
    proposed strict fact is already derivable.
    """


class InsufficientVotes(ElicitationError):
    """Fewer responses than the configured minimum; cannot aggregate."""


class Exhausted(ElicitationError):
    """No selectable question remains (the caller should have terminated)."""


class IncompleteDataset(ElicitationError):
    """A replay dataset has no answer for a selected question."""


class InvalidSpec(ElicitationError):
    """A session specification is invalid (duplicate labels, no criteria, ...)."""


class UnknownSession(ElicitationError):
    """No session with the given id."""


class StaleQuestion(ElicitationError):
    """A vote referenced a question that is no longer open."""


class SessionTerminal(ElicitationError):
    """The session already determined every object's Pareto-optimality."""


class CorruptSnapshot(ElicitationError):
    """A session snapshot failed checksum or schema validation."""
