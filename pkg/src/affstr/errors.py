"""Exception hierarchy shared by all modules."""


class AffstrError(Exception):
    """Base class for all library errors."""


class ConfigurationError(AffstrError):
    """Bad algebra data, mismatched ranks, or inconsistent CLI input."""


class NonterminationError(AffstrError):
    """A reduction loop exceeded its step budget (level <= 0 misuse)."""


class ResourceLimitError(AffstrError):
    """An orbit enumeration outgrew its configured node budget."""


class CongruenceError(AffstrError):
    """A folded target left the congruence class of its base weight."""


class ConventionError(AffstrError):
    """A sign or grade convention was violated (negative folded offset)."""


class ConsistencyError(AffstrError):
    """An exact identity failed: non-integer or negative solution, oracle mismatch."""


class OutOfWindowError(AffstrError):
    """A query asked for a grade beyond the computed cutoff."""
