"""Shared exception types."""


class ResourceLimitError(Exception):
    """A size parameter exceeds the guard built into an enumeration."""


class TruncationError(Exception):
    """An operator application would escape the truncated Fock space."""
