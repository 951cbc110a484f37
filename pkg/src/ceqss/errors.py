"""Exception hierarchy shared by every module in the package."""

from __future__ import annotations


class CeqssError(Exception):
    """Base class for all errors raised by :mod:`ceqss`."""


class DomainError(CeqssError, ValueError):
    """An argument lies outside the domain of an operation."""


class FieldMismatchError(DomainError):
    """Two operands live over different prime fields."""


class ConditionError(DomainError):
    """A construction condition failed.

    ``condition`` is a short machine-readable tag such as ``"M1"``, ``"N2"``
    or ``"Eq15b"``; ``failures`` lists every tag that failed when several
    conditions were checked together.
    """

    def __init__(self, condition: str, message: str, failures: list[str] | None = None):
        super().__init__(f"[{condition}] {message}")
        self.condition = condition
        self.failures = failures if failures is not None else [condition]


class ResourceError(CeqssError):
    """An enumeration or simulation budget would be exceeded."""


class IntegrityError(CeqssError):
    """Observed share symbols are inconsistent with every valid encoding."""
