"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class BiHeckeError(Exception):
    """Base class for all errors raised by :mod:`bihecke`."""


class DescriptorError(BiHeckeError, ValueError):
    """A group descriptor string or element string could not be parsed."""


class DomainError(BiHeckeError, ValueError):
    """An argument is outside the domain of the operation (wrong group, not idempotent, ...)."""


class PreconditionError(DomainError):
    """A documented precondition of an operation does not hold."""


class ResourceError(BiHeckeError, RuntimeError):
    """A computation exceeded its configured budget.

    ``partial`` carries how far the computation got (e.g. the number of
    monoid elements found before the budget ran out).
    """

    def __init__(self, message: str, partial: int | None = None):
        super().__init__(message)
        self.partial = partial


class InvariantViolation(BiHeckeError, RuntimeError):
    """A mathematical invariant that must hold was found to fail."""
