"""Exception types shared across the package."""

from __future__ import annotations


class MobiusError(Exception):
    """Base class for all package-specific errors."""


class NotAPermutation(MobiusError, ValueError):
    """A value sequence is not a bijection onto {1..n}."""


class IndexOutOfRange(MobiusError, IndexError):
    """A 1-based point position lies outside the permutation."""


class EmptyOperand(MobiusError, ValueError):
    """An operation requiring nonempty operands received an empty one."""


class OperandTooShort(MobiusError, ValueError):
    """An operand is nonempty but still too short for the operation."""


class InvalidShape(MobiusError, ValueError):
    """Shape parameters violate the shape invariants."""


class TooLarge(MobiusError, ValueError):
    """Input exceeds a configured size cap (downset cap, key length, ...)."""


class EmptyInterval(MobiusError, ValueError):
    """An interval is empty where a nonempty one is required."""


class PreconditionViolation(MobiusError, ValueError):
    """An operation's precondition does not hold for the given input."""


class NotAnOscillation(MobiusError, ValueError):
    """A permutation is not an increasing oscillation where one is required."""


class NotContained(MobiusError, ValueError):
    """The lower bound is not contained in the upper bound."""


class RangeError(MobiusError, ValueError):
    """A numeric range argument is invalid."""


class Overflow(MobiusError, OverflowError):
    """A computed value left the checked 64-bit range."""
