"""Exception hierarchy shared by the library and the ``orecalc`` CLI.

The CLI maps :class:`ResourceLimitError` to exit code 3 and every other
failure to exit code 2.
"""


class OreCalcError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 2


class InputError(OreCalcError, ValueError):
    """Malformed text, bad arity or an argument outside its domain."""


class FieldError(InputError):
    """Invalid field descriptor or element code."""


class TowerError(InputError):
    """Malformed tower description or an operation outside the tower's envelope."""


class RingError(OreCalcError, ArithmeticError):
    """Arithmetic that has no answer in the ring (inverse of zero, non-unit divisor)."""


class ResourceLimitError(OreCalcError):
    """A configured cap (codeword scan, vanishing search) would be exceeded."""

    exit_code = 3


class InvariantViolation(OreCalcError, AssertionError):
    """A bound guaranteed by theory failed; always a bug or a bad tower."""
