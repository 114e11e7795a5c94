"""Exception hierarchy shared by every petaluma module."""

from __future__ import annotations


class PetalumaError(Exception):
    """Base class for all library errors."""


class InvalidPermutation(PetalumaError, ValueError):
    pass


class EvenLength(InvalidPermutation):
    pass


class NotPermutation(InvalidPermutation):
    pass


class LengthMismatch(InvalidPermutation):
    pass


class OutOfRange(PetalumaError, ValueError):
    pass


class ParityViolation(PetalumaError, ArithmeticError):
    """The linking-number double sum came out odd (implementation bug)."""


class NormalizationFailure(PetalumaError, ArithmeticError):
    pass


class IntegralityFailure(PetalumaError, ArithmeticError):
    pass


class UnitFailure(PetalumaError, ArithmeticError):
    pass


class TooLarge(PetalumaError, ValueError):
    pass


class NotDisjoint(PetalumaError, ValueError):
    pass


class MultiComponent(PetalumaError, ValueError):
    pass


class NotSeparable(PetalumaError, ValueError):
    pass


class NotThreeEdgeConnected(PetalumaError, ValueError):
    pass


class ParamError(PetalumaError, ValueError):
    pass


class ZeroEntry(PetalumaError, ValueError):
    pass


class PDSyntaxError(PetalumaError, ValueError):
    """Malformed PD / permutation literal text."""


class InconsistentCode(PetalumaError, ValueError):
    pass
