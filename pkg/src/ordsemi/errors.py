"""Exception hierarchy shared by every module."""

from __future__ import annotations


class SemigroupError(Exception):
    """Base class for all errors raised by ordsemi."""


class EvaluationError(SemigroupError):
    """The binary operation failed (or produced NaN) on concrete inputs."""

    def __init__(self, message: str, inputs: tuple[float, ...] = ()):
        super().__init__(message)
        self.inputs = tuple(inputs)


class DomainError(EvaluationError):
    """A DSL function was applied outside its real domain."""


class NumericOverflow(EvaluationError, OverflowError):
    """An evaluation produced a non-finite value."""


class ClosureError(EvaluationError):
    """The operation left the carrier interval."""

    def __init__(self, message: str, inputs: tuple[float, ...] = (), partial: float | None = None):
        super().__init__(message, inputs)
        self.partial = partial


class RootOutOfRange(SemigroupError):
    """No root of the requested order exists inside the interval."""

    def __init__(self, message: str, target: float, nearest: float | None = None):
        super().__init__(message)
        self.target = target
        # power of the closest admissible bracket end; useful for reports
        self.nearest = nearest


class NotStrictlyPositive(SemigroupError):
    pass


class NonpositiveExponent(SemigroupError):
    pass


class OutOfRange(SemigroupError):
    """A logarithm could not be bracketed within the doubling/halving limits."""


class AxiomViolation(SemigroupError):
    def __init__(self, message: str, violations: list):
        super().__init__(message)
        self.violations = list(violations)


class MonotoneViolation(SemigroupError):
    """A sequence that must be monotone was not."""


class NotPositive(SemigroupError):
    """Lexicographic element is not strictly above the unit (0, 0)."""


class ExprSyntaxError(ValueError):
    """Malformed operation expression.

    ``offset`` is the byte offset of the offending token and ``expected`` the
    set of tokens that would have been accepted there.
    """

    def __init__(self, message: str, offset: int, expected: frozenset[str] = frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")


class UnknownIdentifier(ExprSyntaxError):
    pass
