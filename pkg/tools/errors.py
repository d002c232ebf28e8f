"""
Errors module for the algebra engines.

Every failure raised by the computational layer derives from AlgebraError so
the command layer can map it to the math-domain exit code in one place.
"""
from typing import Any, Optional, Sequence


class AlgebraError(Exception):
    """Base class for math-domain failures (exit code 2 at the CLI)."""
    pass


class FieldMismatchError(AlgebraError):
    """Raised when operands live in different, non-embeddable fields."""
    pass


class ZeroDivisionAlgebraError(AlgebraError, ZeroDivisionError):
    """Raised on inversion of zero, division by zero or an inexact division."""
    pass


class DegenerateInputError(AlgebraError):
    """Raised when an operation receives an input outside its domain."""
    pass


class NotCoprimeError(AlgebraError):
    """Raised when a system expected to be coprime shares a factor.

    Attributes:
        witness: The common factor found (a BiPoly of positive z-degree).
    """

    def __init__(self, message: str, witness: Any):
        super().__init__(message)
        self.witness = witness


class SizeCapExceededError(AlgebraError):
    """Raised when a predicted polynomial size exceeds the configured cap."""

    def __init__(self, predicted: int, cap: int):
        super().__init__(f"predicted z-degree {predicted} exceeds the size cap {cap}")
        self.predicted = predicted
        self.cap = cap


class UnluckyDrawError(AlgebraError):
    """Raised when a random combination lost the gcd degree of its inputs."""

    def __init__(self, seed: int):
        super().__init__(f"random combination drawn with seed {seed} degraded the gcd")
        self.seed = seed


class CombinationExhaustedError(AlgebraError):
    """Raised when every seeded random combination was unlucky.

    Attributes:
        seed_trail: Seeds of every draw that was tried, in order.
    """

    def __init__(self, seed_trail: Sequence[int]):
        super().__init__(f"random combination failed for all seeds {list(seed_trail)}")
        self.seed_trail = tuple(seed_trail)


class LinearDependenceError(AlgebraError):
    """Raised when two points are F_q-linearly dependent.

    Dependent points share their torsion behaviour for every member of the
    family: they both have the same order.
    """

    def __init__(self, message: str, zeta: Optional[int] = None):
        super().__init__(message)
        self.zeta = zeta


class ParseError(ValueError):
    """Raised on malformed user input (exit code 1 at the CLI)."""
    pass
