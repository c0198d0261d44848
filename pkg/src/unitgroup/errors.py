"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class UnitGroupError(Exception):
    """Base class for every error raised by this package."""


class UsageError(UnitGroupError, ValueError):
    """Bad user input (maps to CLI exit code 2)."""


class NonPrime(UsageError):
    def __init__(self, p: int):
        super().__init__(f"characteristic {p} is not prime")
        self.p = p


class DegreeZero(UsageError):
    def __init__(self):
        super().__init__("extension degree must be >= 1")


class FieldTooLarge(UsageError):
    def __init__(self, q: int):
        super().__init__(f"field order {q} exceeds the 2^32 cap")
        self.q = q


class ZeroInverse(UnitGroupError, ZeroDivisionError):
    def __init__(self):
        super().__init__("zero has no multiplicative inverse")


class ZeroPolynomial(UnitGroupError, ValueError):
    def __init__(self):
        super().__init__("cannot factor the zero polynomial")


class AmbientMismatch(UnitGroupError, ValueError):
    def __init__(self, a: int, b: int):
        super().__init__(f"subspaces live in different ambient spaces ({a} vs {b})")


class ParseError(UsageError):
    """Malformed group spec; ``position`` is the 0-based offending index."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class OddDihedralOrder(ParseError):
    def __init__(self, n: int, position: int):
        super().__init__(f"dihedral order must be even and >= 2, got D{n}", position)
        self.n = n


class NotNormal(UnitGroupError, ValueError):
    def __init__(self):
        super().__init__("subgroup is not normal")


class NotAnIdeal(UnitGroupError, ValueError):
    def __init__(self, side: str):
        super().__init__(f"subspace is not closed under {side} multiplication")
        self.side = side


class ChopperStall(UnitGroupError, RuntimeError):
    def __init__(self, dim: int, attempts: int):
        super().__init__(f"could not split or certify a {dim}-dimensional module after {attempts} attempts")
        self.dim = dim
        self.attempts = attempts


class CertificationFailure(UnitGroupError, RuntimeError):
    """A post-check on a computed object failed (indicates a bug, exit code 3)."""


class NotNilpotent(UnitGroupError, ValueError):
    def __init__(self):
        super().__init__("ideal is not nilpotent")


class NonsquareDimension(CertificationFailure):
    def __init__(self, dim: int, d: int):
        super().__init__(f"component dimension {dim} is not d*n^2 for d={d}")


class NotSemisimple(UnitGroupError, ValueError):
    def __init__(self):
        super().__init__("algebra is not semisimple")


class AmbiguousDegrees(UnitGroupError, ValueError):
    def __init__(self, solutions):
        super().__init__(f"dimension constraints admit {len(solutions)} solutions")
        self.solutions = solutions


class CharThree(UnitGroupError, ValueError):
    def __init__(self):
        super().__init__(
            "characteristic 3 is outside the reference table; its unit group is "
            "treated in earlier work on F(C3 x D10)"
        )


class TooLarge(UnitGroupError, ValueError):
    def __init__(self, size: int, cap: int):
        super().__init__(f"search space of {size} elements exceeds cap {cap}")


class StepFailed(UnitGroupError, AssertionError):
    """A witness check in the p=5 verification failed."""

    def __init__(self, step: int, check: str, witness):
        super().__init__(f"step {step} check {check!r} failed; witness: {witness}")
        self.step = step
        self.check = check
        self.witness = witness


class ReferenceMismatch(UnitGroupError, AssertionError):
    """Computed data disagrees with the reference table (CLI exit code 1)."""
