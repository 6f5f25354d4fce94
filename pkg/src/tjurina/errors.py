"""Exception hierarchy.

Every error class that can reach the command line carries a distinct
``exit_code``; see ``tjurina.cli`` for the table.
"""

from __future__ import annotations


class TjurinaError(Exception):
    exit_code = 1


class ParseError(TjurinaError):
    exit_code = 10

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class NotHomogeneous(TjurinaError):
    exit_code = 11

    def __init__(self, term_degrees: list[tuple[str, int]]):
        self.term_degrees = term_degrees
        listing = ", ".join(f"{t} (degree {k})" for t, k in term_degrees)
        super().__init__(f"polynomial is not homogeneous: {listing}")


class ConeInput(TjurinaError):
    """The hypersurface is a cone (some AR(f)_0 syzygy exists)."""

    exit_code = 12


class NonIsolatedOrBug(TjurinaError):
    """Stabilization failed or two independent Tjurina routes disagree."""

    exit_code = 13

    def __init__(self, message: str, values: dict | None = None):
        self.values = dict(values or {})
        if self.values:
            message = f"{message}: {self.values}"
        super().__init__(message)


class NoStabilization(NonIsolatedOrBug):
    pass


class InvariantViolation(TjurinaError):
    """A theorem-backed assertion failed; this always indicates a bug."""

    exit_code = 14


class BoundViolation(InvariantViolation):
    pass


class ProofStepViolation(InvariantViolation):
    pass


class UnsupportedInput(TjurinaError):
    exit_code = 15


class WrongDimension(UnsupportedInput):
    pass


class DegreeTooSmall(UnsupportedInput):
    pass


class NotSingular(UnsupportedInput):
    pass


class DimensionNotOne(UnsupportedInput):
    pass


class ModulusMismatch(TjurinaError, ValueError):
    pass
