"""Exception types raised across qmetric."""


class QmetricError(Exception):
    """Base class for all library errors."""


class DimensionError(QmetricError, ValueError):
    pass


class ZeroVectorError(QmetricError, ValueError):
    pass


class NormalizationError(QmetricError, ValueError):
    pass


class FactorizationMismatch(QmetricError, ValueError):
    pass


class InvalidPovm(QmetricError, ValueError):
    pass


class RangeError(QmetricError, ValueError):
    pass


class ProfileViolation(QmetricError, ValueError):
    """An overlap profile fails one of the admissibility conditions.

    ``condition`` names the failed check and ``witness`` holds the grid
    points where it failed.
    """

    def __init__(self, condition, witness, message=None):
        self.condition = condition
        self.witness = witness
        super().__init__(message or f"profile violates {condition}: {witness}")


class CandidateError(QmetricError, RuntimeError):
    """A distance candidate raised while being evaluated by the harness."""

    def __init__(self, candidate, inputs, cause, axiom=None):
        self.candidate = candidate
        self.inputs = inputs
        self.cause = cause
        self.axiom = axiom
        where = f" during {axiom}" if axiom else ""
        super().__init__(f"candidate {candidate!r} failed{where}: {cause!r}")


class FormatError(QmetricError, ValueError):
    """A state, POVM or profile file could not be parsed; the message names file and field."""
