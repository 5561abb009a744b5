"""Exception types raised across the package."""

from __future__ import annotations


class QBError(Exception):
    """Base class for all errors raised by qbftp."""


class DimensionError(QBError, ValueError):
    pass


class NormalizationError(QBError, ValueError):
    pass


class SymmetryError(QBError, ValueError):
    pass


class ArityError(QBError, ValueError):
    pass


class ProbabilityError(QBError, ValueError):
    """A computed probability left the admissible range by more than tolerance."""


class SicViolationError(QBError, ValueError):
    def __init__(self, report):
        super().__init__(f"vectors do not form a SIC: {report.summary()}")
        self.report = report


class ImpossibleOutcomeError(QBError, ValueError):
    """The outcome has (numerically) zero probability, so no posterior exists."""


class UnderdeterminedError(QBError, ValueError):
    """The reference measurement is not informationally complete."""


class InconsistentDataError(QBError, ValueError):
    """No operator reproduces the given probabilities within tolerance."""


class ReconstructionInfeasibleError(QBError, ValueError):
    """The reconstructed operator is not a density operator."""

    def __init__(self, candidate, report):
        super().__init__(f"reconstructed operator is not a state: {report.summary()}")
        self.candidate = candidate
        self.report = report
