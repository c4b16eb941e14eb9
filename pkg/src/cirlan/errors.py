"""Exception hierarchy. Each class carries the CLI exit code it maps to."""

from __future__ import annotations


class CirLanError(Exception):
    """Base class for all cirlan errors."""

    exit_code: int = 1


class ConfigError(CirLanError):
    """Invalid or unreadable run configuration."""

    exit_code = 2


class CirDomainError(CirLanError, ValueError):
    """Input outside the mathematical domain of an operation."""

    exit_code = 3


DomainError = CirDomainError


class CriticalHorizonTooShort(CirDomainError):
    """Critical-regime rates need log(n*delta) > 0."""


class AlternativeLeavesParameterSpace(CirDomainError):
    """A local alternative pushed a below sigma."""


class WrongRegime(CirDomainError):
    """Operation called in a regime it does not support."""


class SigmaMismatch(CirDomainError):
    """Two parameter sets compared under different sigma."""


class StepLeavesDomain(CirDomainError):
    """A finite-difference step crosses the a >= sigma boundary."""


class DegenerateDesign(CirDomainError):
    """The discretized score system is singular (e.g. a constant path)."""


class MissingDraw(CirDomainError):
    """A limit-law evaluation needs a random draw that was not supplied."""


class EmptySample(CirDomainError):
    """A statistic was requested on an empty sample."""


class InsufficientSamples(CirDomainError):
    """Fewer Monte Carlo samples than a report requires."""


class SeriesFormatError(CirLanError):
    """Malformed observation series file."""

    exit_code = 4


class VerificationFailed(CirLanError):
    """A verification report did not pass its gates."""

    exit_code = 5
