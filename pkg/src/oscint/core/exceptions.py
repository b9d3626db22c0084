"""Custom exceptions for oscint."""

from typing import Optional


class OscIntError(Exception):
    """Base exception for oscint."""
    pass


class ConfigurationError(OscIntError):
    """Raised when a run, scan or method configuration is invalid."""
    pass


class ValidationError(OscIntError):
    """Raised when input validation fails."""
    pass


class OutputError(OscIntError):
    """Raised when CSV/JSON output cannot be written."""
    pass


class NumericalError(OscIntError):
    """Base class for failures of the numerical core.

    Carries the index of the step at which the failure happened once the
    driver loop has attached it.
    """

    def __init__(self, message: str, step: Optional[int] = None):
        self.step = step
        super().__init__(message)

    def at_step(self, step: int) -> "NumericalError":
        """Attach the failing step index (first attachment wins)."""
        if self.step is None:
            self.step = step
            self.args = (f"{self.args[0]} (at step {step})",) + self.args[1:]
        return self


class PotentialDomainError(NumericalError):
    """Raised when positions leave the smooth region of the potential."""
    pass


class ResonantStepSize(NumericalError):
    """Raised when |sin(h*omega_j)| is too small to recover momenta."""
    pass


class FrequencyOutOfDomain(NumericalError):
    """Raised when h*omega lies outside the alpha-family validity domain."""
    pass


class DivisionByVanishingPsi(NumericalError):
    """Raised when psi(h*omega_j) falls below the configured floor."""
    pass


class CombinatorialOverflow(NumericalError):
    """Raised when a lattice enumeration would exceed the point cap."""
    pass


class GapNotFound(NumericalError):
    """Raised when no empty gap window exists among the candidates."""
    pass


class IllConditionedBasis(NumericalError):
    """Raised when a resonance-module basis matrix is numerically singular."""
    pass


class WindowTooShort(NumericalError):
    """Raised when a spectral window covers too few periods or samples."""
    pass
