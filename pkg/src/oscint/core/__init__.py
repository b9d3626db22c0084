"""Core data models, potentials, configuration and exceptions."""

from .models import (
    FrequencySystem, BlockVector, OscState, FilterName, ProblemName,
    RunSummary, ScanRow, OutputPaths
)
from .potential import Potential, gradient_check, zero_potential
from .config import MethodKind, MethodSpec, RunConfig, ScanConfig
from .exceptions import (
    OscIntError, ConfigurationError, ValidationError, OutputError, NumericalError,
    PotentialDomainError, ResonantStepSize, FrequencyOutOfDomain, DivisionByVanishingPsi,
    CombinatorialOverflow, GapNotFound, IllConditionedBasis, WindowTooShort
)

__all__ = [
    "FrequencySystem",
    "BlockVector",
    "OscState",
    "FilterName",
    "ProblemName",
    "RunSummary",
    "ScanRow",
    "OutputPaths",
    "Potential",
    "gradient_check",
    "zero_potential",
    "MethodKind",
    "MethodSpec",
    "RunConfig",
    "ScanConfig",
    "OscIntError",
    "ConfigurationError",
    "ValidationError",
    "OutputError",
    "NumericalError",
    "PotentialDomainError",
    "ResonantStepSize",
    "FrequencyOutOfDomain",
    "DivisionByVanishingPsi",
    "CombinatorialOverflow",
    "GapNotFound",
    "IllConditionedBasis",
    "WindowTooShort",
]
