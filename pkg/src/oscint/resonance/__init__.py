"""Resonance analysis: sine combinations, gaps, modules and modified frequencies."""

from .combinations import (
    SineCombination, DEFAULT_POINT_CAP, canonical_vectors, lattice_point_count,
    sine_combinations
)
from .gap import GapResult, detect_gap, near_resonant_set
from .lattice import ResonanceModule, hermite_normal_form, module_basis, in_module
from .conditions import (
    ConditionCheck, check_kappa, check_numerical_nonresonance, check_strong_nonresonance
)
from .frequencies import (
    ModifiedFrequencies, VerificationReport, modify_frequencies, verify_modified_frequencies
)
from .analysis import ResonanceAnalysis, analyze_resonance

__all__ = [
    "SineCombination",
    "DEFAULT_POINT_CAP",
    "canonical_vectors",
    "lattice_point_count",
    "sine_combinations",
    "GapResult",
    "detect_gap",
    "near_resonant_set",
    "ResonanceModule",
    "hermite_normal_form",
    "module_basis",
    "in_module",
    "ConditionCheck",
    "check_kappa",
    "check_numerical_nonresonance",
    "check_strong_nonresonance",
    "ModifiedFrequencies",
    "VerificationReport",
    "modify_frequencies",
    "verify_modified_frequencies",
    "ResonanceAnalysis",
    "analyze_resonance",
]
