"""Filter functions and two-step integrators."""

from .filters import (
    FilterPair, ChiFilter, SignConditionReport, DEUFLHARD, GAUTSCHI_A,
    sinc, sigma, get_filter_pair, is_symplectic, check_filter_sign_condition,
    symplectic_rescaling, alpha_filters, scaled_sinc_chi, is_modified_symplectic
)
from .integrators import (
    StepPair, Stepper, StepObserver, TrigIntegrator, AlphaScheme, AlphaIntegrator,
    modified_frequency, alpha_step_restriction, alpha_as_trig, integrate
)

__all__ = [
    "FilterPair",
    "ChiFilter",
    "SignConditionReport",
    "DEUFLHARD",
    "GAUTSCHI_A",
    "sinc",
    "sigma",
    "get_filter_pair",
    "is_symplectic",
    "check_filter_sign_condition",
    "symplectic_rescaling",
    "alpha_filters",
    "scaled_sinc_chi",
    "is_modified_symplectic",
    "StepPair",
    "Stepper",
    "StepObserver",
    "TrigIntegrator",
    "AlphaScheme",
    "AlphaIntegrator",
    "modified_frequency",
    "alpha_step_restriction",
    "alpha_as_trig",
    "integrate",
]
