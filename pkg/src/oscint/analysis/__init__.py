"""Energy functionals and spectral probes."""

from .energies import (
    EnergyReport, EnergyMonitor, ENERGY_FIELDS, oscillatory_energy, slow_energy, total_energy,
    modified_oscillatory_energy, modified_oscillatory_energy_tilde, deviation_series,
    oscillatory_weights, modified_weights, tilde_weights
)
from .spectrum import (
    SpectralPeak, alias_frequency, amplitude_at, windowed_power, probe_peaks,
    fit_scaling_exponent, sample_trajectory, amplitude_scaling
)

__all__ = [
    "EnergyReport",
    "EnergyMonitor",
    "ENERGY_FIELDS",
    "oscillatory_energy",
    "slow_energy",
    "total_energy",
    "modified_oscillatory_energy",
    "modified_oscillatory_energy_tilde",
    "deviation_series",
    "oscillatory_weights",
    "modified_weights",
    "tilde_weights",
    "SpectralPeak",
    "alias_frequency",
    "amplitude_at",
    "windowed_power",
    "probe_peaks",
    "fit_scaling_exponent",
    "sample_trajectory",
    "amplitude_scaling",
]
