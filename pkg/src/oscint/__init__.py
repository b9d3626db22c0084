"""
oscint: long-time energy behaviour of trigonometric integrators.

Filtered trigonometric and alpha-family two-step integrators for highly
oscillatory Hamiltonian systems with several fast frequencies, together with
the resonance analysis that explains when their modified energies stay put.
"""

__version__ = "0.1.0"
__author__ = "oscint Team"

from .core.models import FrequencySystem, OscState
from .core.config import RunConfig
from .methods.integrators import TrigIntegrator, AlphaIntegrator, integrate
from .resonance.analysis import analyze_resonance

__all__ = [
    "FrequencySystem",
    "OscState",
    "RunConfig",
    "TrigIntegrator",
    "AlphaIntegrator",
    "integrate",
    "analyze_resonance",
]
