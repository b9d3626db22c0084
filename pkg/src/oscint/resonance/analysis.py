"""Full resonance analysis of one step size."""

from dataclasses import dataclass
from typing import Any, Dict, List

from loguru import logger

from ..core.exceptions import ConfigurationError
from ..core.models import FrequencySystem
from .combinations import DEFAULT_POINT_CAP, IntVector, SineCombination, sine_combinations
from .conditions import (
    ConditionCheck, check_kappa, check_numerical_nonresonance, check_strong_nonresonance
)
from .frequencies import (
    ModifiedFrequencies, VerificationReport, modify_frequencies, verify_modified_frequencies
)
from .gap import GapResult, detect_gap, near_resonant_set
from .lattice import ResonanceModule, in_module, module_basis


@dataclass
class ResonanceAnalysis:
    """Everything the resonance pipeline computes for (freq, h, N, delta)."""
    freq: FrequencySystem
    h: float
    N: int
    delta: float
    combinations: List[SineCombination]
    gap: GapResult
    near_resonant: List[IntVector]
    module: ResonanceModule
    modified: ModifiedFrequencies
    verification: VerificationReport
    kappa: ConditionCheck
    numerical_nonresonance: ConditionCheck
    strong_nonresonance: ConditionCheck

    def rows(self) -> List[Dict[str, Any]]:
        """One row per combination: k, value, near_resonant, in_module."""
        near = set(self.near_resonant)
        return [
            {
                "k": c.k,
                "value": c.value,
                "near_resonant": c.k in near,
                "in_module": in_module(c.k, self.module),
            }
            for c in self.combinations
        ]


def analyze_resonance(freq: FrequencySystem, h: float, N: int, delta: float = 0.25,
                      cap: int = DEFAULT_POINT_CAP) -> ResonanceAnalysis:
    """Run enumeration, gap, module, modified frequencies and all checks.

    Raises:
        ConfigurationError: If the system has no fast frequency
        NumericalError: Propagated from the individual stages
    """
    if freq.ell < 1:
        raise ConfigurationError("Resonance analysis needs at least one fast frequency")
    logger.info(f"Resonance analysis: ell={freq.ell}, h={h:.6g}, N={N}, delta={delta:g}")

    combos = sine_combinations(freq, h, N, cap)
    gap = detect_gap(combos, h, delta, N, freq.ell)
    near = near_resonant_set(combos, h, gap)
    module = module_basis(near, ell=freq.ell)
    modified = modify_frequencies(freq, h, module, gap)
    verification = verify_modified_frequencies(modified, freq, h, N, cap)

    analysis = ResonanceAnalysis(
        freq=freq,
        h=h,
        N=N,
        delta=delta,
        combinations=combos,
        gap=gap,
        near_resonant=near,
        module=module,
        modified=modified,
        verification=verification,
        kappa=check_kappa(freq, h),
        numerical_nonresonance=check_numerical_nonresonance(freq, h, N, cap),
        strong_nonresonance=check_strong_nonresonance(freq, h, N, cap),
    )
    logger.info(
        f"Module rank {module.rank}, basis {list(module.basis)}; "
        f"verification {'passed' if verification.passed else 'FAILED'}"
    )
    return analysis
