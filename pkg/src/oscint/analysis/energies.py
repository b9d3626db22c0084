"""Total, slow, oscillatory and modified oscillatory energies."""

import math
from dataclasses import asdict, dataclass, fields
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..core.models import FrequencySystem, OscState
from ..core.potential import Potential
from ..methods.filters import FilterPair, sigma, sinc
from ..methods.integrators import AlphaScheme

COMPENSATED_SUM_THRESHOLD = 16

Weights = Tuple[np.ndarray, np.ndarray]


@dataclass(frozen=True)
class EnergyReport:
    """Energy functionals at time t."""
    t: float
    H: float
    H_slow: float
    H_osc: float
    H_osc_star: float
    H_osc_star_tilde: Optional[float] = None

    def to_dict(self) -> Dict[str, Optional[float]]:
        return asdict(self)


ENERGY_FIELDS = ("H", "H_slow", "H_osc", "H_osc_star")


def _sum(terms: np.ndarray) -> float:
    if terms.size > COMPENSATED_SUM_THRESHOLD:
        return math.fsum(terms.tolist())
    return float(np.sum(terms))


def _fast_mask(freq: FrequencySystem) -> np.ndarray:
    return freq.component_blocks() > 0


def oscillatory_weights(freq: FrequencySystem) -> Weights:
    """Per-component weights (w_p, w_q) of H_osc = sum 1/2 (w_p p^2 + w_q q^2)."""
    fast = _fast_mask(freq)
    wp = fast.astype(np.float64)
    wq = np.where(fast, np.square(freq.component_omegas()), 0.0)
    return wp, wq


def modified_weights(pair: FilterPair, h: float, freq: FrequencySystem) -> Weights:
    """Weights of H*_osc: the harmonic weights scaled by sigma(h omega_j)."""
    wp, wq = oscillatory_weights(freq)
    if freq.ell == 0:
        return wp, wq
    per_block = np.concatenate(([0.0], np.atleast_1d(sigma(pair, h * freq.fast_omegas))))
    s = freq.component_values(per_block)
    return wp * s, wq * s


def tilde_weights(scheme: AlphaScheme) -> Weights:
    """Weights of the alpha-family functional

    sum_j sigma(h w~_j) 1/2 ((chi/sinc)^2(h w~_j) |p_j|^2 + w~_j^2 |q_j|^2).
    """
    freq = scheme.freq
    fast = _fast_mask(freq)
    pair, chi = scheme.filters()
    wt = scheme.omega_tilde
    xi = scheme.h * wt
    s = np.asarray(sigma(pair, xi))
    ratio = np.asarray(chi.chi(xi)) / np.asarray(sinc(xi))
    wp = np.where(fast, freq.component_values(s * ratio * ratio), 0.0)
    wq = np.where(fast, freq.component_values(s * wt * wt), 0.0)
    return wp, wq


def weighted_energy(weights: Weights, q: np.ndarray, p: np.ndarray) -> float:
    wp, wq = weights
    return _sum(0.5 * (wp * p * p + wq * q * q))


def oscillatory_energy(freq: FrequencySystem, state: OscState) -> float:
    """H_osc = sum over fast blocks of 1/2 (|p_j|^2 + omega_j^2 |q_j|^2)."""
    return weighted_energy(oscillatory_weights(freq), state.q.data, state.p.data)


def slow_energy(potential: Potential, state: OscState) -> float:
    """H_slow = 1/2 |p_0|^2 + U(q).

    Raises:
        PotentialDomainError: If q is outside the potential's region
    """
    p0 = state.p.block(0)
    return _sum(0.5 * p0 * p0) + potential.evaluate(state.q)


def total_energy(potential: Potential, freq: FrequencySystem, state: OscState) -> float:
    return slow_energy(potential, state) + oscillatory_energy(freq, state)


def modified_oscillatory_energy(pair: FilterPair, h: float, freq: FrequencySystem, state: OscState) -> float:
    """H*_osc = sum_j sigma(h omega_j) 1/2 (|p_j|^2 + omega_j^2 |q_j|^2).

    Raises:
        DivisionByVanishingPsi: If psi(h omega_j) vanishes
    """
    return weighted_energy(modified_weights(pair, h, freq), state.q.data, state.p.data)


def modified_oscillatory_energy_tilde(scheme: AlphaScheme, state: OscState) -> float:
    """H~*_osc of the alpha-family, p being the alpha-scheme momenta."""
    return weighted_energy(tilde_weights(scheme), state.q.data, state.p.data)


class EnergyMonitor:
    """Computes an EnergyReport at every step and tracks max |deviation| from t0.

    The H_osc_star column is H*_osc for trigonometric runs and H~*_osc for
    alpha-family runs (the functional the respective method nearly conserves).
    """

    def __init__(
        self,
        freq: FrequencySystem,
        potential: Potential,
        star_weights: Optional[Weights] = None,
        tilde: Optional[Weights] = None,
    ):
        self.freq = freq
        self.potential = potential
        self._osc = oscillatory_weights(freq)
        self._star = star_weights if star_weights is not None else self._osc
        self._tilde = tilde
        self._slow = freq.block_slice(0)
        self.initial: Optional[EnergyReport] = None
        self.last_report: Optional[EnergyReport] = None
        self.steps_observed = 0
        self._max_dev: Dict[str, float] = {name: 0.0 for name in ENERGY_FIELDS}

    @classmethod
    def for_trig(cls, pair: FilterPair, h: float, freq: FrequencySystem, potential: Potential) -> "EnergyMonitor":
        return cls(freq, potential, star_weights=modified_weights(pair, h, freq))

    @classmethod
    def for_alpha(cls, scheme: AlphaScheme, potential: Potential) -> "EnergyMonitor":
        weights = tilde_weights(scheme)
        return cls(scheme.freq, potential, star_weights=weights, tilde=weights)

    def report(self, t: float, q: np.ndarray, p: np.ndarray) -> EnergyReport:
        p0 = p[self._slow]
        h_slow = _sum(0.5 * p0 * p0) + float(self.potential.value(q))
        h_osc = weighted_energy(self._osc, q, p)
        h_star = weighted_energy(self._star, q, p)
        h_tilde = h_star if self._tilde is self._star else (
            weighted_energy(self._tilde, q, p) if self._tilde is not None else None
        )
        return EnergyReport(t=t, H=h_slow + h_osc, H_slow=h_slow, H_osc=h_osc,
                            H_osc_star=h_star, H_osc_star_tilde=h_tilde)

    def observe(self, n: int, t: float, q: np.ndarray, p: np.ndarray) -> None:
        current = self.report(t, q, p)
        self.last_report = current
        self.steps_observed += 1
        if self.initial is None:
            self.initial = current
            logger.debug(f"Initial energies: H={current.H:.16e}, H_osc={current.H_osc:.16e}")
            return
        for name in ENERGY_FIELDS:
            dev = abs(getattr(current, name) - getattr(self.initial, name))
            if not dev <= self._max_dev[name]:
                self._max_dev[name] = dev

    def deviations(self, report: EnergyReport) -> Dict[str, float]:
        """Signed deviations of ``report`` from the initial report."""
        if self.initial is None:
            return {name: 0.0 for name in ENERGY_FIELDS}
        return {name: getattr(report, name) - getattr(self.initial, name) for name in ENERGY_FIELDS}

    @property
    def max_deviation(self) -> Dict[str, float]:
        return dict(self._max_dev)


def deviation_series(samples: Sequence[EnergyReport], which: str = "H_osc") -> List[Tuple[float, float]]:
    """(t, value - value at the first sample) for one energy field.

    Raises:
        ValueError: If samples is empty or the field is unknown
    """
    if not samples:
        raise ValueError("deviation_series needs at least one sample")
    names = {f.name for f in fields(EnergyReport)} - {"t"}
    if which not in names:
        raise ValueError(f"Unknown energy field '{which}' (known: {sorted(names)})")
    base = getattr(samples[0], which)
    if base is None:
        raise ValueError(f"Field '{which}' is not populated for these samples")
    return [(s.t, getattr(s, which) - base) for s in samples]
