"""Windowed single-frequency amplitude probes of computed trajectories."""

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..core.exceptions import WindowTooShort
from ..core.models import OscState
from ..methods.integrators import Stepper, integrate

MIN_PERIODS = 20
MIN_SAMPLES = 8

Window = Tuple[float, float]


@dataclass(frozen=True)
class SpectralPeak:
    """Amplitude of component ``component`` at the frequency k.varpi."""
    k: Tuple[int, ...]
    target_freq: float
    amplitude: float
    component: int


def alias_frequency(freq: float, h: float) -> float:
    """Principal alias of ``freq`` in (-pi/h, pi/h]."""
    period = 2.0 * math.pi / h
    r = math.fmod(freq + math.pi / h, period)
    if r < 0:
        r += period
    r -= math.pi / h
    if r <= -math.pi / h:
        r += period
    return r


def hann_weights(n: int) -> np.ndarray:
    if n < 2:
        return np.ones(n)
    return 0.5 * (1.0 - np.cos(2.0 * np.pi * np.arange(n) / (n - 1)))


def _select_window(times: np.ndarray, values: np.ndarray, window: Optional[Window]) -> Tuple[np.ndarray, np.ndarray]:
    times = np.asarray(times, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    if times.shape != values.shape:
        raise ValueError(f"times and values differ in shape: {times.shape} vs {values.shape}")
    if window is not None:
        t0, t1 = window
        keep = (times >= t0 - 1e-12 * max(1.0, abs(t0))) & (times <= t1 + 1e-12 * max(1.0, abs(t1)))
        times, values = times[keep], values[keep]
    if times.size < MIN_SAMPLES:
        raise WindowTooShort(f"Window holds {times.size} samples, need at least {MIN_SAMPLES}")
    steps = np.diff(times)
    if np.max(steps) - np.min(steps) > 1e-6 * np.mean(steps):
        raise ValueError("Samples must be uniformly spaced in time")
    return times, values


def amplitude_at(
    times: Sequence[float],
    values: Sequence[float],
    frequency: float,
    window: Optional[Window] = None,
    min_periods: int = MIN_PERIODS,
) -> float:
    """Hann-windowed amplitude of ``values`` at ``frequency``.

    2/W |sum_n w_n x_n exp(-i nu t_n)| with W = sum w_n; the factor 2 is
    dropped for nu = 0 so that a constant signal returns its level.

    Args:
        times: Uniformly spaced sample times
        values: Real samples
        frequency: Target angular frequency nu
        window: Optional (t0, t1) restricting the samples
        min_periods: Periods of nu the window must cover when nu != 0

    Returns:
        Nonnegative amplitude estimate

    Raises:
        WindowTooShort: If the window has too few samples or periods
    """
    t, x = _select_window(np.asarray(times), np.asarray(values), window)
    span = t[-1] - t[0]
    if frequency != 0.0 and span * abs(frequency) < 2.0 * math.pi * min_periods:
        raise WindowTooShort(
            f"Window of length {span:.4g} covers {span * abs(frequency) / (2 * math.pi):.1f} "
            f"periods of frequency {frequency:.6g}, need {min_periods}"
        )
    w = hann_weights(t.size)
    total = float(np.sum(w))
    corr = np.sum(w * x * np.exp(-1j * frequency * (t - t[0])))
    factor = 1.0 if frequency == 0.0 else 2.0
    return factor * abs(corr) / total


def windowed_power(times: Sequence[float], values: Sequence[float], window: Optional[Window] = None) -> float:
    """Hann-weighted mean square of the signal over the window."""
    t, x = _select_window(np.asarray(times), np.asarray(values), window)
    w = hann_weights(t.size)
    return float(np.sum(w * x * x) / np.sum(w))


def probe_peaks(
    times: Sequence[float],
    series: np.ndarray,
    labels: Sequence[Tuple[int, ...]],
    varpi: Sequence[float],
    h: float,
    components: Optional[Sequence[int]] = None,
    window: Optional[Window] = None,
) -> List[SpectralPeak]:
    """Amplitudes at k.varpi for every label k and every requested component.

    ``series`` has one column per flattened component. Labels whose
    frequency the window cannot resolve are skipped.
    """
    data = np.asarray(series, dtype=np.float64)
    if data.ndim == 1:
        data = data[:, None]
    cols = range(data.shape[1]) if components is None else components
    w = np.asarray(varpi, dtype=np.float64)
    peaks: List[SpectralPeak] = []
    for k in labels:
        nu = float(np.dot(np.asarray(k, dtype=np.float64), w))
        for c in cols:
            try:
                amp = amplitude_at(times, data[:, c], nu, window)
            except WindowTooShort as e:
                logger.debug(f"Skipping k={tuple(k)} component {c}: {e}")
                continue
            peaks.append(SpectralPeak(k=tuple(int(v) for v in k), target_freq=alias_frequency(nu, h),
                                      amplitude=amp, component=int(c)))
    logger.info(f"Probed {len(peaks)} spectral peaks")
    return peaks


def fit_scaling_exponent(omegas: Sequence[float], amplitudes: Sequence[float]) -> float:
    """Least-squares slope of log(amplitude) against log(omega).

    Raises:
        ValueError: If fewer than three distinct omegas or a nonpositive amplitude
    """
    w = np.asarray(omegas, dtype=np.float64)
    a = np.asarray(amplitudes, dtype=np.float64)
    if w.shape != a.shape:
        raise ValueError("omegas and amplitudes must have the same length")
    if np.unique(w).size < 3:
        raise ValueError("At least three distinct omega values are needed")
    if np.any(a <= 0) or np.any(w <= 0):
        raise ValueError("omegas and amplitudes must be positive")
    slope, _ = np.polyfit(np.log(w), np.log(a), 1)
    return float(slope)


def sample_trajectory(stepper: Stepper, state0: OscState, n_steps: int,
                      stride: int = 1) -> Tuple[np.ndarray, np.ndarray]:
    """Times and flattened positions at every ``stride``-th step."""
    times: List[float] = []
    rows: List[np.ndarray] = []

    def sampler(n: int, state: OscState) -> None:
        times.append(state.t)
        rows.append(np.array(state.q.data))

    integrate(stepper, state0, n_steps, sampler=sampler, stride=stride)
    return np.asarray(times), np.vstack(rows)


def amplitude_scaling(
    omegas: Sequence[float],
    run: Callable[[float], Tuple[np.ndarray, np.ndarray]],
    target: Callable[[float], float],
    window: Callable[[float], Optional[Window]] = lambda omega: None,
) -> Tuple[float, List[float]]:
    """Fit the omega-scaling exponent of one spectral amplitude.

    Args:
        omegas: At least three distinct frequencies (same h*omega for all runs)
        run: omega -> (times, signal) of the observed component
        target: omega -> probed frequency (e.g. k.varpi)
        window: omega -> analysis window

    Returns:
        (fitted slope, amplitudes in the order of omegas)
    """
    amplitudes = []
    for omega in omegas:
        times, signal = run(omega)
        amp = amplitude_at(times, signal, target(omega), window(omega))
        logger.info(f"omega={omega:g}: amplitude {amp:.6e}")
        amplitudes.append(amp)
    return fit_scaling_exponent(omegas, amplitudes), amplitudes
