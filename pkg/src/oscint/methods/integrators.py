"""Trigonometric and alpha-family two-step integrators and the driver loop."""

import math
from dataclasses import dataclass
from typing import Callable, Optional, Protocol, Tuple, Union, runtime_checkable

import numpy as np
from loguru import logger

from ..core.exceptions import (
    ConfigurationError, FrequencyOutOfDomain, NumericalError, ResonantStepSize
)
from ..core.models import BlockVector, FrequencySystem, OscState
from ..core.potential import Potential
from .filters import ChiFilter, FilterPair, alpha_filters, sinc

RESONANT_SIN_FLOOR = 1e-12

Sampler = Callable[[int, OscState], None]


@dataclass(frozen=True)
class StepPair:
    """Two consecutive positions (q_{n-1}, q_n) at step n, time t = n*h."""
    q_prev: BlockVector
    q_curr: BlockVector
    n: int
    t: float

    def __post_init__(self) -> None:
        if self.q_prev.dims != self.q_curr.dims:
            raise ConfigurationError(
                f"StepPair block dimensions differ: {self.q_prev.dims} vs {self.q_curr.dims}"
            )


@runtime_checkable
class StepObserver(Protocol):
    """Receives every step of a run as flat arrays."""

    def observe(self, n: int, t: float, q: np.ndarray, p: np.ndarray) -> None:
        ...


@runtime_checkable
class Stepper(Protocol):
    """Two-step integrator driven by :func:`integrate`.

    The ``*_array`` methods are the flat-array fast path used by the
    driver loop; the BlockVector methods wrap them.
    """
    h: float
    freq: FrequencySystem
    potential: Potential

    def start_array(self, q0: np.ndarray, p0: np.ndarray) -> np.ndarray:
        ...

    def advance_array(self, q_prev: np.ndarray, q_curr: np.ndarray) -> np.ndarray:
        ...

    def momentum_array(self, q_prev: np.ndarray, q_next: np.ndarray) -> np.ndarray:
        ...


def _check_step_size(h: float) -> float:
    h = float(h)
    if not (h > 0.0 and math.isfinite(h)):
        raise ConfigurationError(f"Step size must be positive and finite, got {h}")
    return h


def _check_conforms(freq: FrequencySystem, *vectors: BlockVector) -> None:
    for v in vectors:
        if not v.conforms(freq):
            raise ConfigurationError(
                f"Vector with blocks {v.dims} does not conform to {tuple(freq.block_dims)}"
            )


class TrigIntegrator:
    """Trigonometric integrator in two-step form.

    q_{n+1} - 2 cos(hW) q_n + q_{n-1} = h^2 Psi g(Phi q_n)
    2h S p_n = q_{n+1} - q_{n-1}

    with S = sinc(hW), or S = chi(hW) when a momentum filter is given
    (the modified trigonometric integrator, W then being the modified
    frequencies). Filter values are cached per component at construction.
    """

    def __init__(
        self,
        pair: FilterPair,
        h: float,
        freq: FrequencySystem,
        potential: Potential,
        chi: Optional[ChiFilter] = None,
    ):
        self.pair = pair
        self.h = _check_step_size(h)
        self.freq = freq
        self.potential = potential
        self.chi = chi

        xi = self.h * freq.component_omegas()
        self._cos = np.cos(xi)
        self._sin = np.sin(xi)
        self._sinc = np.asarray(sinc(xi), dtype=np.float64)
        self._psi = np.asarray(pair.psi(xi), dtype=np.float64)
        self._phi = np.asarray(pair.phi(xi), dtype=np.float64)
        if chi is None:
            self._weight = self._sinc
        else:
            self._weight = np.asarray(chi.chi(xi), dtype=np.float64)

        fast = freq.component_blocks() > 0
        self._resonant = bool(np.any(np.abs(self._sin[fast]) < RESONANT_SIN_FLOOR))
        if self._resonant:
            logger.warning(
                f"|sin(h*omega_j)| < {RESONANT_SIN_FLOOR:g} at h={self.h:g}: "
                "momenta cannot be recovered"
            )
        logger.debug(f"TrigIntegrator ready: filter={pair.name}, h={self.h:g}, omegas={freq.omegas}")

    def cached(self) -> dict:
        """Cached per-component scalars (cos, sinc, psi, phi)."""
        return {"cos": self._cos.copy(), "sinc": self._sinc.copy(),
                "psi": self._psi.copy(), "phi": self._phi.copy()}

    # Flat-array fast path

    def start_array(self, q0: np.ndarray, p0: np.ndarray) -> np.ndarray:
        h = self.h
        g = self.potential.force(self._phi * q0)
        return self._cos * q0 + h * self._weight * p0 + 0.5 * h * h * self._psi * g

    def advance_array(self, q_prev: np.ndarray, q_curr: np.ndarray) -> np.ndarray:
        h = self.h
        g = self.potential.force(self._phi * q_curr)
        return 2.0 * self._cos * q_curr - q_prev + h * h * self._psi * g

    def momentum_array(self, q_prev: np.ndarray, q_next: np.ndarray) -> np.ndarray:
        if self._resonant:
            raise ResonantStepSize(
                f"|sin(h*omega_j)| < {RESONANT_SIN_FLOOR:g} for h={self.h:g}; "
                "momentum is not recoverable at this step size"
            )
        return (q_next - q_prev) / (2.0 * self.h * self._weight)

    # BlockVector interface

    def start_step(self, q0: BlockVector, p0: BlockVector) -> BlockVector:
        """q1 = cos(hW) q0 + h S p0 + h^2/2 Psi g(Phi q0)."""
        _check_conforms(self.freq, q0, p0)
        return BlockVector(self.start_array(q0.data, p0.data), q0.dims)

    def advance(self, s: StepPair) -> BlockVector:
        """q_{n+1} from (q_{n-1}, q_n)."""
        _check_conforms(self.freq, s.q_prev, s.q_curr)
        return BlockVector(self.advance_array(s.q_prev.data, s.q_curr.data), s.q_curr.dims)

    def recover_momentum(self, q_prev: BlockVector, q_next: BlockVector) -> BlockVector:
        """p_n = (q_{n+1} - q_{n-1}) / (2h S).

        Raises:
            ResonantStepSize: If |sin(h*omega_j)| < 1e-12 for some fast block
        """
        _check_conforms(self.freq, q_prev, q_next)
        return BlockVector(self.momentum_array(q_prev.data, q_next.data), q_prev.dims)


def modified_frequency(alpha_method: float, h: float, omega: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """Frequency w~ with sin(h w~/2) = (h w/2) / sqrt(1 + alpha h^2 w^2).

    Args:
        alpha_method: Method parameter alpha >= 0
        h: Step size
        omega: Frequency or array of frequencies

    Returns:
        w~ with h*w~ in [0, pi]

    Raises:
        FrequencyOutOfDomain: If alpha < 1/4 and h*omega >= 2/sqrt(1 - 4 alpha)
    """
    if alpha_method < 0:
        raise ConfigurationError(f"alpha must be nonnegative, got {alpha_method}")
    h = _check_step_size(h)
    x = h * np.asarray(omega, dtype=np.float64)
    if alpha_method < 0.25:
        limit = 2.0 / math.sqrt(1.0 - 4.0 * alpha_method)
        if np.any(x >= limit):
            raise FrequencyOutOfDomain(
                f"h*omega={np.max(x):.6g} outside the stability domain h*omega < {limit:.6g} "
                f"of alpha={alpha_method:g}"
            )
    s = 0.5 * x / np.sqrt(1.0 + alpha_method * x * x)
    omega_tilde = 2.0 * np.arcsin(np.minimum(s, 1.0)) / h
    return float(omega_tilde) if np.ndim(omega) == 0 else omega_tilde


def alpha_step_restriction(alpha_method: float, h: float, freq: FrequencySystem) -> float:
    """max_j h*omega_j*sqrt(1 - 4 alpha)/2; the scheme is defined iff this is < 1.

    Unconditionally 0 for alpha >= 1/4.
    """
    if alpha_method >= 0.25 or freq.ell == 0:
        return 0.0
    return float(np.max(h * freq.fast_omegas) * math.sqrt(1.0 - 4.0 * alpha_method) / 2.0)


@dataclass(frozen=True)
class AlphaScheme:
    """alpha-family parameters: alpha = 0 is Stormer-Verlet, alpha = 1/4 the IMEX scheme."""
    alpha_method: float
    h: float
    freq: FrequencySystem

    def __post_init__(self) -> None:
        if self.alpha_method < 0:
            raise ConfigurationError(f"alpha must be nonnegative, got {self.alpha_method}")
        _check_step_size(self.h)
        theta = alpha_step_restriction(self.alpha_method, self.h, self.freq)
        if theta >= 1.0:
            raise FrequencyOutOfDomain(
                f"alpha={self.alpha_method:g} requires h*omega_j < 2/sqrt(1-4 alpha); "
                f"restriction ratio is {theta:.6g}"
            )

    @property
    def omega_tilde(self) -> np.ndarray:
        """Modified frequencies per block (block 0 stays 0)."""
        return np.asarray(modified_frequency(self.alpha_method, self.h, np.asarray(self.freq.omegas)))

    @property
    def modified_freq(self) -> FrequencySystem:
        return self.freq.with_omegas(self.omega_tilde)

    def filters(self) -> Tuple[FilterPair, ChiFilter]:
        return alpha_filters(self.alpha_method)

    def momentum_factors(self) -> np.ndarray:
        """chi(h w~_j) / sinc(h w~_j) per block."""
        xi = self.h * self.omega_tilde
        _, chi = self.filters()
        return np.asarray(chi.chi(xi)) / np.asarray(sinc(xi))


class AlphaIntegrator:
    """alpha-family scheme

    q_{n+1} - 2q_n + q_{n-1} + h^2 W^2 q_n + alpha h^2 W^2 (q_{n+1} - 2q_n + q_{n-1}) = h^2 g(q_n)

    solved component-wise since W is diagonal.
    """

    def __init__(self, scheme: AlphaScheme, potential: Potential):
        self.scheme = scheme
        self.h = scheme.h
        self.freq = scheme.freq
        self.potential = potential

        w2 = self.h * self.h * np.square(self.freq.component_omegas())
        self._hw2 = w2
        self._denom = 1.0 + scheme.alpha_method * w2
        logger.debug(f"AlphaIntegrator ready: alpha={scheme.alpha_method:g}, h={self.h:g}")

    @property
    def alpha(self) -> float:
        return self.scheme.alpha_method

    def start_array(self, q0: np.ndarray, p0: np.ndarray) -> np.ndarray:
        h = self.h
        g = self.potential.force(q0)
        return q0 + (2.0 * h * p0 - self._hw2 * q0 + h * h * g) / (2.0 * self._denom)

    def advance_array(self, q_prev: np.ndarray, q_curr: np.ndarray) -> np.ndarray:
        h = self.h
        g = self.potential.force(q_curr)
        return 2.0 * q_curr - q_prev + (h * h * g - self._hw2 * q_curr) / self._denom

    def momentum_array(self, q_prev: np.ndarray, q_next: np.ndarray) -> np.ndarray:
        return self._denom * (q_next - q_prev) / (2.0 * self.h)

    def start_step(self, q0: BlockVector, p0: BlockVector) -> BlockVector:
        """q1 = q0 + (2h p0 - h^2 W^2 q0 + h^2 g(q0)) / (2 (1 + alpha h^2 W^2))."""
        _check_conforms(self.freq, q0, p0)
        return BlockVector(self.start_array(q0.data, p0.data), q0.dims)

    def advance(self, s: StepPair) -> BlockVector:
        _check_conforms(self.freq, s.q_prev, s.q_curr)
        return BlockVector(self.advance_array(s.q_prev.data, s.q_curr.data), s.q_curr.dims)

    def recover_momentum(self, q_prev: BlockVector, q_next: BlockVector) -> BlockVector:
        _check_conforms(self.freq, q_prev, q_next)
        return BlockVector(self.momentum_array(q_prev.data, q_next.data), q_prev.dims)

    def alpha_step(self, s: StepPair) -> Tuple[BlockVector, BlockVector]:
        """One step: returns (q_{n+1}, p_n) with p_n = (1 + alpha h^2 W^2)(q_{n+1} - q_{n-1})/(2h)."""
        q_next = self.advance(s)
        return q_next, self.recover_momentum(s.q_prev, q_next)

    def as_modified_trig(self) -> TrigIntegrator:
        """The same scheme as a modified trigonometric integrator (momenta identical)."""
        pair, chi = self.scheme.filters()
        return TrigIntegrator(pair, self.h, self.scheme.modified_freq, self.potential, chi=chi)


def alpha_as_trig(scheme: AlphaScheme, potential: Potential) -> Tuple[TrigIntegrator, np.ndarray]:
    """Trigonometric integrator over w~ with psi = 1 - 4 alpha sin^2(xi/2), phi = 1.

    Its positions coincide with the alpha-scheme positions; its momenta
    p~ relate to the alpha-scheme momenta p by p~ = (chi/sinc)(h w~_j) p,
    the returned per-block factors.

    Raises:
        FrequencyOutOfDomain: If the scheme's step size is outside the domain
    """
    pair, _ = scheme.filters()
    integ = TrigIntegrator(pair, scheme.h, scheme.modified_freq, potential)
    return integ, scheme.momentum_factors()


def integrate(
    stepper: Stepper,
    state0: OscState,
    n_steps: int,
    sampler: Optional[Sampler] = None,
    stride: int = 1,
    monitor: Optional[StepObserver] = None,
) -> OscState:
    """Run ``n_steps`` steps from ``state0`` and return the state at step n_steps.

    Performs one start step and then n_steps advances; the last advance is
    the lookahead that recovers the final momentum. ``monitor`` sees every
    step, ``sampler`` every ``stride``-th step (including step 0). Step 0
    uses the initial momentum as given. Time at step n is t0 + n*h.

    Args:
        stepper: TrigIntegrator or AlphaIntegrator
        state0: Initial state conforming to the stepper's frequency system
        n_steps: Number of steps (>= 1)
        sampler: Callback (n, state) at sampled steps
        stride: Sampling stride (>= 1)
        monitor: Observer called at every step with flat arrays

    Returns:
        The state at step n_steps

    Raises:
        NumericalError: Step failures, with the failing step index attached
    """
    if n_steps < 1:
        raise ConfigurationError(f"n_steps must be >= 1, got {n_steps}")
    if stride < 1:
        raise ConfigurationError(f"stride must be >= 1, got {stride}")
    if not state0.conforms(stepper.freq):
        raise ConfigurationError("Initial state does not conform to the frequency system")

    h = stepper.h
    t0 = state0.t
    dims = state0.q.dims

    def emit(n: int, q: np.ndarray, p: np.ndarray) -> None:
        t = t0 + n * h
        if monitor is not None:
            monitor.observe(n, t, q, p)
        if sampler is not None and n % stride == 0:
            sampler(n, OscState(t, BlockVector(q, dims), BlockVector(p, dims)))

    q_prev = np.array(state0.q.data)
    p_last = np.array(state0.p.data)
    emit(0, q_prev, p_last)

    step = 1
    try:
        q_curr = stepper.start_array(q_prev, p_last)
        for n in range(1, n_steps + 1):
            step = n + 1
            q_next = stepper.advance_array(q_prev, q_curr)
            if monitor is not None or n % stride == 0 or n == n_steps:
                step = n
                p_last = stepper.momentum_array(q_prev, q_next)
                emit(n, q_curr, p_last)
            q_prev, q_curr = q_curr, q_next
    except NumericalError as e:
        raise e.at_step(step)

    return OscState(t0 + n_steps * h, BlockVector(q_prev, dims), BlockVector(p_last, dims))
