"""Benchmark problems: one-frequency cubic/quartic, FPU chain, two frequencies, harmonic."""

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Tuple, Union

import numpy as np
from loguru import logger

from ..core.exceptions import ConfigurationError, ValidationError
from ..core.models import BlockVector, FrequencySystem, OscState, ProblemName
from ..core.potential import Potential, zero_potential

ADMISSIBLE_BOUND = 10.0


@dataclass(frozen=True)
class ProblemSpec:
    """Frequencies, potential and initial state of one catalog problem."""
    name: str
    freq: FrequencySystem
    potential: Potential
    initial: OscState
    params: Dict[str, Any] = field(default_factory=dict)

    @property
    def admissible_region(self) -> str:
        return f"|q_i| <= {self.potential.bound:g}"

    @property
    def epsilon(self) -> float:
        return float(self.freq.epsilon)


def _check_omega(omega: float) -> float:
    omega = float(omega)
    if not (omega > 0 and math.isfinite(omega)):
        raise ConfigurationError(f"omega must be positive and finite, got {omega}")
    return omega


def experiment1(omega: float) -> ProblemSpec:
    """Single fast oscillator with U(q) = q^3 + q^4, q(0) = 0.1/omega, p(0) = 1."""
    omega = _check_omega(omega)
    freq = FrequencySystem(block_dims=(0, 1), omegas=(0.0, omega))
    potential = Potential(
        name="cubic_quartic",
        value=lambda q: float(np.sum(q ** 3 + q ** 4)),
        gradient=lambda q: 3.0 * q ** 2 + 4.0 * q ** 3,
        bound=ADMISSIBLE_BOUND,
    )
    initial = OscState(
        t=0.0,
        q=BlockVector.from_blocks([[], [0.1 / omega]]),
        p=BlockVector.from_blocks([[], [1.0]]),
    )
    return ProblemSpec(name=ProblemName.EXP1.value, freq=freq, potential=potential,
                       initial=initial, params={"omega": omega})


def _fpu_potential(m: int) -> Potential:
    def springs(q: np.ndarray) -> np.ndarray:
        x0 = np.concatenate(([0.0], q[:m], [0.0]))
        x1 = np.concatenate(([0.0], q[m:], [0.0]))
        return x0[1:] - x1[1:] - x0[:-1] - x1[:-1]

    def value(q: np.ndarray) -> float:
        a = springs(q)
        return 0.25 * float(np.sum(a ** 4))

    def gradient(q: np.ndarray) -> np.ndarray:
        a3 = springs(q) ** 3
        return np.concatenate((a3[:-1] - a3[1:], -a3[:-1] - a3[1:]))

    return Potential(name=f"fpu_quartic_m{m}", value=value, gradient=gradient, bound=ADMISSIBLE_BOUND)


def fpu(omega: float, m: int = 3) -> ProblemSpec:
    """Fermi-Pasta-Ulam chain of alternating stiff and soft springs.

    Slow block x0 (dimension m), one fast block x1 (dimension m) with
    frequency omega. The quartic soft springs couple neighbours:
    U = 1/4 [(x0_1 - x1_1)^4 + sum_i (x0_{i+1} - x1_{i+1} - x0_i - x1_i)^4 + (x0_m + x1_m)^4].
    Initial data x0_1 = 1, p0_1 = 1, x1_1 = 1/omega, p1_1 = 1, all others 0,
    so that H_osc(0) = 1.
    """
    omega = _check_omega(omega)
    if m < 1:
        raise ConfigurationError(f"Chain length m must be >= 1, got {m}")
    freq = FrequencySystem(block_dims=(m, m), omegas=(0.0, omega))
    x0 = np.zeros(m)
    x1 = np.zeros(m)
    p0 = np.zeros(m)
    p1 = np.zeros(m)
    x0[0], p0[0], x1[0], p1[0] = 1.0, 1.0, 1.0 / omega, 1.0
    initial = OscState(
        t=0.0,
        q=BlockVector.from_blocks([x0, x1]),
        p=BlockVector.from_blocks([p0, p1]),
    )
    return ProblemSpec(name=ProblemName.FPU.value, freq=freq, potential=_fpu_potential(m),
                       initial=initial, params={"omega": omega, "m": m})


def multifreq(omega: float) -> ProblemSpec:
    """Two fast frequencies omega and sqrt(2) omega coupled by U = 0.01 q1 q2."""
    omega = _check_omega(omega)
    eps = 1.0 / omega
    freq = FrequencySystem(block_dims=(1, 1, 1), omegas=(0.0, omega, math.sqrt(2.0) * omega))
    potential = Potential(
        name="bilinear",
        value=lambda q: 0.01 * float(q[1] * q[2]),
        gradient=lambda q: np.array([0.0, 0.01 * q[2], 0.01 * q[1]]),
        bound=ADMISSIBLE_BOUND,
    )
    initial = OscState(
        t=0.0,
        q=BlockVector.from_blocks([[0.0], [0.3 * eps], [0.8 * eps]]),
        p=BlockVector.from_blocks([[0.0], [0.6], [0.7]]),
    )
    return ProblemSpec(name=ProblemName.MULTIFREQ.value, freq=freq, potential=potential,
                       initial=initial, params={"omega": omega})


def harmonic(omega: float) -> ProblemSpec:
    """Free harmonic oscillator (U = 0), q(0) = 1/omega, p(0) = 0."""
    omega = _check_omega(omega)
    freq = FrequencySystem(block_dims=(0, 1), omegas=(0.0, omega))
    potential = zero_potential("zero")
    initial = OscState(
        t=0.0,
        q=BlockVector.from_blocks([[], [1.0 / omega]]),
        p=BlockVector.from_blocks([[], [0.0]]),
    )
    return ProblemSpec(name=ProblemName.HARMONIC.value, freq=freq, potential=potential,
                       initial=initial, params={"omega": omega})


_REGISTRY: Dict[ProblemName, Callable[..., ProblemSpec]] = {
    ProblemName.EXP1: experiment1,
    ProblemName.FPU: fpu,
    ProblemName.MULTIFREQ: multifreq,
    ProblemName.HARMONIC: harmonic,
}


def build_problem(name: Union[str, ProblemName], omega: float, m: int = 3) -> ProblemSpec:
    """Catalog lookup by name; ``m`` only applies to the FPU chain.

    Raises:
        ConfigurationError: If the name is unknown
    """
    try:
        key = ProblemName(name)
    except ValueError as e:
        known = ", ".join(p.value for p in ProblemName)
        raise ConfigurationError(f"Unknown problem '{name}' (known: {known})") from e
    if key is ProblemName.FPU:
        problem = fpu(omega, m)
    else:
        problem = _REGISTRY[key](omega)
    logger.debug(f"Built problem {problem.name} with omegas {problem.freq.omegas}")
    return problem


def perturb_initial(state: OscState, target: Tuple[str, int], delta: float) -> OscState:
    """Add ``delta`` to one flattened initial component, e.g. ('q', 0).

    Raises:
        ValidationError: If the component does not exist or delta is below one ulp of it
    """
    which, index = target
    if which not in ("q", "p"):
        raise ValidationError(f"Perturbation target must be 'q' or 'p', got '{which}'")
    vector = state.q if which == "q" else state.p
    if not 0 <= index < len(vector):
        raise ValidationError(f"Component {which}{index} does not exist (dimension {len(vector)})")
    data = np.array(vector.data)
    base = data[index]
    if delta != 0.0 and abs(delta) < np.spacing(abs(base)):
        raise ValidationError(
            f"Perturbation {delta:g} is below one ulp ({np.spacing(abs(base)):.3g}) of {which}{index}={base:g}"
        )
    data[index] = base + delta
    perturbed = BlockVector(data, vector.dims)
    if which == "q":
        return OscState(state.t, perturbed, state.p)
    return OscState(state.t, state.q, perturbed)
