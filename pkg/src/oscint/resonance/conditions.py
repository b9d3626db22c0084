"""Non-resonance conditions on the step size."""

import math
from typing import NamedTuple

import numpy as np

from ..core.models import FrequencySystem
from .combinations import DEFAULT_POINT_CAP, canonical_vectors, k_dot

EXACT_RESONANCE_RTOL = 1e-12


class ConditionCheck(NamedTuple):
    """Margin of a condition and whether it is at least sqrt(h)."""
    value: float
    passed: bool


def check_kappa(freq: FrequencySystem, h: float) -> ConditionCheck:
    """kappa = min_j |sin(h omega_j)|; passes iff kappa >= sqrt(h)."""
    if freq.ell == 0:
        return ConditionCheck(1.0, True)
    kappa = float(np.min(np.abs(np.sin(h * freq.fast_omegas))))
    return ConditionCheck(kappa, kappa >= math.sqrt(h))


def distance_to_nonzero_multiple(x: float) -> float:
    """min over integers r != 0 of |x - 2 pi r|."""
    r = round(x / (2.0 * math.pi))
    if r == 0:
        return 2.0 * math.pi - abs(x)
    return abs(x - 2.0 * math.pi * r)


def check_numerical_nonresonance(freq: FrequencySystem, h: float, N: int,
                                 cap: int = DEFAULT_POINT_CAP) -> ConditionCheck:
    """min over ||k|| <= N+1 of the distance of h k.omega to 2 pi (Z minus 0).

    r = 0 is excluded, so combinations with k.omega = 0 do not fail.

    Raises:
        CombinatorialOverflow: If enumeration exceeds ``cap``
    """
    omegas = freq.fast_omegas.tolist()
    margin = min(
        (distance_to_nonzero_multiple(h * k_dot(k, omegas)) for k in canonical_vectors(len(omegas), N + 1, cap)),
        default=math.inf,
    )
    return ConditionCheck(margin, margin >= math.sqrt(h))


def check_strong_nonresonance(freq: FrequencySystem, h: float, N: int,
                              cap: int = DEFAULT_POINT_CAP) -> ConditionCheck:
    """min |sin(h k.omega / 2)| over ||k|| <= N+1 with k.omega != 0; passes iff >= sqrt(h).

    Stricter than :func:`check_numerical_nonresonance`: near-zero k.omega
    (r = 0) counts as a resonance here.
    """
    omegas = freq.fast_omegas.tolist()
    scale = max(omegas) if omegas else 1.0
    margin = math.inf
    for k in canonical_vectors(len(omegas), N + 1, cap):
        x = k_dot(k, omegas)
        if abs(x) <= EXACT_RESONANCE_RTOL * sum(abs(v) for v in k) * scale:
            continue
        margin = min(margin, abs(math.sin(0.5 * h * x)))
    return ConditionCheck(margin, margin >= math.sqrt(h))
