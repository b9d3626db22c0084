"""Enumeration of integer combination vectors k and their sine values."""

import math
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

import numpy as np
from loguru import logger

from ..core.exceptions import CombinatorialOverflow, ConfigurationError
from ..core.models import FrequencySystem

DEFAULT_POINT_CAP = 10 ** 7

IntVector = Tuple[int, ...]


@dataclass(frozen=True)
class SineCombination:
    """|sin(h k.omega / 2)| for one canonical k."""
    k: IntVector
    value: float
    norm: int


def lattice_point_count(ell: int, radius: int) -> int:
    """Number of k in Z^ell with ||k||_1 <= radius (zero included)."""
    return sum(2 ** i * math.comb(ell, i) * math.comb(radius, i) for i in range(min(ell, radius) + 1))


def is_canonical(k: Sequence[int]) -> bool:
    """First nonzero entry positive."""
    for v in k:
        if v != 0:
            return v > 0
    return False


def _vectors(ell: int, budget: int) -> Iterator[List[int]]:
    if ell == 0:
        yield []
        return
    for first in range(-budget, budget + 1):
        for rest in _vectors(ell - 1, budget - abs(first)):
            yield [first] + rest


def canonical_vectors(ell: int, max_norm: int, cap: int = DEFAULT_POINT_CAP) -> List[IntVector]:
    """All canonical k with 1 <= ||k|| <= max_norm, ordered by (norm, k).

    Raises:
        CombinatorialOverflow: If the lattice-point count exceeds ``cap``
    """
    if ell < 1:
        raise ConfigurationError(f"Need at least one fast frequency, got ell={ell}")
    if max_norm < 1:
        raise ConfigurationError(f"max_norm must be >= 1, got {max_norm}")
    count = lattice_point_count(ell, max_norm)
    if count > cap:
        raise CombinatorialOverflow(
            f"{count} lattice points for ell={ell}, ||k|| <= {max_norm} exceed the cap {cap}"
        )
    found = [tuple(k) for k in _vectors(ell, max_norm) if is_canonical(k)]
    return sorted(found, key=lambda k: (sum(abs(v) for v in k), k))


def k_dot(k: Sequence[int], omegas: Sequence[float]) -> float:
    """k.omega with compensated summation."""
    return math.fsum(int(a) * float(w) for a, w in zip(k, omegas))


def sine_value(k: Sequence[int], omegas: Sequence[float], h: float) -> float:
    return abs(math.sin(0.5 * h * k_dot(k, omegas)))


def sine_combinations(freq: FrequencySystem, h: float, N: int,
                      cap: int = DEFAULT_POINT_CAP) -> List[SineCombination]:
    """|sin(h k.omega / 2)| for every canonical k with 1 <= ||k|| <= N+1.

    Args:
        freq: Frequency system (fast frequencies are used)
        h: Step size
        N: Truncation index (>= 1)
        cap: Maximum number of lattice points

    Returns:
        One SineCombination per canonical k
    """
    if N < 1:
        raise ConfigurationError(f"N must be >= 1, got {N}")
    omegas = freq.fast_omegas.tolist()
    vectors = canonical_vectors(len(omegas), N + 1, cap)
    combos = [
        SineCombination(k=k, value=sine_value(k, omegas, h), norm=sum(abs(v) for v in k))
        for k in vectors
    ]
    logger.debug(f"Enumerated {len(combos)} sine combinations (ell={len(omegas)}, N={N})")
    return combos


def values_array(combinations: Sequence[SineCombination]) -> np.ndarray:
    return np.asarray([c.value for c in combinations], dtype=np.float64)
