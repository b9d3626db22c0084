"""Gap detection among the sine values and the near-resonant set."""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from loguru import logger

from ..core.exceptions import ConfigurationError, GapNotFound
from .combinations import IntVector, SineCombination


@dataclass(frozen=True)
class GapResult:
    """Empty window [h^(1-alpha+mu), h^(1-alpha-mu)] among the sine values."""
    alpha_gap: float
    mu: float
    window: Tuple[float, float]
    delta: float
    candidates: int

    @property
    def lower(self) -> float:
        return self.window[0]

    @property
    def upper(self) -> float:
        return self.window[1]

    def contains(self, value: float) -> bool:
        return self.window[0] <= value <= self.window[1]


def candidate_count(combinations: Sequence[SineCombination], N: int, ell: int) -> int:
    """Number M of values the pigeonhole argument has to accommodate.

    Adjacent candidate windows share an endpoint, so one value can block
    two of them; M is at least twice the number of distinct values.
    """
    distinct = len({c.value for c in combinations})
    return max(ell ** (N + 1), 2 * distinct)


def detect_gap(
    combinations: Sequence[SineCombination],
    h: float,
    delta: float,
    N: int,
    ell: int,
) -> GapResult:
    """Find alpha in [delta/2, delta] whose window holds no sine value.

    Candidates are alpha_i = delta/2 + (2i+1) mu, i = 0..M, with
    mu = delta / (4 (M+1)). The empty window with the largest alpha_i wins.

    Raises:
        ConfigurationError: If delta is outside (0, 1/4]
        GapNotFound: If h is outside (0, 1) or every window is occupied
    """
    if not 0.0 < delta <= 0.25:
        raise ConfigurationError(f"delta must lie in (0, 1/4], got {delta}")
    if not 0.0 < h < 1.0:
        raise GapNotFound(f"Gap detection needs 0 < h < 1, got h={h}")

    M = candidate_count(combinations, N, ell)
    mu = delta / (4.0 * (M + 1))
    values = [c.value for c in combinations]
    for i in range(M, -1, -1):
        alpha = delta / 2.0 + (2 * i + 1) * mu
        lower = h ** (1.0 - alpha + mu)
        upper = h ** (1.0 - alpha - mu)
        if not any(lower <= v <= upper for v in values):
            logger.debug(f"Gap found at alpha={alpha:.6g} (candidate {i} of {M})")
            return GapResult(alpha_gap=alpha, mu=mu, window=(lower, upper), delta=delta, candidates=M)
    raise GapNotFound(f"All {M + 1} candidate windows are occupied (h={h}, delta={delta})")


def near_resonant_set(combinations: Sequence[SineCombination], h: float, gap: GapResult) -> List[IntVector]:
    """k with |sin(h k.omega / 2)| <= h^(1-alpha+mu), i.e. below the gap."""
    return [c.k for c in combinations if c.value <= gap.lower]
