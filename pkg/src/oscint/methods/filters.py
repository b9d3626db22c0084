"""Filter functions psi, phi, chi and the derived function sigma."""

from dataclasses import dataclass
from typing import Callable, Dict, Tuple, Union

import numpy as np
from loguru import logger

from ..core.exceptions import ConfigurationError, DivisionByVanishingPsi
from ..core.models import FilterName, FrequencySystem

ArrayLike = Union[float, np.ndarray]
FilterFunction = Callable[[ArrayLike], ArrayLike]

SINC_SERIES_THRESHOLD = 1e-4
PSI_FLOOR = 1e-14


def _scalar_or_array(values: np.ndarray, like: ArrayLike) -> ArrayLike:
    return float(values) if np.ndim(like) == 0 else values


def sinc(xi: ArrayLike) -> ArrayLike:
    """sin(xi)/xi with a Taylor branch for |xi| < 1e-4 (even in xi)."""
    x = np.asarray(xi, dtype=np.float64)
    small = np.abs(x) < SINC_SERIES_THRESHOLD
    safe = np.where(small, 1.0, x)
    x2 = x * x
    values = np.where(small, 1.0 - x2 / 6.0 + x2 * x2 / 120.0, np.sin(safe) / safe)
    return _scalar_or_array(values, xi)


def _one(xi: ArrayLike) -> ArrayLike:
    return _scalar_or_array(np.ones_like(np.asarray(xi, dtype=np.float64)), xi)


def _sinc_squared_half(xi: ArrayLike) -> ArrayLike:
    return _scalar_or_array(np.asarray(sinc(np.asarray(xi, dtype=np.float64) / 2.0)) ** 2, xi)


@dataclass(frozen=True)
class FilterPair:
    """Filter functions (psi, phi) of a trigonometric integrator.

    Both must be vectorized over numpy arrays and equal 1 at 0.
    """
    name: str
    psi: FilterFunction
    phi: FilterFunction

    def __post_init__(self) -> None:
        for label, fn in (("psi", self.psi), ("phi", self.phi)):
            at_zero = float(np.asarray(fn(np.zeros(1)))[0])
            if abs(at_zero - 1.0) > 1e-12:
                raise ConfigurationError(f"Filter '{self.name}': {label}(0) = {at_zero}, expected 1")


@dataclass(frozen=True)
class ChiFilter:
    """Momentum filter chi of a modified trigonometric integrator, chi(0) = 1."""
    name: str
    chi: FilterFunction

    def __post_init__(self) -> None:
        at_zero = float(np.asarray(self.chi(np.zeros(1)))[0])
        if abs(at_zero - 1.0) > 1e-12:
            raise ConfigurationError(f"Filter '{self.name}': chi(0) = {at_zero}, expected 1")


@dataclass(frozen=True)
class SignConditionReport:
    """Bounds of sigma(h*omega_j) over the fast blocks."""
    c1: float
    C1: float
    sign: int
    passed: bool


DEUFLHARD = FilterPair(name=FilterName.DEUFLHARD.value, psi=sinc, phi=_one)
GAUTSCHI_A = FilterPair(name=FilterName.GAUTSCHI_A.value, psi=_sinc_squared_half, phi=_one)

_CATALOG: Dict[FilterName, FilterPair] = {
    FilterName.DEUFLHARD: DEUFLHARD,
    FilterName.GAUTSCHI_A: GAUTSCHI_A,
}


def get_filter_pair(name: Union[str, FilterName]) -> FilterPair:
    """Look up a catalog filter pair by name.

    Raises:
        ConfigurationError: If the name is not in the catalog
    """
    try:
        return _CATALOG[FilterName(name)]
    except ValueError as e:
        known = ", ".join(f.value for f in FilterName)
        raise ConfigurationError(f"Unknown filter '{name}' (known: {known})") from e


def sigma(pair: FilterPair, xi: ArrayLike, psi_floor: float = PSI_FLOOR) -> ArrayLike:
    """sigma(xi) = sinc(xi) phi(xi) / psi(xi).

    Raises:
        DivisionByVanishingPsi: If |psi(xi)| < psi_floor anywhere
    """
    x = np.asarray(xi, dtype=np.float64)
    psi = np.asarray(pair.psi(x), dtype=np.float64)
    if np.any(np.abs(psi) < psi_floor):
        bad = x[np.abs(psi) < psi_floor] if x.ndim else x
        raise DivisionByVanishingPsi(
            f"psi of filter '{pair.name}' vanishes at xi={np.atleast_1d(bad).tolist()}"
        )
    values = np.asarray(sinc(x)) * np.asarray(pair.phi(x), dtype=np.float64) / psi
    return _scalar_or_array(values, xi)


def is_symplectic(pair: FilterPair, h: float, freq: FrequencySystem, tol: float = 1e-12) -> bool:
    """psi(h omega_j) == sinc(h omega_j) phi(h omega_j) for every fast block."""
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    xi = h * freq.fast_omegas
    if xi.size == 0:
        return True
    gap = np.abs(np.asarray(pair.psi(xi)) - np.asarray(sinc(xi)) * np.asarray(pair.phi(xi)))
    return bool(np.all(gap <= tol))


def check_filter_sign_condition(pair: FilterPair, h: float, freq: FrequencySystem) -> SignConditionReport:
    """sigma(h omega_j) bounded away from zero with one common sign."""
    xi = h * freq.fast_omegas
    if xi.size == 0:
        return SignConditionReport(c1=1.0, C1=1.0, sign=1, passed=True)
    try:
        values = np.atleast_1d(np.asarray(sigma(pair, xi)))
    except DivisionByVanishingPsi:
        return SignConditionReport(c1=0.0, C1=float("inf"), sign=0, passed=False)
    signs = np.sign(values)
    passed = bool(np.all(np.isfinite(values)) and np.all(signs == signs[0]) and signs[0] != 0)
    return SignConditionReport(
        c1=float(np.min(np.abs(values))),
        C1=float(np.max(np.abs(values))),
        sign=int(signs[0]) if passed else 0,
        passed=passed,
    )


def symplectic_rescaling(pair: FilterPair) -> FilterPair:
    """Rescaled pair psi_hat = sigma^(1/2) psi, phi_hat = sigma^(-1/2) phi.

    Symplectic wherever sigma > 0; NaN where sigma <= 0.
    """
    def psi_hat(xi: ArrayLike) -> ArrayLike:
        with np.errstate(invalid="ignore"):
            root = np.sqrt(np.asarray(sigma(pair, xi)))
        return _scalar_or_array(root * np.asarray(pair.psi(xi)), xi)

    def phi_hat(xi: ArrayLike) -> ArrayLike:
        with np.errstate(invalid="ignore", divide="ignore"):
            root = np.sqrt(np.asarray(sigma(pair, xi)))
        return _scalar_or_array(np.asarray(pair.phi(xi)) / root, xi)

    return FilterPair(name=f"{pair.name}:rescaled", psi=psi_hat, phi=phi_hat)


def alpha_filters(alpha: float) -> Tuple[FilterPair, ChiFilter]:
    """Filters of the alpha-family viewed as a modified trigonometric method.

    phi = 1 and psi = chi = 1 - 4 alpha sin^2(xi/2).
    """
    def psi(xi: ArrayLike) -> ArrayLike:
        x = np.asarray(xi, dtype=np.float64)
        return _scalar_or_array(1.0 - 4.0 * alpha * np.sin(0.5 * x) ** 2, xi)

    label = f"alpha:{alpha:g}"
    return FilterPair(name=label, psi=psi, phi=_one), ChiFilter(name=label, chi=psi)


def scaled_sinc_chi(alpha: float) -> ChiFilter:
    """chi(h w~) = (w~/w) sinc(h w~) written in xi = h w~ alone.

    Inverting sin(xi/2) = (h w/2)/sqrt(1 + alpha h^2 w^2) gives
    chi(xi) = cos(xi/2) sqrt(1 - 4 alpha sin^2(xi/2)).
    """
    def chi(xi: ArrayLike) -> ArrayLike:
        x = np.asarray(xi, dtype=np.float64)
        values = np.cos(0.5 * x) * np.sqrt(1.0 - 4.0 * alpha * np.sin(0.5 * x) ** 2)
        return _scalar_or_array(values, xi)

    logger.debug(f"Built scaled-sinc chi filter for alpha={alpha:g}")
    return ChiFilter(name=f"scaled_sinc:{alpha:g}", chi=chi)


def is_modified_symplectic(pair: FilterPair, chi: ChiFilter, xi_tilde: np.ndarray,
                           tol: float = 1e-12) -> bool:
    """psi(xi) == chi(xi) phi(xi) at every h*omega~_j."""
    xi = np.asarray(xi_tilde, dtype=np.float64)
    if xi.size == 0:
        return True
    gap = np.abs(np.asarray(pair.psi(xi)) - np.asarray(chi.chi(xi)) * np.asarray(pair.phi(xi)))
    return bool(np.all(gap <= tol))
