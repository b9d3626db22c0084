"""Modified frequencies that turn near-resonances into exact resonances."""

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from loguru import logger

from ..core.exceptions import ConfigurationError, IllConditionedBasis
from ..core.models import FrequencySystem
from .combinations import DEFAULT_POINT_CAP, canonical_vectors, k_dot
from .conditions import check_kappa
from .gap import GapResult
from .lattice import ResonanceModule, in_module

SINGULAR_VALUE_FLOOR = 1e-10
RESIDUAL_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ModifiedFrequencies:
    """varpi = omega + theta with h k.varpi / 2 = pi m_k for every basis row k."""
    varpi: np.ndarray
    theta: np.ndarray
    module: ResonanceModule
    multiples: Tuple[int, ...]
    h: float
    gap: Optional[GapResult] = None


def modify_frequencies(freq: FrequencySystem, h: float, module: ResonanceModule,
                       gap: Optional[GapResult] = None) -> ModifiedFrequencies:
    """Minimal-norm theta with k^i.(omega + theta) = 2 pi m_i / h for every basis row.

    m_i is the integer nearest to h (k^i.omega) / (2 pi), the multiple taken
    against pi in the half-angle: h k^i.varpi / 2 = pi m_i, so that
    sin(h k.varpi / 2) vanishes on the whole module.

    Raises:
        IllConditionedBasis: If the basis matrix has a singular value below 1e-10
    """
    omegas = freq.fast_omegas
    if module.ell != omegas.size:
        raise ConfigurationError(f"Module of length {module.ell} does not match ell={omegas.size}")
    if module.is_trivial:
        return ModifiedFrequencies(varpi=omegas.copy(), theta=np.zeros_like(omegas),
                                   module=module, multiples=(), h=h, gap=gap)

    K = module.matrix()
    singular = np.linalg.svd(K, compute_uv=False)
    if singular.min() < SINGULAR_VALUE_FLOOR:
        raise IllConditionedBasis(
            f"Module basis is numerically singular (smallest singular value {singular.min():.3e})"
        )
    products = np.asarray([k_dot(k, omegas) for k in module.basis])
    multiples = tuple(int(round(0.5 * h * x / math.pi)) for x in products)
    rhs = 2.0 * math.pi * np.asarray(multiples, dtype=np.float64) / h - products
    theta, *_ = np.linalg.lstsq(K, rhs, rcond=None)
    logger.info(f"Modified frequencies: |theta|_max = {np.max(np.abs(theta)):.3e}, m = {multiples}")
    return ModifiedFrequencies(varpi=omegas + theta, theta=theta, module=module,
                               multiples=multiples, h=h, gap=gap)


@dataclass
class VerificationReport:
    """Checks of the modified frequencies against the resonance module."""
    member_residual: float
    members_checked: int
    nonmember_margin: float
    nonmember_threshold: float
    gamma_empirical: float
    units_outside: bool
    doubles_outside: bool
    kappa_passed: bool
    nonmember_regime: bool
    unit_regime: bool
    failures: Tuple[str, ...] = field(default_factory=tuple)
    notes: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def residual_ok(self) -> bool:
        return self.member_residual <= RESIDUAL_TOLERANCE

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_modified_frequencies(mf: ModifiedFrequencies, freq: FrequencySystem, h: float, N: int,
                                cap: int = DEFAULT_POINT_CAP) -> VerificationReport:
    """Check the modified frequencies over all canonical k with ||k|| <= N+1.

    Reports the largest |sin(h k.varpi / 2)| on module members, the
    smallest one off the module against 1/2 h^(1-alpha-mu), the empirical
    gamma = max|theta_j| h^(alpha-mu), and whether the unit vectors and
    their doubles lie outside the module. Guarantees that follow from the
    empirical gamma only for small h are enforced only in that regime:
    gamma (N+1) h^(2 mu) <= 1 for the off-module bound and
    gamma h^(1/2-alpha+mu) < 1 for the unit vectors.
    """
    omegas = freq.fast_omegas
    ell = omegas.size
    gap = mf.gap
    alpha = gap.alpha_gap if gap else 0.0
    mu = gap.mu if gap else 0.0

    residual, members = 0.0, 0
    margin = math.inf
    for k in canonical_vectors(ell, N + 1, cap):
        value = abs(math.sin(0.5 * h * k_dot(k, mf.varpi)))
        if in_module(k, mf.module):
            members += 1
            residual = max(residual, value)
        else:
            margin = min(margin, value)

    threshold = 0.5 * h ** (1.0 - alpha - mu) if gap else 0.0
    gamma = float(np.max(np.abs(mf.theta))) * h ** (alpha - mu) if ell else 0.0
    units = [tuple(1 if i == j else 0 for i in range(ell)) for j in range(ell)]
    units_outside = not any(in_module(u, mf.module) for u in units)
    doubles_outside = not any(in_module(tuple(2 * v for v in u), mf.module) for u in units)
    kappa = check_kappa(freq, h)

    nonmember_regime = gamma * (N + 1) * h ** (2.0 * mu) <= 1.0
    unit_regime = gamma * h ** (0.5 - alpha + mu) < 1.0

    failures = []
    if residual > RESIDUAL_TOLERANCE:
        failures.append(f"module residual {residual:.3e} > {RESIDUAL_TOLERANCE:g}")
    if gap and nonmember_regime and margin < threshold:
        failures.append(f"off-module margin {margin:.3e} < {threshold:.3e}")
    if kappa.passed and unit_regime and not (units_outside and doubles_outside):
        failures.append("unit vector or its double lies in the module")

    notes = []
    if gap and not nonmember_regime:
        notes.append("off-module margin not enforced (outside regime)")
    if kappa.passed and not unit_regime:
        notes.append("unit exclusion not enforced (outside regime)")
        if not (units_outside and doubles_outside):
            notes.append("unit vector or its double lies in the module")

    report = VerificationReport(
        member_residual=residual,
        members_checked=members,
        nonmember_margin=margin,
        nonmember_threshold=threshold,
        gamma_empirical=gamma,
        units_outside=units_outside,
        doubles_outside=doubles_outside,
        kappa_passed=kappa.passed,
        nonmember_regime=nonmember_regime,
        unit_regime=unit_regime,
        failures=tuple(failures),
        notes=tuple(notes),
    )
    if failures:
        logger.warning(f"Modified-frequency verification failed: {'; '.join(failures)}")
    for note in notes:
        logger.info(f"Modified-frequency verification: {note}")
    return report
