"""Coupling potentials U(q) with closed-form gradients."""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .exceptions import PotentialDomainError
from .models import BlockVector

ScalarField = Callable[[np.ndarray], float]
VectorField = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Potential:
    """Smooth potential given as a value/gradient pair on flattened positions.

    ``value`` and ``gradient`` act on the flat array ``BlockVector.data``;
    the nonlinearity of the equations of motion is g = -gradient.
    ``bound`` describes the admissible region |q_i| <= bound.
    """
    name: str
    value: ScalarField
    gradient: VectorField
    bound: float = 10.0

    def check_domain(self, q: np.ndarray) -> None:
        """Raise PotentialDomainError if q left the admissible region."""
        peak = float(np.max(np.abs(q))) if q.size else 0.0
        if not peak <= self.bound:
            raise PotentialDomainError(
                f"Position left the admissible region of '{self.name}': "
                f"max |q| = {peak:.3e} > {self.bound}"
            )

    def force(self, q: np.ndarray) -> np.ndarray:
        """g(q) = -grad U(q) on a flat array, with the domain check."""
        self.check_domain(q)
        return -np.asarray(self.gradient(q), dtype=np.float64)

    def evaluate(self, q: BlockVector) -> float:
        self.check_domain(q.data)
        return float(self.value(q.data))

    def grad(self, q: BlockVector) -> BlockVector:
        self.check_domain(q.data)
        return BlockVector(np.asarray(self.gradient(q.data), dtype=np.float64), q.dims)


def zero_potential(name: str = "zero") -> Potential:
    """U identically zero."""
    return Potential(
        name=name,
        value=lambda q: 0.0,
        gradient=lambda q: np.zeros_like(q),
    )


def gradient_check(potential: Potential, point: BlockVector, step: float) -> float:
    """Max over components of |analytic gradient - central finite difference|.

    Args:
        potential: Potential to check
        point: Evaluation point inside the smooth region
        step: Finite-difference step (> 0)

    Returns:
        Maximum absolute componentwise discrepancy
    """
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    x = np.array(point.data, dtype=np.float64)
    analytic = np.asarray(potential.gradient(x), dtype=np.float64)
    if x.size == 0:
        return 0.0
    numeric = np.empty_like(x)
    for i in range(x.size):
        xp = x.copy()
        xm = x.copy()
        xp[i] += step
        xm[i] -= step
        numeric[i] = (potential.value(xp) - potential.value(xm)) / (2.0 * step)
    return float(np.max(np.abs(analytic - numeric)))
