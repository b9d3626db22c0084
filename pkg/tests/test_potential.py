"""Tests for potentials and the finite-difference gradient check."""

import numpy as np
import pytest

from oscint.core.exceptions import PotentialDomainError
from oscint.core.models import BlockVector
from oscint.core.potential import Potential, gradient_check, zero_potential
from oscint.experiments.catalog import experiment1, fpu, harmonic, multifreq


class TestGradientCheck:
    """Test gradient_check on closed-form potentials."""

    def test_cubic_quartic(self):
        """Test U = q^3 + q^4 at q = 0.001."""
        potential = experiment1(100.0).potential
        point = BlockVector.from_blocks([[], [0.001]])

        assert gradient_check(potential, point, 1e-6) <= 1e-8

    def test_zero_potential(self):
        point = BlockVector.from_blocks([[0.3], [1.5, -2.0]])

        assert gradient_check(zero_potential(), point, 1e-3) == 0.0

    def test_bilinear(self, rng):
        """Test U = 0.01 q1 q2 where central differences are exact up to round-off."""
        potential = multifreq(100.0).potential
        point = BlockVector.from_blocks([[0.0], [rng.uniform(-1, 1)], [rng.uniform(-1, 1)]])

        assert gradient_check(potential, point, 1e-5) <= 1e-10

    def test_nonpositive_step(self):
        with pytest.raises(ValueError):
            gradient_check(zero_potential(), BlockVector.from_blocks([[1.0]]), 0.0)

    @pytest.mark.parametrize("build", [experiment1, fpu, multifreq, harmonic])
    def test_catalog_potentials(self, build, rng):
        """Test every catalog potential at 100 random points."""
        problem = build(50.0)
        dims = problem.freq.block_dims
        for _ in range(100):
            point = BlockVector(rng.uniform(-1.0, 1.0, size=sum(dims)), dims)
            assert gradient_check(problem.potential, point, 1e-5) <= 1e-6


class TestPotential:
    """Test Potential evaluation and domain checks."""

    def test_force_is_negative_gradient(self):
        potential = Potential(name="spring", value=lambda q: 0.5 * float(np.sum(q * q)), gradient=lambda q: q)

        np.testing.assert_array_equal(potential.force(np.array([1.0, -2.0])), [-1.0, 2.0])

    def test_domain_violation(self):
        potential = experiment1(100.0).potential

        with pytest.raises(PotentialDomainError, match="admissible region"):
            potential.force(np.array([11.0]))
        with pytest.raises(PotentialDomainError):
            potential.evaluate(BlockVector.from_blocks([[], [np.nan]]))

    def test_evaluate_and_grad(self):
        potential = experiment1(100.0).potential
        q = BlockVector.from_blocks([[], [0.1]])

        assert potential.evaluate(q) == pytest.approx(0.1 ** 3 + 0.1 ** 4)
        np.testing.assert_allclose(potential.grad(q).data, [3 * 0.01 + 4 * 0.001])
        assert potential.grad(q).dims == (0, 1)
