"""Tests for sine combinations, gap detection, non-resonance conditions and modified frequencies."""

import math

import numpy as np
import pytest

from oscint.core.exceptions import (
    CombinatorialOverflow, ConfigurationError, GapNotFound, IllConditionedBasis
)
from oscint.core.models import FrequencySystem
from oscint.resonance.analysis import analyze_resonance
from oscint.resonance.combinations import (
    SineCombination, canonical_vectors, is_canonical, k_dot, lattice_point_count, sine_combinations,
    values_array
)
from oscint.resonance.conditions import (
    check_kappa, check_numerical_nonresonance, check_strong_nonresonance, distance_to_nonzero_multiple
)
from oscint.resonance.frequencies import modify_frequencies, verify_modified_frequencies
from oscint.resonance.gap import candidate_count, detect_gap, near_resonant_set
from oscint.resonance.lattice import ResonanceModule, module_basis


def _system(*omegas: float) -> FrequencySystem:
    return FrequencySystem(block_dims=(0,) + (1,) * len(omegas), omegas=(0.0,) + tuple(omegas))


class TestCombinations:
    """Test enumeration of canonical combination vectors."""

    @pytest.mark.parametrize("ell,radius,expected", [(1, 3, 7), (2, 1, 5), (2, 2, 13), (3, 1, 7)])
    def test_lattice_point_count(self, ell, radius, expected):
        assert lattice_point_count(ell, radius) == expected

    def test_canonical(self):
        assert is_canonical((0, 2, -1))
        assert not is_canonical((0, -1, 3))
        assert not is_canonical((0, 0))

    def test_canonical_vectors_order(self):
        assert canonical_vectors(2, 1) == [(0, 1), (1, 0)]
        assert canonical_vectors(1, 3) == [(1,), (2,), (3,)]

    @pytest.mark.parametrize("ell,radius", [(1, 4), (2, 3), (3, 4)])
    def test_canonical_vectors_count(self, ell, radius):
        """Test that exactly one of k, -k is listed for every nonzero k."""
        vectors = canonical_vectors(ell, radius)

        assert len(vectors) == (lattice_point_count(ell, radius) - 1) // 2
        assert len(set(vectors)) == len(vectors)
        norms = [sum(abs(v) for v in k) for k in vectors]
        assert norms == sorted(norms)

    def test_point_cap(self):
        with pytest.raises(CombinatorialOverflow):
            canonical_vectors(3, 10, cap=100)

    def test_invalid_arguments(self):
        with pytest.raises(ConfigurationError):
            canonical_vectors(0, 2)
        with pytest.raises(ConfigurationError):
            sine_combinations(_system(100.0), 0.01, 0)

    def test_sine_values(self):
        freq = _system(100.0, 100.0 * math.sqrt(2.0))
        h = 2.0 * math.pi / (100.0 + 100.0 * math.sqrt(2.0))
        combos = sine_combinations(freq, h, 1)

        assert len(combos) == 6
        lookup = {c.k: c.value for c in combos}
        assert lookup[(1, 1)] < 1e-12
        assert lookup[(1, -1)] == pytest.approx(abs(math.sin(0.5 * h * (100.0 - 100.0 * math.sqrt(2.0)))))
        assert values_array(combos).shape == (6,)
        assert k_dot((2, -1), (3.0, 5.0)) == 1.0


class TestGapDetection:
    """Test detect_gap and near_resonant_set."""

    def test_candidate_count(self):
        combos = [SineCombination(k=(1,), value=0.1, norm=1), SineCombination(k=(2,), value=0.1, norm=2)]

        assert candidate_count(combos, 1, 1) == 2
        assert candidate_count(combos, 2, 3) == 27

    def test_adversarial_top_window(self):
        """Test that a value in the top window pushes the gap one candidate down."""
        h, delta = 0.01, 0.25
        mu = delta / 12.0
        alpha_top = delta / 2 + 5 * mu
        combos = [SineCombination(k=(1,), value=h ** (1.0 - alpha_top), norm=1)]

        gap = detect_gap(combos, h, delta, N=1, ell=1)

        assert gap.candidates == 2
        assert gap.mu == pytest.approx(mu)
        assert gap.alpha_gap == pytest.approx(delta / 2 + 3 * mu)
        assert not gap.contains(combos[0].value)

    def test_empty_top_window(self):
        combos = [SineCombination(k=(1,), value=0.9, norm=1)]
        gap = detect_gap(combos, 0.01, 0.25, N=1, ell=1)

        assert gap.alpha_gap == pytest.approx(0.125 + 5 * 0.25 / 12)
        assert gap.lower < gap.upper

    def test_window_bounds(self):
        gap = detect_gap([], 0.05, 0.2, N=1, ell=2)

        assert gap.lower == pytest.approx(0.05 ** (1 - gap.alpha_gap + gap.mu))
        assert gap.upper == pytest.approx(0.05 ** (1 - gap.alpha_gap - gap.mu))
        assert 0.1 <= gap.alpha_gap <= 0.2

    @pytest.mark.parametrize("delta", [0.0, -0.1, 0.3])
    def test_invalid_delta(self, delta):
        with pytest.raises(ConfigurationError):
            detect_gap([], 0.01, delta, N=1, ell=1)

    @pytest.mark.parametrize("h", [0.0, 1.0, 2.5])
    def test_step_size_outside_unit_interval(self, h):
        with pytest.raises(GapNotFound):
            detect_gap([], h, 0.25, N=1, ell=1)

    def test_near_resonant_set(self):
        freq = _system(100.0, 100.0 * math.sqrt(2.0))
        h = 2.0 * math.pi / (100.0 + 100.0 * math.sqrt(2.0))
        combos = sine_combinations(freq, h, 1)
        gap = detect_gap(combos, h, 0.25, N=1, ell=2)

        assert near_resonant_set(combos, h, gap) == [(1, 1)]


class TestConditions:
    """Test kappa and the non-resonance conditions."""

    def test_kappa(self, single_freq):
        assert check_kappa(single_freq, math.pi / 20.0).passed
        result = check_kappa(single_freq, 0.3)
        assert result.value == pytest.approx(math.sin(3.0))
        assert not result.passed

    def test_distance_to_nonzero_multiple(self):
        assert distance_to_nonzero_multiple(0.0) == pytest.approx(2.0 * math.pi)
        assert distance_to_nonzero_multiple(2.0 * math.pi) == pytest.approx(0.0, abs=1e-15)
        assert distance_to_nonzero_multiple(-2.0 * math.pi + 0.1) == pytest.approx(0.1)

    def test_numerical_nonresonance_two_thirds(self):
        freq = _system(100.0)
        h = 2.0 * math.pi / 300.0

        assert check_numerical_nonresonance(freq, h, 1).passed
        assert not check_numerical_nonresonance(freq, h, 2).passed

    def test_numerical_nonresonance_quarter(self):
        freq = _system(100.0)
        h = math.pi / 200.0

        assert check_numerical_nonresonance(freq, h, 2).passed
        assert not check_numerical_nonresonance(freq, h, 3).passed

    def test_equal_frequencies(self):
        """Test that k.omega = 0 is ignored by both conditions."""
        freq = _system(100.0, 100.0)

        assert check_strong_nonresonance(freq, 0.013, 1).passed
        assert check_numerical_nonresonance(freq, 0.013, 1).passed

    def test_strong_condition_is_stricter(self):
        """Test that a tiny nonzero k.omega fails only the strong condition."""
        freq = _system(100.0, 100.001)

        assert not check_strong_nonresonance(freq, 0.013, 1).passed
        assert check_numerical_nonresonance(freq, 0.013, 1).passed


class TestModifiedFrequencies:
    """Test modify_frequencies and its verification."""

    def test_trivial_module(self, two_freq):
        mf = modify_frequencies(two_freq, 0.01, module_basis([], ell=2))

        np.testing.assert_array_equal(mf.theta, [0.0, 0.0])
        np.testing.assert_array_equal(mf.varpi, two_freq.fast_omegas)
        assert mf.multiples == ()

    def test_single_frequency_shift(self):
        """Test h theta = -1e-9 when h omega exceeds 2 pi/3 by 1e-9."""
        freq = _system(100.0)
        h = (2.0 * math.pi / 3.0 + 1e-9) / 100.0

        analysis = analyze_resonance(freq, h, 2)

        assert analysis.near_resonant == [(3,)]
        assert analysis.modified.multiples == (1,)
        assert h * analysis.modified.theta[0] == pytest.approx(-1e-9, abs=1e-12)
        assert analysis.verification.passed

    def test_exact_resonance_needs_no_shift(self):
        freq = _system(100.0, 100.0 * math.sqrt(2.0))
        h = 2.0 * math.pi / (100.0 + 100.0 * math.sqrt(2.0))

        analysis = analyze_resonance(freq, h, 1)

        assert analysis.module.basis == ((1, 1),)
        assert np.max(np.abs(analysis.modified.theta)) <= 1e-9

    def test_minimal_norm_shift(self):
        """Test theta lies in the row space of the basis."""
        freq = _system(100.0, 150.0)
        module = module_basis([(1, 1)])

        mf = modify_frequencies(freq, 0.0251, module)

        assert mf.theta[0] == pytest.approx(mf.theta[1])
        product = 0.5 * 0.0251 * float(np.dot((1, 1), mf.varpi))
        assert product == pytest.approx(math.pi * mf.multiples[0], abs=1e-12)

    @pytest.mark.parametrize("rank", [1, 2])
    def test_minimal_norm_against_alternative_solutions(self, rng, rank):
        """Test that no other exact solution theta' has a smaller norm."""
        checked = 0
        while checked < 10:
            rows = [tuple(int(v) for v in rng.integers(-3, 4, size=3)) for _ in range(rank)]
            module = module_basis(rows, ell=3)
            if module.rank != rank:
                continue
            K = module.matrix()
            freq = _system(*rng.uniform(50.0, 150.0, size=3))
            h = float(rng.uniform(0.01, 0.05))

            mf = modify_frequencies(freq, h, module)

            target = 2.0 * math.pi * np.asarray(mf.multiples, dtype=np.float64) / h
            np.testing.assert_allclose(K @ mf.varpi, target, rtol=1e-12, atol=1e-8)
            null_space = np.linalg.svd(K)[2][rank:]
            norm = np.linalg.norm(mf.theta)
            for _ in range(100):
                alternative = mf.theta + rng.normal(scale=max(norm, 1.0), size=3 - rank) @ null_space
                np.testing.assert_allclose(K @ alternative, K @ mf.theta, atol=1e-9 * max(norm, 1.0))
                assert norm <= np.linalg.norm(alternative) * (1.0 + 1e-12)
            checked += 1

    def test_singular_basis(self, two_freq):
        module = ResonanceModule(basis=((1, 1), (2, 2)), ell=2)

        with pytest.raises(IllConditionedBasis):
            modify_frequencies(two_freq, 0.01, module)

    def test_module_length_mismatch(self, two_freq):
        with pytest.raises(ConfigurationError):
            modify_frequencies(two_freq, 0.01, module_basis([(1,)]))

    def test_verification_fields(self):
        freq = _system(100.0)
        h = (2.0 * math.pi / 3.0 + 1e-9) / 100.0
        analysis = analyze_resonance(freq, h, 2)

        report = verify_modified_frequencies(analysis.modified, freq, h, 2)

        assert report.residual_ok
        assert report.members_checked == 1
        assert report.units_outside and report.doubles_outside
        assert report.nonmember_margin >= report.nonmember_threshold

    def test_unit_exclusion_outside_regime_is_noted(self):
        """Test that a skipped unit-vector check is reported instead of passing silently."""
        freq = _system(100.0, 100.0 * math.sqrt(2.0))
        h = 0.01
        mf = modify_frequencies(freq, h, module_basis([(1, 0)]))

        report = verify_modified_frequencies(mf, freq, h, 1)

        assert report.kappa_passed
        assert not report.unit_regime
        assert not report.units_outside
        assert report.passed
        assert "unit exclusion not enforced (outside regime)" in report.notes
        assert "unit vector or its double lies in the module" in report.notes


class TestResonanceAnalysis:
    """Test the full resonance pipeline."""

    def test_rows(self):
        freq = _system(100.0, 100.0 * math.sqrt(2.0))
        h = 2.0 * math.pi / (100.0 + 100.0 * math.sqrt(2.0))
        analysis = analyze_resonance(freq, h, 1)

        rows = analysis.rows()

        assert len(rows) == 6
        flagged = [row["k"] for row in rows if row["near_resonant"]]
        assert flagged == [(1, 1)]
        assert all(row["in_module"] == (row["k"] == (1, 1)) for row in rows)

    def test_requires_fast_frequency(self):
        freq = FrequencySystem(block_dims=(2,), omegas=(0.0,))

        with pytest.raises(ConfigurationError):
            analyze_resonance(freq, 0.01, 1)

    def test_random_systems(self, rng):
        """Test 100 random systems: exact resonance on the module, margin off it."""
        failures = 0
        for _ in range(100):
            ell = int(rng.integers(1, 4))
            omegas = rng.uniform(10.0, 1000.0, size=ell)
            h = float(10.0 ** rng.uniform(-3.0, -1.0))
            N = int(rng.integers(1, 4))
            analysis = analyze_resonance(_system(*omegas), h, N, delta=0.25)
            report = analysis.verification

            assert report.residual_ok
            if report.nonmember_regime:
                assert report.nonmember_margin >= report.nonmember_threshold
            if report.kappa_passed and not report.unit_regime:
                assert "unit exclusion not enforced (outside regime)" in report.notes
            assert set(analysis.near_resonant) <= {c.k for c in analysis.combinations}
            for k in analysis.near_resonant:
                assert k in analysis.module
            failures += not report.passed

        assert failures <= 3
