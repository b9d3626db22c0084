"""Tests for windowed amplitude probes and the scaling fit."""

import math

import numpy as np
import pytest

from oscint.analysis.spectrum import (
    MIN_SAMPLES, alias_frequency, amplitude_at, amplitude_scaling, fit_scaling_exponent, hann_weights,
    probe_peaks, sample_trajectory, windowed_power
)
from oscint.core.exceptions import WindowTooShort
from oscint.methods.filters import DEUFLHARD
from oscint.methods.integrators import TrigIntegrator

SPAN = 100.0
SAMPLES = 2000


def _grid():
    return np.arange(SAMPLES) * (SPAN / SAMPLES)


def _on_bin(periods: int) -> float:
    return 2.0 * math.pi * periods / SPAN


class TestAmplitudeAt:
    """Test single-frequency amplitude estimates on synthetic signals."""

    def test_recovers_cosine_amplitude(self):
        t = _grid()
        nu = _on_bin(40)

        assert amplitude_at(t, 0.7 * np.cos(nu * t + 0.3), nu) == pytest.approx(0.7, rel=0.01)

    def test_leakage_ten_bins_away(self):
        t = _grid()
        nu = _on_bin(40)

        assert amplitude_at(t, 0.7 * np.cos(nu * t), _on_bin(50)) <= 0.01 * 0.7

    def test_constant_level(self):
        t = _grid()

        assert amplitude_at(t, np.full(t.size, -2.5), 0.0) == pytest.approx(2.5)

    def test_window_selection(self):
        """Test that samples outside the window are ignored."""
        t = _grid()
        nu = _on_bin(60)
        signal = np.where(t < 50.0, 0.0, np.cos(nu * t))

        assert amplitude_at(t, signal, nu, window=(50.0, SPAN)) == pytest.approx(1.0, rel=0.01)

    def test_triangle_inequality(self, rng):
        t = _grid()
        for _ in range(20):
            x = rng.normal(size=t.size) + np.cos(_on_bin(40) * t)
            y = rng.normal(size=t.size) - 0.5 * np.sin(_on_bin(37) * t)
            nu = float(rng.uniform(_on_bin(25), _on_bin(60)))

            lhs = amplitude_at(t, x + y, nu)
            assert lhs <= amplitude_at(t, x, nu) + amplitude_at(t, y, nu) + 1e-12

    def test_too_few_periods(self):
        t = _grid()

        with pytest.raises(WindowTooShort):
            amplitude_at(t, np.cos(t), _on_bin(5))

    def test_too_few_samples(self):
        t = np.arange(MIN_SAMPLES - 1, dtype=np.float64)

        with pytest.raises(WindowTooShort):
            amplitude_at(t, np.ones_like(t), 0.0)

    def test_nonuniform_sampling(self):
        t = np.sort(np.random.default_rng(1).uniform(0.0, SPAN, SAMPLES))

        with pytest.raises(ValueError):
            amplitude_at(t, np.cos(t), _on_bin(40))

    def test_parseval_bound(self):
        """Test that the probed peaks do not exceed the windowed signal power."""
        t = _grid()
        signal = 0.8 * np.cos(_on_bin(40) * t) + 0.3 * np.cos(_on_bin(90) * t + 1.0)
        amps = [amplitude_at(t, signal, _on_bin(k)) for k in (40, 90)]

        assert sum(a * a / 2.0 for a in amps) <= 1.05 * windowed_power(t, signal)

    def test_hann_weights(self):
        w = hann_weights(5)

        np.testing.assert_allclose(w, [0.0, 0.5, 1.0, 0.5, 0.0], atol=1e-15)
        np.testing.assert_array_equal(hann_weights(1), [1.0])


class TestAliasFrequency:
    """Test aliasing into (-pi/h, pi/h]."""

    def test_nyquist(self):
        h = 0.05

        assert alias_frequency(math.pi / h, h) == pytest.approx(math.pi / h)

    def test_shift_by_sampling_frequency(self):
        h = 0.05

        assert alias_frequency(3.0 + 2.0 * math.pi / h, h) == pytest.approx(3.0)
        assert alias_frequency(-3.0 - 4.0 * math.pi / h, h) == pytest.approx(-3.0)

    def test_inside_band_unchanged(self):
        assert alias_frequency(1.5, 0.1) == pytest.approx(1.5)


class TestProbePeaks:
    """Test probe_peaks on a two-component series."""

    def test_labels_and_components(self):
        t = _grid()
        varpi = [_on_bin(25), _on_bin(45)]
        series = np.column_stack([np.cos(varpi[0] * t), 0.5 * np.cos(varpi[1] * t)])

        peaks = probe_peaks(t, series, [(1, 0), (0, 1)], varpi, h=SPAN / SAMPLES)

        assert len(peaks) == 4
        lookup = {(p.k, p.component): p.amplitude for p in peaks}
        assert lookup[((1, 0), 0)] == pytest.approx(1.0, rel=0.01)
        assert lookup[((0, 1), 1)] == pytest.approx(0.5, rel=0.01)
        assert lookup[((0, 1), 0)] < 0.01

    def test_unresolvable_labels_skipped(self):
        t = _grid()
        peaks = probe_peaks(t, np.cos(t), [(1,), (40,)], [_on_bin(1)], h=SPAN / SAMPLES)

        assert [p.k for p in peaks] == [(40,)]


class TestScalingFit:
    """Test the log-log fit of amplitudes against omega."""

    def test_exact_power_law(self):
        omegas = [50.0, 100.0, 200.0]

        assert fit_scaling_exponent(omegas, [3.0 / w for w in omegas]) == pytest.approx(-1.0)
        assert fit_scaling_exponent(omegas, [2.0, 2.0, 2.0]) == pytest.approx(0.0, abs=1e-12)

    def test_needs_three_distinct_omegas(self):
        with pytest.raises(ValueError):
            fit_scaling_exponent([50.0, 50.0, 100.0], [1.0, 1.0, 0.5])

    def test_nonpositive_amplitude(self):
        with pytest.raises(ValueError):
            fit_scaling_exponent([1.0, 2.0, 3.0], [1.0, 0.0, 1.0])

    def test_amplitude_scaling_synthetic(self):
        """Test that a 1/omega amplitude at frequency omega fits slope -1."""
        def run(omega):
            t = np.arange(16 * 320 + 1) * (2.0 * math.pi / omega / 16)
            return t, np.cos(omega * t) / omega

        slope, amps = amplitude_scaling([50.0, 100.0, 200.0], run, target=lambda omega: omega)

        assert slope == pytest.approx(-1.0, abs=0.02)
        assert amps[0] == pytest.approx(1.0 / 50.0, rel=0.01)


class TestSampleTrajectory:
    """Test sample_trajectory."""

    def test_harmonic_samples(self, single_freq, free_potential, harmonic_state):
        integ = TrigIntegrator(DEUFLHARD, 0.1, single_freq, free_potential)

        times, rows = sample_trajectory(integ, harmonic_state, 40, stride=4)

        assert times.shape == (11,)
        assert rows.shape == (11, 1)
        np.testing.assert_allclose(rows[:, 0], np.cos(times * 10.0), atol=1e-12)
