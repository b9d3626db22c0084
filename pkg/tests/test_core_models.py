"""Tests for core data models and run configuration."""

import math
from datetime import datetime
from pathlib import Path

import numpy as np
import pytest

from oscint.core.config import MAX_STEPS, MethodKind, MethodSpec, RunConfig, ScanConfig
from oscint.core.exceptions import ValidationError
from oscint.core.models import (
    BlockVector, FilterName, FrequencySystem, OscState, ProblemName, RunSummary, ScanRow
)


class TestFrequencySystem:
    """Test FrequencySystem model."""

    def test_epsilon_derived_from_smallest_fast_frequency(self):
        """Test epsilon defaults to 1 / min fast omega."""
        freq = FrequencySystem(block_dims=(1, 1, 1), omegas=(0.0, 50.0, 80.0))

        assert freq.epsilon == pytest.approx(0.02)
        assert freq.ell == 2
        assert freq.total_dim == 3
        assert freq.offsets == (0, 1, 2, 3)

    def test_empty_slow_block_allowed(self):
        """Test d0 = 0 is valid."""
        freq = FrequencySystem(block_dims=(0, 1), omegas=(0.0, 100.0))

        assert freq.total_dim == 1
        assert freq.block_slice(0) == slice(0, 0)
        np.testing.assert_array_equal(freq.component_omegas(), [100.0])

    def test_slow_frequency_must_be_zero(self):
        """Test omegas[0] != 0 is rejected."""
        with pytest.raises(ValueError):
            FrequencySystem(block_dims=(1, 1), omegas=(1.0, 100.0))

    def test_lengths_must_match(self):
        """Test mismatched omegas and block_dims."""
        with pytest.raises(ValueError):
            FrequencySystem(block_dims=(1, 1, 1), omegas=(0.0, 100.0))

    def test_fast_frequency_below_scale_rejected(self):
        """Test omega_j >= 1/epsilon is enforced."""
        with pytest.raises(ValueError):
            FrequencySystem(block_dims=(0, 1), omegas=(0.0, 10.0), epsilon=0.01)

    def test_component_values(self):
        """Test broadcasting per-block values to components."""
        freq = FrequencySystem(block_dims=(2, 3), omegas=(0.0, 7.0))

        np.testing.assert_array_equal(freq.component_blocks(), [0, 0, 1, 1, 1])
        np.testing.assert_array_equal(freq.component_omegas(), [0, 0, 7, 7, 7])

    def test_with_omegas_keeps_structure(self):
        freq = FrequencySystem(block_dims=(2, 3), omegas=(0.0, 7.0))
        modified = freq.with_omegas([0.0, 6.5])

        assert modified.block_dims == freq.block_dims
        assert modified.omegas == (0.0, 6.5)


class TestBlockVector:
    """Test BlockVector value object."""

    def test_from_blocks(self):
        """Test construction from per-block lists, including an empty block."""
        v = BlockVector.from_blocks([[], [1.0, 2.0], [3.0]])

        assert v.dims == (0, 2, 1)
        assert len(v) == 3
        np.testing.assert_array_equal(v.block(1), [1.0, 2.0])
        assert v.block(0).size == 0

    def test_data_is_read_only(self):
        v = BlockVector.from_blocks([[1.0], [2.0]])

        with pytest.raises(ValueError):
            v.data[0] = 5.0

    def test_size_mismatch_rejected(self):
        with pytest.raises(ValidationError):
            BlockVector(np.zeros(3), (1, 1))

    def test_arithmetic(self, rng):
        """Test add, scale and dot behave like vector operations."""
        x = BlockVector(rng.normal(size=4), (1, 3))
        y = BlockVector(rng.normal(size=4), (1, 3))

        np.testing.assert_allclose((x + y).data, (y + x).data)
        np.testing.assert_allclose((2.0 * (x - y)).data, 2.0 * x.data - 2.0 * y.data)
        np.testing.assert_allclose((-x).data, -x.data)
        assert x.dot(x) >= 0.0
        assert x.dot(y) == pytest.approx(y.dot(x))
        assert x.norm() == pytest.approx(math.sqrt(x.dot(x)))

    def test_mismatched_blocks_rejected(self):
        with pytest.raises(ValidationError):
            BlockVector.from_blocks([[1.0], [2.0]]) + BlockVector.from_blocks([[1.0, 2.0]])

    def test_conforms(self):
        freq = FrequencySystem(block_dims=(1, 2), omegas=(0.0, 10.0))

        assert BlockVector.zeros(freq).conforms(freq)
        assert not BlockVector.from_blocks([[1.0], [2.0]]).conforms(freq)


class TestOscState:
    """Test OscState model."""

    def test_state_creation(self):
        q = BlockVector.from_blocks([[], [0.001]])
        p = BlockVector.from_blocks([[], [1.0]])
        state = OscState(0.0, q, p)

        assert state.t == 0.0
        assert state.conforms(FrequencySystem(block_dims=(0, 1), omegas=(0.0, 100.0)))

    def test_mismatched_q_and_p(self):
        with pytest.raises(ValidationError):
            OscState(0.0, BlockVector.from_blocks([[1.0]]), BlockVector.from_blocks([[1.0], [2.0]]))


class TestResultModels:
    """Test ScanRow and RunSummary."""

    def test_scan_row_failed(self):
        assert not ScanRow(index=0, h_omega=2.0, h=0.04, max_deviation=0.1).failed
        assert ScanRow(index=1, h_omega=2.0, h=0.04, max_deviation=math.nan, error="boom").failed

    def test_run_summary_max_dev_osc(self):
        now = datetime.now()
        summary = RunSummary(
            label="x", n_steps=10, h=0.1, t_end=1.0, initial={}, final={},
            max_deviation={"H_osc": 0.25}, processing_time=0.1, steps_per_second=100.0,
            memory_mb=10.0, start_time=now, end_time=now,
        )

        assert summary.max_dev_osc == 0.25
        assert summary.extra == {}


class TestMethodSpec:
    """Test method parsing."""

    def test_parse_trig(self):
        spec = MethodSpec.parse("trig:deuflhard")

        assert spec.kind is MethodKind.TRIG
        assert spec.filter_name is FilterName.DEUFLHARD
        assert str(spec) == "trig:deuflhard"

    def test_parse_alpha(self):
        spec = MethodSpec.parse("alpha:0.25")

        assert spec.kind is MethodKind.ALPHA
        assert spec.alpha == 0.25
        assert str(spec) == "alpha:0.25"

    @pytest.mark.parametrize("text", ["deuflhard", "trig:", "euler:1", "trig:unknown", "alpha:-1"])
    def test_parse_invalid(self, text):
        with pytest.raises(ValueError):
            MethodSpec.parse(text)


class TestRunConfig:
    """Test RunConfig validation."""

    def test_defaults_and_step_size(self):
        config = RunConfig(h_omega=2.0, t_end=100.0)

        assert config.problem is ProblemName.FPU
        assert config.omega == 50.0
        assert config.step_size == pytest.approx(0.04)
        assert config.n_steps == 2500
        assert str(config.method) == "trig:deuflhard"

    def test_exactly_one_step_control(self):
        """Test that h and h_omega are mutually exclusive and one is required."""
        with pytest.raises(ValueError):
            RunConfig(t_end=1.0)
        with pytest.raises(ValueError):
            RunConfig(h=0.01, h_omega=0.5, t_end=1.0)

    def test_step_count_limit(self):
        with pytest.raises(ValueError):
            RunConfig(h=1e-7, t_end=1e10)
        assert MAX_STEPS == 2 ** 53

    def test_string_inputs(self):
        """Test values as they arrive from a config file."""
        config = RunConfig(problem="exp1", omega="100", h_omega="1.5", t_end="10",
                           method="alpha:0.25", deltas="7e-16, -7e-16", perturb="Q0")

        assert config.problem is ProblemName.EXP1
        assert config.method.alpha == 0.25
        assert config.deltas == [7e-16, -7e-16]
        assert config.perturb_target == ("q", 0)

    def test_invalid_perturb(self):
        with pytest.raises(ValueError):
            RunConfig(h=0.01, t_end=1.0, perturb="x1")

    def test_stride_must_be_positive(self):
        with pytest.raises(ValueError):
            RunConfig(h=0.01, t_end=1.0, stride=0)

    def test_label(self):
        config = RunConfig(problem="exp1", omega=100.0, h_omega=2.0, t_end=1.0)

        assert "exp1" in config.label()
        assert "homega=2" in config.label()


class TestScanConfig:
    """Test ScanConfig grid construction."""

    def test_grid(self):
        template = RunConfig(h_omega=2.0, t_end=10.0)
        scan = ScanConfig(center=2.0, width=0.1, points=5, template=template)

        np.testing.assert_allclose(scan.grid, [1.95, 1.975, 2.0, 2.025, 2.05])

    def test_two_points(self):
        template = RunConfig(h_omega=2.0, t_end=10.0)
        scan = ScanConfig(center=2.0, width=0.1, points=2, template=template)

        assert len(scan.grid) == 2
        assert scan.grid[0] == pytest.approx(1.95)
        assert scan.grid[1] == pytest.approx(2.05)

    def test_points_minimum(self):
        template = RunConfig(h_omega=2.0, t_end=10.0)
        with pytest.raises(ValueError):
            ScanConfig(center=2.0, width=0.1, points=1, template=template)

    def test_point_config(self):
        """Test that omega stays fixed while h varies across the grid."""
        template = RunConfig(h_omega=2.0, t_end=10.0, out=Path("x.csv"), deltas=[1e-15])
        scan = ScanConfig(center=2.0, width=0.1, points=3, template=template)
        point = scan.point_config(2)

        assert point.h_omega == pytest.approx(2.05)
        assert point.omega == template.omega
        assert point.h is None
        assert point.out is None
        assert point.deltas == []
