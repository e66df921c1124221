import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import _properties
from kuramoto_rc.errors import ConfigurationError
from kuramoto_rc.order_params import (BACKWARD, FORWARD, OrderParamSample,
                                      VarianceConfig, detect_critical,
                                      kuramoto_r, sweep, sweep_to_csv,
                                      variance_r)
from kuramoto_rc.series import TimeSeries
from kuramoto_rc.topology import complete_graph


class TestKuramotoR:
    def test_identical_phases_give_one(self):
        assert kuramoto_r(np.full(17, 1.3)) == pytest.approx(1.0)

    def test_symmetric_four_point_cancellation(self):
        phases = np.array([0.0, np.pi / 2, np.pi, 3 * np.pi / 2])
        assert kuramoto_r(phases) == pytest.approx(0.0, abs=1e-15)

    def test_two_phase_hand_value(self):
        # |1 + e^{i pi/3}| / 2 = cos(pi/6)
        assert kuramoto_r(np.array([0.0, np.pi / 3])) == pytest.approx(
            np.cos(np.pi / 6), abs=1e-12)

    @given(st.lists(st.floats(-50.0, 50.0), min_size=1, max_size=60),
           st.floats(-20.0, 20.0))
    @settings(max_examples=80, deadline=None)
    def test_bounds_and_shift_invariance(self, phases, shift):
        phases = np.asarray(phases)
        r = kuramoto_r(phases)
        assert 0.0 <= r <= 1.0 + 1e-12
        assert abs(kuramoto_r(phases + shift) - r) < 1e-12


class TestVarianceR:
    def test_constant_frequencies_give_one(self):
        hist = TimeSeries(0.0, 0.1, np.tile([0.3, -1.2, 0.7], (40, 1)))
        cfg = VarianceConfig(c=1e5, window=3.0)
        assert variance_r(hist, cfg) == pytest.approx(1.0)

    def test_huge_variance_drives_to_zero(self):
        rng = np.random.default_rng(0)
        hist = TimeSeries(0.0, 0.1, 1e5 * rng.standard_normal((60, 4)))
        cfg = VarianceConfig(c=1e5, window=5.0)
        assert variance_r(hist, cfg) == pytest.approx(0.0, abs=1e-12)

    def test_alternating_two_point_value(self):
        v, c = 0.02, 321.0
        vals = np.tile([v, -v], 30)
        hist = TimeSeries(0.0, 0.1, vals)
        cfg = VarianceConfig(c=c, window=6.0)
        # variance of the symmetric two-point distribution is v^2
        assert variance_r(hist, cfg) == pytest.approx(np.exp(-c * v * v), rel=1e-12)

    def test_window_must_be_covered(self):
        hist = TimeSeries(0.0, 0.1, np.zeros((20, 2)))
        with pytest.raises(ConfigurationError):
            variance_r(hist, VarianceConfig(window=5.0))

    def test_config_validation(self):
        with pytest.raises(ConfigurationError):
            VarianceConfig(c=0.0)
        with pytest.raises(ConfigurationError):
            VarianceConfig(window=0.5, sample_dt=0.1)

    @given(st.integers(0, 2 ** 31 - 1))
    @settings(max_examples=30, deadline=None)
    def test_bounds_on_random_histories(self, seed):
        rng = np.random.default_rng(seed)
        hist = TimeSeries(0.0, 0.1, rng.standard_normal((25, 6)) * rng.uniform(0, 10))
        rv = variance_r(hist, VarianceConfig(c=rng.uniform(1e-3, 1e6), window=2.0))
        assert 0.0 <= rv <= 1.0


class TestDetectCritical:
    def grid(self, rvals, lam0=0.0, step=0.1):
        return [OrderParamSample(lam0 + k * step, 0.0, rv) for k, rv in enumerate(rvals)]

    def test_synthetic_step_detected_at_interval_midpoint(self):
        lams = np.arange(0.0, 4.01, 0.1)
        samples = [OrderParamSample(l, 0.0, 0.0 if l < 2.0 else 1.0) for l in lams]
        assert detect_critical(samples) == pytest.approx(1.95)

    def test_flat_ramp_reports_no_transition(self):
        samples = self.grid(np.linspace(0.0, 1.0, 40))
        assert detect_critical(samples) is None

    def test_tie_breaks_toward_smaller_coupling(self):
        samples = self.grid([0.0, 0.5, 0.5, 1.0])
        assert detect_critical(samples) == pytest.approx(0.05)

    def test_needs_three_samples(self):
        with pytest.raises(ConfigurationError):
            detect_critical(self.grid([0.0, 1.0]))


class TestSweep:
    def test_extremes_show_monotone_trend(self):
        # averaged r at strong coupling beats weak coupling on a small graph
        net = complete_graph(60)
        rng = np.random.default_rng(8)
        omega = rng.standard_normal(60)
        samples = sweep(net, omega, "regular", [0.2, 5.0], FORWARD,
                        VarianceConfig(window=10.0), seed=1, transient=20.0)
        assert samples[-1].r > samples[0].r
        assert samples[-1].r > 0.8
        assert samples[-1].r_var == pytest.approx(1.0, abs=1e-6)
        for s in samples:
            assert 0.0 <= s.r <= 1.0
            assert 0.0 <= s.r_var <= 1.0

    def test_backward_traverses_descending(self):
        net = complete_graph(30)
        omega = np.random.default_rng(3).standard_normal(30)
        samples = sweep(net, omega, "regular", [1.0, 4.0], BACKWARD,
                        VarianceConfig(window=5.0), seed=2, transient=5.0)
        assert [s.lam for s in samples] == [4.0, 1.0]
        assert all(s.direction == BACKWARD for s in samples)

    def test_csv_export(self, tmp_path):
        samples = [OrderParamSample(0.1, 0.5, 0.25, FORWARD)]
        path = tmp_path / "sweep.csv"
        sweep_to_csv(samples, path, seed=7)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "direction,lambda,r,r_var,seed"
        assert lines[1] == "forward,0.1,0.5,0.25,7"


def test_order_param_property_suite():
    worst_shift = _properties.order_param_properties()
    assert worst_shift < 1e-12
