import numpy as np
import pytest

import _properties
from kuramoto_rc.errors import ConfigurationError, InputRangeError
from kuramoto_rc.readout import (ReadoutConfig, ReadoutModel, build_features,
                                 evaluate, fit, load_model, save_model)
from kuramoto_rc.series import TimeSeries


def brute_force_weights(x, y, ridge):
    """Dense regularized normal equations, the independent oracle."""
    m, d = x.shape
    gram = x.T @ x + m * ridge * np.eye(d)
    return np.linalg.solve(gram, x.T @ y).T


class TestBuildFeatures:
    def test_single_tap_single_oscillator(self):
        hist = TimeSeries(0.0, 0.1, np.arange(30.0))
        cfg = ReadoutConfig(s=1, delta_t=0.1)
        feats = build_features(hist, cfg, [2.0])
        assert feats.shape == (1, 1)
        assert feats[0, 0] == hist.values[19, 0]  # the sample at t = 1.9

    def test_constant_history_gives_constant_features(self):
        hist = TimeSeries(0.0, 0.1, np.full((50, 3), 0.77))
        feats = build_features(hist, ReadoutConfig(s=4, delta_t=0.2), [3.0, 4.0])
        assert feats.shape == (2, 12)
        np.testing.assert_array_equal(feats, 0.77)

    def test_linear_ramp_tap_times(self):
        # theta'(t) = t sampled at 0.1: taps of (s=3, dt=0.1) at t=1 are 0.9, 0.8, 0.7
        times = 0.1 * np.arange(20)
        hist = TimeSeries(0.0, 0.1, times)
        feats = build_features(hist, ReadoutConfig(s=3, delta_t=0.1), [1.0])
        np.testing.assert_allclose(feats[0], [0.9, 0.8, 0.7], atol=1e-12)

    def test_oscillator_major_ordering_and_exclusion(self):
        values = np.stack([np.arange(20.0) + 100 * c for c in range(4)], axis=1)
        hist = TimeSeries(0.0, 1.0, values)
        cfg = ReadoutConfig(s=2, delta_t=1.0)
        feats = build_features(hist, cfg, [5.0], exclude=(1,))
        # channels 0, 2, 3, taps j=1,2 -> (t-1, t-2) per channel
        np.testing.assert_array_equal(
            feats[0], [4.0, 3.0, 204.0, 203.0, 304.0, 303.0])

    def test_insufficient_history_raises(self):
        hist = TimeSeries(0.0, 0.1, np.arange(30.0))
        with pytest.raises(InputRangeError):
            build_features(hist, ReadoutConfig(s=10, delta_t=0.1), [0.5])

    def test_off_grid_tap_spacing_rejected(self):
        hist = TimeSeries(0.0, 0.1, np.arange(30.0))
        with pytest.raises(ConfigurationError):
            build_features(hist, ReadoutConfig(s=2, delta_t=0.15), [1.0])


class TestFit:
    def test_exact_linear_targets_interpolated(self):
        rng = np.random.default_rng(0)
        x = rng.standard_normal((40, 7))
        w_true = rng.standard_normal((2, 7))
        y = x @ w_true.T
        model = fit(x, y, ridge=0.0)
        rel = evaluate(model, x, y) / (y ** 2).sum(1).mean()
        assert rel < 1e-16

    def test_one_hot_features_copy_targets(self):
        y = np.array([[2.0], [3.0], [-1.0]])
        model = fit(np.eye(3), y, ridge=0.0)
        np.testing.assert_allclose(model.weights, y.T, atol=1e-12)

    def test_matches_brute_force_small(self):
        rng = np.random.default_rng(1)
        x = rng.standard_normal((50, 10))
        y = rng.standard_normal((50, 2))
        model = fit(x, y, ridge=1e-3)
        ref = brute_force_weights(x, y, 1e-3)
        assert np.linalg.norm(model.weights - ref) / np.linalg.norm(ref) < 1e-8

    def test_matches_brute_force_underdetermined_wide(self):
        # 200 x 5000 exercises the dual (Gram) path against the primal oracle
        gap = _properties.solver_matches_normal_equations(200, 5000, 1e-4, seed=2)
        assert gap < 1e-8

    def test_ridge_monotonicity_of_train_error(self):
        rng = np.random.default_rng(3)
        x = rng.standard_normal((60, 30))
        y = rng.standard_normal((60, 1))
        errors = []
        for ridge in (1e-8, 1e-4, 1e-2, 1.0, 100.0):
            model = fit(x, y, ridge)
            errors.append(evaluate(model, x, y))
        assert all(a <= b + 1e-12 for a, b in zip(errors, errors[1:]))

    def test_perturbing_weights_never_improves_objective(self):
        rng = np.random.default_rng(4)
        x = rng.standard_normal((80, 12))
        y = rng.standard_normal((80, 3))
        ridge = 1e-3
        model = fit(x, y, ridge)

        def objective(w):
            resid = y - x @ w.T
            return (resid ** 2).sum(1).mean() + ridge * (w ** 2).sum()

        base = objective(model.weights)
        scale = np.linalg.norm(model.weights) * 1e-3
        for _ in range(100):
            delta = rng.standard_normal(model.weights.shape)
            delta *= scale / np.linalg.norm(delta)
            assert objective(model.weights + delta) >= base - 1e-15

    def test_rank_deficient_ridgeless_returns_min_norm(self):
        x = np.array([[1.0, 1.0], [2.0, 2.0]])
        y = np.array([[1.0], [2.0]])
        model = fit(x, y, ridge=0.0)
        # minimum-norm solution splits the weight across the duplicated columns
        np.testing.assert_allclose(model.weights, [[0.5, 0.5]], atol=1e-12)
        assert np.isfinite(model.condition_estimate)

    def test_condition_estimate_flags_bad_conditioning(self):
        rng = np.random.default_rng(5)
        base = rng.standard_normal((40, 1))
        x = np.hstack([base, base + 1e-9 * rng.standard_normal((40, 1))])
        model = fit(x, rng.standard_normal((40, 1)), ridge=1e-14)
        assert model.condition_estimate > 1e10

    def test_negative_ridge_rejected(self):
        with pytest.raises(ConfigurationError):
            fit(np.eye(2), np.ones((2, 1)), ridge=-1.0)


class TestEvaluate:
    def test_zero_weights_unit_targets(self):
        model = ReadoutModel(np.zeros((1, 4)), 0.0)
        mse = evaluate(model, np.ones((6, 4)), np.ones((6, 1)))
        assert mse == pytest.approx(1.0)

    def test_hand_computed_residuals(self):
        # residual rows (1, 0) and (0, 2) with q=2: (1 + 4) / 2 = 2.5
        model = ReadoutModel(np.zeros((2, 3)), 0.0)
        targets = np.array([[1.0, 0.0], [0.0, 2.0]])
        assert evaluate(model, np.zeros((2, 3)), targets) == pytest.approx(2.5)


class TestModelIO:
    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(6)
        cfg = ReadoutConfig(s=3, delta_t=0.2, include_input_nodes=True)
        model = fit(rng.standard_normal((30, 9)), rng.standard_normal((30, 2)),
                    ridge=1e-5, config=cfg, channels=np.arange(3), seed=17)
        path = tmp_path / "weights.npz"
        save_model(model, path)
        back = load_model(path)
        np.testing.assert_array_equal(back.weights, model.weights)
        assert back.config == cfg
        assert back.ridge == model.ridge
        assert back.seed == 17
        np.testing.assert_array_equal(back.channels, model.channels)
