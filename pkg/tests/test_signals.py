import numpy as np
import pytest

from kuramoto_rc.signals import (lorenz_series, mackey_glass_series,
                                 multisine_modes, multisine_series)

LORENZ = (10.0, 28.0, 8.0 / 3.0)


def _rk4(f, s, dt, n):
    """Plain reference integrator used as an independent oracle."""
    out = [np.asarray(s, dtype=float)]
    for _ in range(n):
        s = out[-1]
        k1 = f(s)
        k2 = f(s + 0.5 * dt * k1)
        k3 = f(s + 0.5 * dt * k2)
        k4 = f(s + dt * k3)
        out.append(s + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4))
    return np.asarray(out)


def _lorenz_rhs(s):
    x, y, z = s
    sig, rho, beta = LORENZ
    return np.array([sig * (y - x), x * (rho - z) - y, x * y - beta * z])


class TestLorenz:
    def test_standardized_and_deterministic(self):
        a = lorenz_series(200.0, 0.1, seed=4)
        b = lorenz_series(200.0, 0.1, seed=4)
        np.testing.assert_array_equal(a.values, b.values)
        assert a.channel(0).mean() == pytest.approx(0.0, abs=1e-6)
        assert a.channel(0).var() == pytest.approx(1.0, abs=1e-6)
        assert a.n_samples == 2001

    def test_different_seeds_differ(self):
        a = lorenz_series(50.0, 0.1, seed=1)
        b = lorenz_series(50.0, 0.1, seed=2)
        assert not np.allclose(a.values, b.values)

    def test_positive_lyapunov_exponent(self):
        # divergence of nearby trajectories, integrated by the oracle above
        s0 = np.array([1.0, 1.0, 20.0])
        warm = _rk4(_lorenz_rhs, s0, 0.01, 5000)[-1]
        eps = 1e-8
        a = _rk4(_lorenz_rhs, warm, 0.01, 2000)
        b = _rk4(_lorenz_rhs, warm + np.array([eps, 0.0, 0.0]), 0.01, 2000)
        gap = np.linalg.norm(a - b, axis=1)
        lam = (np.log(gap[-1]) - np.log(gap[0])) / 20.0
        assert lam > 0.3  # the classical value is about 0.9


class TestMackeyGlass:
    def test_standardized_and_deterministic(self):
        a = mackey_glass_series(300.0, 0.1, seed=9)
        b = mackey_glass_series(300.0, 0.1, seed=9)
        np.testing.assert_array_equal(a.values, b.values)
        assert a.channel(0).mean() == pytest.approx(0.0, abs=1e-6)
        assert a.channel(0).var() == pytest.approx(1.0, abs=1e-6)

    def test_departs_equilibrium_and_stays_aperiodic(self):
        # the delayed feedback at tau=17 is chaotic: trajectories from nearby
        # histories separate instead of settling back to x* = 1
        a = mackey_glass_series(400.0, 0.1, seed=3)
        late = a.channel(0)[-2000:]
        assert late.std() > 0.3
        b = mackey_glass_series(400.0, 0.1, seed=30)
        # both standardized; distinct histories stay far apart
        assert np.max(np.abs(a.values - b.values)) > 0.5

    def test_divergence_rate_positive(self):
        from kuramoto_rc._kernels_numpy import mackey_glass_loop
        delay_steps, dt = 170, 0.1
        n = 4000
        base = np.empty(delay_steps + n + 1)
        pert = np.empty(delay_steps + n + 1)
        base[:delay_steps + 1] = 1.1
        pert[:delay_steps + 1] = 1.1 + 1e-7
        mackey_glass_loop(base, 0.2, 0.1, 10, delay_steps, dt, n)
        mackey_glass_loop(pert, 0.2, 0.1, 10, delay_steps, dt, n)
        gap = np.abs(base - pert)
        assert gap[-1] > 100 * gap[delay_steps]


class TestMultisine:
    def test_matches_formula_exactly(self):
        m, seed = 3, 12
        series = multisine_series(30.0, 0.05, m, seed)
        a, b, c, d = multisine_modes(m, seed)
        t = series.times()
        expected = (np.sin(np.outer(t, b) + c) * a + d).mean(axis=1)
        np.testing.assert_allclose(series.channel(0), expected, atol=1e-12)

    def test_single_mode_is_pure_shifted_sine(self):
        series = multisine_series(20.0, 0.01, 1, seed=5)
        a, b, c, d = multisine_modes(1, seed=5)
        t = series.times()
        np.testing.assert_allclose(series.channel(0),
                                   a[0] * np.sin(b[0] * t + c[0]) + d[0], atol=1e-12)

    def test_amplitude_bound(self):
        for seed in range(5):
            series = multisine_series(100.0, 0.1, 6, seed)
            a, _, _, d = multisine_modes(6, seed)
            assert np.max(np.abs(series.channel(0))) <= np.max(a + np.abs(d)) + 1e-12

    def test_spectrum_peaks_at_mode_frequencies(self):
        m, seed, dt = 2, 7, 0.02
        series = multisine_series(3000.0, dt, m, seed)
        _, b, _, _ = multisine_modes(m, seed)
        x = series.channel(0) - series.channel(0).mean()
        spectrum = np.abs(np.fft.rfft(x))
        freqs = np.fft.rfftfreq(x.size, dt) * 2.0 * np.pi  # angular
        for bi in b:
            k = int(np.argmin(np.abs(freqs - bi)))
            window = spectrum[max(0, k - 3):k + 4]
            assert window.max() > 10 * np.median(spectrum)

    def test_finite_everywhere(self):
        series = multisine_series(50.0, 0.1, 8, seed=0)
        assert np.all(np.isfinite(series.values))
