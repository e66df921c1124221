"""Compiled integration kernels (numba), matching ``_kernels_numpy``.

Importing this module selects the fastest available backend. Set
``KURAMOTO_RC_FORCE_NUMPY=1`` to force the reference path.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_numpy as _ref

TWO_PI = _ref.TWO_PI

_force_numpy = bool(os.environ.get("KURAMOTO_RC_FORCE_NUMPY"))

if not _force_numpy:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        _force_numpy = True

HAVE_NUMBA = not _force_numpy

if HAVE_NUMBA:

    @njit(cache=True)
    def _rhs_into(theta, omega, lam_i, deg, indptr, indices, complete, out):
        n = theta.shape[0]
        if complete:
            ss = 0.0
            sc = 0.0
            for j in range(n):
                sc += np.cos(theta[j])
                ss += np.sin(theta[j])
            for i in range(n):
                ci = np.cos(theta[i])
                si = np.sin(theta[i])
                out[i] = omega[i] + lam_i[i] / deg[i] * (ci * ss - si * sc)
        else:
            cos_t = np.cos(theta)
            sin_t = np.sin(theta)
            for i in range(n):
                ss = 0.0
                sc = 0.0
                for q in range(indptr[i], indptr[i + 1]):
                    j = indices[q]
                    sc += cos_t[j]
                    ss += sin_t[j]
                out[i] = omega[i] + lam_i[i] / deg[i] * (cos_t[i] * ss - sin_t[i] * sc)

    @njit(cache=True)
    def _rk4_into(theta, omega, lam_i, deg, indptr, indices, complete, dt,
                  clamp_idx, c0, c1, c2, k1, k2, k3, k4, tmp):
        n = theta.shape[0]
        p = clamp_idx.shape[0]
        for c in range(p):
            theta[clamp_idx[c]] = c0[c]
        _rhs_into(theta, omega, lam_i, deg, indptr, indices, complete, k1)
        for i in range(n):
            tmp[i] = theta[i] + 0.5 * dt * k1[i]
        for c in range(p):
            tmp[clamp_idx[c]] = c1[c]
        _rhs_into(tmp, omega, lam_i, deg, indptr, indices, complete, k2)
        for i in range(n):
            tmp[i] = theta[i] + 0.5 * dt * k2[i]
        for c in range(p):
            tmp[clamp_idx[c]] = c1[c]
        _rhs_into(tmp, omega, lam_i, deg, indptr, indices, complete, k3)
        for i in range(n):
            tmp[i] = theta[i] + dt * k3[i]
        for c in range(p):
            tmp[clamp_idx[c]] = c2[c]
        _rhs_into(tmp, omega, lam_i, deg, indptr, indices, complete, k4)
        for i in range(n):
            theta[i] = (theta[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])) % TWO_PI
        for c in range(p):
            theta[clamp_idx[c]] = c2[c] % TWO_PI

    @njit(cache=True)
    def _integrate(theta, omega, lam_i, deg, indptr, indices, complete, dt,
                   n_steps, sample_every, clamp_idx, clamp_half, freq_out, phase_out):
        n = theta.shape[0]
        record_phases = phase_out.shape[0] > 0
        k1 = np.empty(n)
        k2 = np.empty(n)
        k3 = np.empty(n)
        k4 = np.empty(n)
        tmp = np.empty(n)
        none = np.zeros(0)
        r = 0
        for k in range(n_steps):
            if clamp_idx.shape[0]:
                c0 = clamp_half[2 * k]
                c1 = clamp_half[2 * k + 1]
                c2 = clamp_half[2 * k + 2]
            else:
                c0 = none
                c1 = none
                c2 = none
            _rk4_into(theta, omega, lam_i, deg, indptr, indices, complete, dt,
                      clamp_idx, c0, c1, c2, k1, k2, k3, k4, tmp)
            if (k + 1) % sample_every == 0:
                _rhs_into(theta, omega, lam_i, deg, indptr, indices, complete, k1)
                for i in range(n):
                    freq_out[r, i] = k1[i]
                if record_phases:
                    for i in range(n):
                        phase_out[r, i] = theta[i]
                r += 1

    @njit(cache=True)
    def _relax(theta, omega, lam_i, deg, indptr, indices, complete, dt,
               max_steps, tol, check_every):
        n = theta.shape[0]
        k1 = np.empty(n)
        k2 = np.empty(n)
        k3 = np.empty(n)
        k4 = np.empty(n)
        tmp = np.empty(n)
        clamp_idx = np.zeros(0, dtype=np.int64)
        none = np.zeros(0)
        for k in range(max_steps):
            if k % check_every == 0:
                _rhs_into(theta, omega, lam_i, deg, indptr, indices, complete, k1)
                mean = 0.0
                for i in range(n):
                    mean += k1[i]
                mean /= n
                spread = 0.0
                for i in range(n):
                    d = abs(k1[i] - mean)
                    if d > spread:
                        spread = d
                if spread < tol:
                    return k, True
            _rk4_into(theta, omega, lam_i, deg, indptr, indices, complete, dt,
                      clamp_idx, none, none, none, k1, k2, k3, k4, tmp)
        _rhs_into(theta, omega, lam_i, deg, indptr, indices, complete, k1)
        mean = 0.0
        for i in range(n):
            mean += k1[i]
        mean /= n
        spread = 0.0
        for i in range(n):
            d = abs(k1[i] - mean)
            if d > spread:
                spread = d
        return max_steps, spread < tol

    @njit(cache=True)
    def _lorenz_loop(state0, sigma, rho, beta, dt, n_steps):
        out = np.empty((n_steps + 1, 3))
        x = state0[0]
        y = state0[1]
        z = state0[2]
        out[0, 0] = x
        out[0, 1] = y
        out[0, 2] = z
        for k in range(n_steps):
            k1x = sigma * (y - x)
            k1y = x * (rho - z) - y
            k1z = x * y - beta * z
            x2 = x + 0.5 * dt * k1x
            y2 = y + 0.5 * dt * k1y
            z2 = z + 0.5 * dt * k1z
            k2x = sigma * (y2 - x2)
            k2y = x2 * (rho - z2) - y2
            k2z = x2 * y2 - beta * z2
            x3 = x + 0.5 * dt * k2x
            y3 = y + 0.5 * dt * k2y
            z3 = z + 0.5 * dt * k2z
            k3x = sigma * (y3 - x3)
            k3y = x3 * (rho - z3) - y3
            k3z = x3 * y3 - beta * z3
            x4 = x + dt * k3x
            y4 = y + dt * k3y
            z4 = z + dt * k3z
            k4x = sigma * (y4 - x4)
            k4y = x4 * (rho - z4) - y4
            k4z = x4 * y4 - beta * z4
            x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
            y += dt / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
            z += dt / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z)
            out[k + 1, 0] = x
            out[k + 1, 1] = y
            out[k + 1, 2] = z
        return out

    @njit(cache=True)
    def _mackey_glass_loop(x_hist, beta, gamma, n_exp, delay_steps, dt, n_steps):
        for k in range(n_steps):
            i = delay_steps + k
            x = x_hist[i]
            xd1 = x_hist[k]
            xd2 = 0.5 * (x_hist[k] + x_hist[k + 1])
            xd4 = x_hist[k + 1]
            k1 = beta * xd1 / (1.0 + xd1 ** n_exp) - gamma * x
            xa = x + 0.5 * dt * k1
            k2 = beta * xd2 / (1.0 + xd2 ** n_exp) - gamma * xa
            xb = x + 0.5 * dt * k2
            k3 = beta * xd2 / (1.0 + xd2 ** n_exp) - gamma * xb
            xc = x + dt * k3
            k4 = beta * xd4 / (1.0 + xd4 ** n_exp) - gamma * xc
            x_hist[i + 1] = x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    def rhs(theta, omega, lam_i, deg, indptr, indices, complete):
        out = np.empty(theta.shape[0])
        _rhs_into(theta, omega, lam_i, deg, indptr, indices, complete, out)
        return out

    def rk4_step(theta, omega, lam_i, deg, indptr, indices, complete, dt, clamp_idx, clamp3):
        n = theta.shape[0]
        work = [np.empty(n) for _ in range(5)]
        new = theta.copy()
        _rk4_into(new, omega, lam_i, deg, indptr, indices, complete, dt,
                  clamp_idx, clamp3[0], clamp3[1], clamp3[2], *work)
        return new

    integrate = _integrate
    relax = _relax
    lorenz_loop = _lorenz_loop
    mackey_glass_loop = _mackey_glass_loop

else:
    rhs = _ref.rhs
    rk4_step = _ref.rk4_step
    integrate = _ref.integrate
    relax = _ref.relax
    lorenz_loop = _ref.lorenz_loop
    mackey_glass_loop = _ref.mackey_glass_loop
