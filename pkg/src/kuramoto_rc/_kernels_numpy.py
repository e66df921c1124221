"""Pure numpy reference kernels.

These define the integration semantics; the numba twins in ``_kernels``
must agree with them to floating-point tolerance. They are slow enough
that production code only uses them when numba is unavailable or when
``KURAMOTO_RC_FORCE_NUMPY`` is set.
"""

from __future__ import annotations

import numpy as np

TWO_PI = 2.0 * np.pi


def rhs(theta, omega, lam_i, deg, indptr, indices, complete):
    """Coupled phase-velocity vector: w_i + (lam_i/k_i) sum_j A_ij sin(th_j - th_i)."""
    z = np.exp(1j * theta)
    if complete:
        field = z.sum()  # self term contributes sin(0) = 0
    else:
        field = np.add.reduceat(z[indices], indptr[:-1])
    acc = (np.conj(z) * field).imag
    return omega + lam_i / deg * acc


def _stage_phases(base, clamp_idx, clamp_vals):
    if clamp_idx.shape[0] == 0:
        return base
    out = base.copy()
    out[clamp_idx] = clamp_vals
    return out


def rk4_step(theta, omega, lam_i, deg, indptr, indices, complete, dt, clamp_idx, clamp3):
    """One classical RK4 step, returning reduced phases in [0, 2pi).

    ``clamp3`` holds the forced phases of clamped nodes at the stage times
    (t, t + dt/2, t + dt); pass shape (3, 0) when nothing is clamped.
    """
    th = _stage_phases(theta, clamp_idx, clamp3[0])
    k1 = rhs(th, omega, lam_i, deg, indptr, indices, complete)
    th = _stage_phases(theta + 0.5 * dt * k1, clamp_idx, clamp3[1])
    k2 = rhs(th, omega, lam_i, deg, indptr, indices, complete)
    th = _stage_phases(theta + 0.5 * dt * k2, clamp_idx, clamp3[1])
    k3 = rhs(th, omega, lam_i, deg, indptr, indices, complete)
    th = _stage_phases(theta + dt * k3, clamp_idx, clamp3[2])
    k4 = rhs(th, omega, lam_i, deg, indptr, indices, complete)
    new = theta + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if clamp_idx.shape[0]:
        new[clamp_idx] = clamp3[2]
    return new % TWO_PI


def integrate(theta, omega, lam_i, deg, indptr, indices, complete, dt, n_steps,
              sample_every, clamp_idx, clamp_half, freq_out, phase_out):
    """Advance ``n_steps`` RK4 steps in place, sampling every ``sample_every``.

    ``clamp_half`` holds clamp phases on the half-step grid, shape
    (2*n_steps + 1, p). ``freq_out`` (n_samples, n) receives the phase
    velocities at the sampled states; ``phase_out`` likewise when its first
    dimension is nonzero.
    """
    record_phases = phase_out.shape[0] > 0
    p = clamp_idx.shape[0]
    r = 0
    for k in range(n_steps):
        if p:
            clamp3 = clamp_half[2 * k:2 * k + 3]
        else:
            clamp3 = np.zeros((3, 0))
        theta[:] = rk4_step(theta, omega, lam_i, deg, indptr, indices, complete,
                            dt, clamp_idx, clamp3)
        if (k + 1) % sample_every == 0:
            freq_out[r] = rhs(theta, omega, lam_i, deg, indptr, indices, complete)
            if record_phases:
                phase_out[r] = theta
            r += 1


def relax(theta, omega, lam_i, deg, indptr, indices, complete, dt, max_steps,
          tol, check_every):
    """Integrate until the spread of phase velocities drops below ``tol``.

    Returns (steps_taken, locked). The state is checked before each step at
    ``check_every`` intervals and once after the final step.
    """
    empty_idx = np.zeros(0, dtype=np.int64)
    clamp3 = np.zeros((3, 0))
    for k in range(max_steps):
        if k % check_every == 0:
            k1 = rhs(theta, omega, lam_i, deg, indptr, indices, complete)
            if np.max(np.abs(k1 - k1.mean())) < tol:
                return k, True
        theta[:] = rk4_step(theta, omega, lam_i, deg, indptr, indices, complete,
                            dt, empty_idx, clamp3)
    k1 = rhs(theta, omega, lam_i, deg, indptr, indices, complete)
    return max_steps, bool(np.max(np.abs(k1 - k1.mean())) < tol)


def lorenz_loop(state0, sigma, rho, beta, dt, n_steps):
    """RK4 trace of the Lorenz system; returns (n_steps + 1, 3)."""
    def f(s):
        x, y, z = s
        return np.array([sigma * (y - x), x * (rho - z) - y, x * y - beta * z])

    out = np.empty((n_steps + 1, 3))
    out[0] = state0
    s = np.asarray(state0, dtype=np.float64)
    for k in range(n_steps):
        k1 = f(s)
        k2 = f(s + 0.5 * dt * k1)
        k3 = f(s + 0.5 * dt * k2)
        k4 = f(s + dt * k3)
        s = s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[k + 1] = s
    return out


def mackey_glass_loop(x_hist, beta, gamma, n_exp, delay_steps, dt, n_steps):
    """Fill ``x_hist`` past index ``delay_steps`` with the delayed-feedback flow.

    ``x_hist[:delay_steps + 1]`` must hold the pre-history; index
    ``delay_steps`` corresponds to t = 0. Stage lookups at half steps use
    linear interpolation of the stored grid.
    """
    def f(x, xd):
        return beta * xd / (1.0 + xd ** n_exp) - gamma * x

    for k in range(n_steps):
        i = delay_steps + k
        x = x_hist[i]
        xd1 = x_hist[k]
        xd2 = 0.5 * (x_hist[k] + x_hist[k + 1])
        xd4 = x_hist[k + 1]
        k1 = f(x, xd1)
        k2 = f(x + 0.5 * dt * k1, xd2)
        k3 = f(x + 0.5 * dt * k2, xd2)
        k4 = f(x + dt * k3, xd4)
        x_hist[i + 1] = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
