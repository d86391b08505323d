"""Pure numpy kernels; reference implementation for the compiled core."""

import numpy as np


def _d1(u, ds, order):
    if order == 2:
        return (np.roll(u, -1) - np.roll(u, 1)) / (2.0 * ds)
    return (-np.roll(u, -2) + 8.0 * np.roll(u, -1) - 8.0 * np.roll(u, 1) + np.roll(u, 2)) / (12.0 * ds)


def _d2(u, ds, order):
    if order == 2:
        return (np.roll(u, -1) - 2.0 * u + np.roll(u, 1)) / (ds * ds)
    return (-np.roll(u, -2) + 16.0 * np.roll(u, -1) - 30.0 * u + 16.0 * np.roll(u, 1) - np.roll(u, 2)) / (
        12.0 * ds * ds
    )


def mol_rhs(u, ds, nu, adv, drift, react, order):
    du = _d1(u, ds, order)
    return nu * _d2(u, ds, order) + adv * u * du + drift * du + react * u


def mol_rk4(u0, ds, dt, nsteps, save_every, nu, adv, drift, react, order):
    u = np.array(u0, dtype=float)
    out = np.empty((nsteps // save_every + 1, u.size))
    out[0] = u
    for step in range(1, nsteps + 1):
        k1 = mol_rhs(u, ds, nu, adv, drift, react, order)
        k2 = mol_rhs(u + 0.5 * dt * k1, ds, nu, adv, drift, react, order)
        k3 = mol_rhs(u + 0.5 * dt * k2, ds, nu, adv, drift, react, order)
        k4 = mol_rhs(u + dt * k3, ds, nu, adv, drift, react, order)
        u = u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if step % save_every == 0:
            out[step // save_every] = u
    return out


def _frenet_rhs(x, tau, G):
    g, T, N, B = x
    return np.array([T, N - G * g, tau * N, T - tau * B])


def frenet_rk4(tau_half, h, G, state0, stride):
    """RK4 for (gamma, T, N, B); ``tau_half[j]`` is torsion at ``s0 + j h / 2``."""
    nsteps = (len(tau_half) - 1) // 2
    x = np.array(state0, dtype=float)
    out = np.empty((nsteps // stride + 1,) + x.shape)
    out[0] = x
    for i in range(nsteps):
        t0, tm, t1 = tau_half[2 * i], tau_half[2 * i + 1], tau_half[2 * i + 2]
        k1 = _frenet_rhs(x, t0, G)
        k2 = _frenet_rhs(x + 0.5 * h * k1, tm, G)
        k3 = _frenet_rhs(x + 0.5 * h * k2, tm, G)
        k4 = _frenet_rhs(x + h * k3, t1, G)
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if (i + 1) % stride == 0:
            out[(i + 1) // stride] = x
    return out


def _filament_rhs(u, x, ds, G, order, idx):
    du = _d1(u, ds, order)
    ut = _d2(u, ds, order) + 2.0 * u * du
    ta = u[idx]
    alpha = du[idx] + ta * ta + G
    g, T, N, B = x
    xt = np.array([N, ta * N, alpha * N, ta * T - alpha * B + G * g])
    return ut, xt


def filament_rk4(tau0, ds, dt, nsteps, save_every, G, anchor0, order, idx):
    """Burgers flow of torsion co-evolved with the frame at grid index ``idx``."""
    u = np.array(tau0, dtype=float)
    x = np.array(anchor0, dtype=float)
    nsave = nsteps // save_every + 1
    taus = np.empty((nsave, u.size))
    frames = np.empty((nsave,) + x.shape)
    taus[0], frames[0] = u, x
    for step in range(1, nsteps + 1):
        a1, b1 = _filament_rhs(u, x, ds, G, order, idx)
        a2, b2 = _filament_rhs(u + 0.5 * dt * a1, x + 0.5 * dt * b1, ds, G, order, idx)
        a3, b3 = _filament_rhs(u + 0.5 * dt * a2, x + 0.5 * dt * b2, ds, G, order, idx)
        a4, b4 = _filament_rhs(u + dt * a3, x + dt * b3, ds, G, order, idx)
        u = u + (dt / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        x = x + (dt / 6.0) * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
        if step % save_every == 0:
            taus[step // save_every] = u
            frames[step // save_every] = x
    return taus, frames
