"""Periodic method-of-lines solvers, the Hopf-Cole map and the filament flow."""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import cumulative_simpson

from . import kernels
from .frames import AmbientMetric, FrameState, default_frame, frame_residuals, reconstruct_curve
from .grids import EvolutionRun, NonPositiveSample, SampledField, StabilityViolation, derivative

__all__ = [
    "STABILITY_FACTOR",
    "solve_burgers",
    "solve_viscous_burgers",
    "solve_heat",
    "hopf_cole",
    "inverse_hopf_cole",
    "evolve_filament",
    "burgers_gauge_check",
    "heat_gauge_check",
]

STABILITY_FACTOR = 0.4


def _steps(T_end: float, dt: float) -> int:
    n = int(round(T_end / dt))
    if n < 1 or abs(n * dt - T_end) > 1e-9 * max(T_end, dt):
        raise ValueError(f"T_end={T_end} is not a whole number of steps dt={dt}")
    return n


def _check_stability(f: SampledField, dt: float, nu: float = 1.0):
    if not f.periodic:
        raise ValueError("method-of-lines solvers need a periodic grid")
    bound = STABILITY_FACTOR * f.step**2 / nu
    if dt > bound * (1 + 1e-12):
        raise StabilityViolation(f"dt={dt} exceeds the explicit bound {bound:.3e} = {STABILITY_FACTOR}*ds^2")


def _mol(f: SampledField, T_end, dt, save_every, nu, adv, drift, react, order) -> EvolutionRun:
    _check_stability(f, dt, nu)
    if order not in (2, 4):
        raise ValueError("stencil order must be 2 or 4")
    nsteps = _steps(T_end, dt)
    save_every = save_every or nsteps
    if nsteps % save_every:
        raise ValueError("save_every must divide the number of steps")
    snaps = kernels.mol_rk4(f.values, f.step, dt, nsteps, save_every, nu, adv, drift, react, order)
    times = dt * save_every * np.arange(snaps.shape[0])
    return EvolutionRun(dt, times, [f.with_values(row) for row in snaps])


def solve_burgers(tau0: SampledField, T_end: float, dt: float, save_every: int | None = None,
                  order: int = 2) -> EvolutionRun:
    """``tau_t = tau_ss + 2 tau tau_s`` (central differences, RK4)."""
    return _mol(tau0, T_end, dt, save_every, 1.0, 2.0, 0.0, 0.0, order)


def solve_viscous_burgers(u0: SampledField, T_end: float, dt: float, save_every: int | None = None,
                          order: int = 2) -> EvolutionRun:
    """``u_t = u_xx + u u_x``, the normalization in which the gauge map is stated."""
    return _mol(u0, T_end, dt, save_every, 1.0, 1.0, 0.0, 0.0, order)


def solve_heat(k0: SampledField, G: float, T_end: float, dt: float, save_every: int | None = None,
               d: float = 0.0, order: int = 2) -> EvolutionRun:
    """``k_t = k_ss + G k + d k``."""
    return _mol(k0, T_end, dt, save_every, 1.0, 0.0, 0.0, float(G) + float(d), order)


def hopf_cole(k: SampledField, accuracy: int = 4) -> SampledField:
    """``tau = k_s / k``."""
    if np.any(k.values <= 0):
        raise NonPositiveSample("Hopf-Cole needs strictly positive samples")
    return k.with_values(derivative(k, 1, accuracy) / k.values)


def inverse_hopf_cole(tau: SampledField, c: float = 1.0) -> SampledField:
    """``k(s) = c exp(int_{s0}^s tau)`` with Simpson quadrature, so ``k(s0) = c``."""
    if not c > 0:
        raise NonPositiveSample("scale constant must be positive")
    integral = cumulative_simpson(tau.values, dx=tau.step, initial=0.0)
    return tau.with_values(c * np.exp(integral))


def evolve_filament(
    tau0: SampledField,
    G: float,
    T_end: float,
    dt: float,
    save_every: int | None = None,
    init: FrameState | None = None,
    order: int = 4,
    h: float | None = None,
    reconstruct: bool = True,
) -> EvolutionRun:
    """Pseudo-null vortex filament ``gamma_t = N``.

    The torsion follows Burgers' flow; the frame at the first grid point is
    carried along by ``gamma_t = N, T_t = tau N, N_t = a N, B_t = tau T - a B``
    with ``a = tau_s + tau^2 + G`` (plus the ``G gamma`` ambient correction
    on ``B``); every snapshot curve is rebuilt from that anchor frame.
    """
    _check_stability(tau0, dt)
    metric = AmbientMetric(float(G))
    init = init or default_frame(metric)
    nsteps = _steps(T_end, dt)
    save_every = save_every or nsteps
    if nsteps % save_every:
        raise ValueError("save_every must divide the number of steps")
    taus, anchors = kernels.filament_rk4(
        tau0.values, tau0.step, dt, nsteps, save_every, float(G), init.as_array(), order, 0
    )
    times = dt * save_every * np.arange(taus.shape[0])
    fields = [tau0.with_values(row) for row in taus]
    curves = None
    if reconstruct:
        curves = [
            reconstruct_curve(f, metric, FrameState.from_array(a), h, tol=1e-8) for f, a in zip(fields, anchors)
        ]
    run = EvolutionRun(dt, times, fields, curves, anchors)
    run.meta["anchor_gram_drift"] = float(
        max(np.max(np.abs(v)) for v in frame_residuals(anchors, metric).values())
    )
    run.meta["G"] = float(G)
    return run


def gauge_transform(u: SampledField, a: float, b: float) -> SampledField:
    """``tau(s) = u(s / sqrt(b)) / (2 sqrt(b)) - a / (2 b)`` on the stretched grid."""
    rb = math.sqrt(b)
    target = SampledField(u.origin * rb, u.step * rb, np.zeros(u.count), u.periodic)
    resampled = u.spline()(target.s / rb)
    return target.with_values(resampled / (2 * rb) - a / (2 * b))


def burgers_gauge_check(u: EvolutionRun, a: float, b: float, accuracy: int = 4) -> dict:
    """Max residual of ``tau_t = b tau_ss + 2 b tau tau_s + a tau_s`` for the transformed run.

    Time derivatives use central differences between neighbouring snapshots,
    space derivatives use stencils of the given accuracy.
    """
    if not b > 0:
        raise ValueError("b must be positive")
    if len(u.fields) < 3:
        raise ValueError("need at least three snapshots")
    taus = [gauge_transform(f, a, b) for f in u.fields]
    worst = 0.0
    for i in range(1, len(taus) - 1):
        dt = u.times[i + 1] - u.times[i - 1]
        tt = (taus[i + 1].values - taus[i - 1].values) / dt
        ts = derivative(taus[i], 1, accuracy)
        tss = derivative(taus[i], 2, accuracy)
        res = tt - (b * tss + 2 * b * taus[i].values * ts + a * ts)
        worst = max(worst, float(np.max(np.abs(res))))
    return {"a": a, "b": b, "ds": taus[0].step, "max_residual": worst}


def heat_gauge_check(k0: SampledField, G: float, d: float, T_end: float, dt: float) -> dict:
    """Compare ``exp(-d t) k_d`` with the ``d = 0`` heat solution (relative max error)."""
    with_d = solve_heat(k0, G, T_end, dt, d=d)
    plain = solve_heat(k0, G, T_end, dt)
    gauged = math.exp(-d * T_end) * with_d.final().values
    ref = plain.final().values
    rel = float(np.max(np.abs(gauged - ref)) / np.max(np.abs(ref)))
    return {"d": d, "G": G, "T_end": T_end, "relative_error": rel}
