"""Pseudo-null curves in ambient coordinates: frames, reconstruction, cylinder invariants."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .grids import GridMismatch, NonPositiveSample, NumericsError, SampledField, derivative

__all__ = [
    "InvalidInitialFrame",
    "StepMismatch",
    "AmbientMetric",
    "FrameState",
    "FramedCurve",
    "default_frame",
    "frame_residuals",
    "reconstruct_curve",
    "CylinderReport",
    "cylinder_check",
    "ParallelFrameSamples",
    "parallel_frame_samples",
]


class InvalidInitialFrame(NumericsError):
    pass


class StepMismatch(NumericsError):
    pass


@dataclass(frozen=True)
class AmbientMetric:
    """Flat pseudo-Euclidean space in which ``M^3_1(G)`` is realized.

    ``G = 0``: R^3_1 with signs (+,+,-).  ``G > 0``: hyperquadric
    ``<x,x> = 1/G`` in R^4_1.  ``G < 0``: hyperquadric ``<x,x> = 1/G`` in R^4_2.
    """

    G: float = 0.0

    @property
    def dimension(self) -> int:
        return 3 if self.G == 0 else 4

    @property
    def signs(self) -> tuple[float, ...]:
        if self.G == 0:
            return (1.0, 1.0, -1.0)
        if self.G > 0:
            return (1.0, 1.0, 1.0, -1.0)
        return (1.0, 1.0, -1.0, -1.0)

    def inner(self, x, y) -> np.ndarray:
        return np.sum(np.asarray(self.signs) * np.asarray(x) * np.asarray(y), axis=-1)


@dataclass(frozen=True, eq=False)
class FrameState:
    gamma: np.ndarray
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray

    @classmethod
    def from_array(cls, a) -> "FrameState":
        a = np.asarray(a, dtype=float)
        return cls(a[0].copy(), a[1].copy(), a[2].copy(), a[3].copy())

    def as_array(self) -> np.ndarray:
        return np.array([self.gamma, self.T, self.N, self.B], dtype=float)


class FramedCurve:
    """Frames ``(gamma, T, N, B)`` at the samples of an arc-length grid."""

    def __init__(self, s: np.ndarray, data: np.ndarray, metric: AmbientMetric):
        self.s = np.asarray(s, dtype=float)
        self.data = np.asarray(data, dtype=float)  # (n, 4, dim)
        self.metric = metric

    def __len__(self):
        return self.data.shape[0]

    def __getitem__(self, i) -> FrameState:
        return FrameState.from_array(self.data[i])

    def __iter__(self):
        return (self[i] for i in range(len(self)))

    @property
    def gamma(self):
        return self.data[:, 0]

    @property
    def T(self):
        return self.data[:, 1]

    @property
    def N(self):
        return self.data[:, 2]

    @property
    def B(self):
        return self.data[:, 3]

    @property
    def step(self) -> float:
        return float(self.s[1] - self.s[0])

    def rows(self):
        """CSV rows: ``s`` then the ambient coordinates of gamma, T, N, B."""
        for s, frame in zip(self.s, self.data):
            yield [s, *frame.reshape(-1)]

    def header(self) -> list[str]:
        dim = self.data.shape[2]
        return ["s"] + [f"{v}{j}" for v in ("gamma", "T", "N", "B") for j in range(dim)]


def default_frame(metric: AmbientMetric) -> FrameState:
    """Explicit pseudo-orthonormal seed.

    The Lorentzian 3-space spanned by the frame uses coordinates with signs
    (+, +, -); for ``G != 0`` the point ``gamma`` sits on the remaining
    axis, scaled so that ``<gamma, gamma> = 1/G``.
    """
    r = 1.0 / math.sqrt(2.0)
    if metric.G == 0:
        return FrameState(np.zeros(3), np.array([1.0, 0, 0]), np.array([0, r, r]), np.array([0, -r, r]))
    if metric.G > 0:
        frame_axes, normal_axis = (0, 1, 3), 2
    else:
        frame_axes, normal_axis = (0, 1, 2), 3
    a, b, c = frame_axes

    def vec(**entries):
        v = np.zeros(4)
        for k, x in entries.items():
            v[{"a": a, "b": b, "c": c, "n": normal_axis}[k]] = x
        return v

    return FrameState(
        vec(n=1.0 / math.sqrt(abs(metric.G))),
        vec(a=1.0),
        vec(b=r, c=r),
        vec(b=-r, c=r),
    )


def frame_residuals(data: np.ndarray, metric: AmbientMetric) -> dict[str, np.ndarray]:
    """Deviation of each frame relation at every sample; ``data`` is ``(..., 4, dim)``."""
    data = np.asarray(data, dtype=float)
    g, T, N, B = (data[..., i, :] for i in range(4))
    ip = metric.inner
    out = {
        "TT": ip(T, T) - 1.0,
        "NB": ip(N, B) + 1.0,
        "TN": ip(T, N),
        "TB": ip(T, B),
        "NN": ip(N, N),
        "BB": ip(B, B),
    }
    if metric.G != 0:
        out["hyperquadric"] = ip(g, g) - 1.0 / metric.G
        out["gT"] = ip(g, T)
        out["gN"] = ip(g, N)
        out["gB"] = ip(g, B)
    return out


_GRAM_KEYS = ("TT", "NB", "TN", "TB", "NN", "BB")


def max_gram_residual(data, metric: AmbientMetric) -> float:
    res = frame_residuals(data, metric)
    return float(max(np.max(np.abs(res[k])) for k in _GRAM_KEYS))


def max_hyperquadric_drift(data, metric: AmbientMetric) -> float:
    if metric.G == 0:
        return 0.0
    res = frame_residuals(data, metric)
    return float(max(np.max(np.abs(res[k])) for k in ("hyperquadric", "gT", "gN", "gB")))


def _check_initial(init: FrameState, metric: AmbientMetric, tol: float):
    arr = init.as_array()
    if arr.shape != (4, metric.dimension):
        raise InvalidInitialFrame(f"frame has shape {arr.shape}, metric needs (4, {metric.dimension})")
    res = frame_residuals(arr, metric)
    bad = {k: float(v) for k, v in res.items() if abs(v) > tol * (1.0 if k != "hyperquadric" else max(1.0, 1 / abs(metric.G)))}
    if bad:
        raise InvalidInitialFrame(f"initial frame violates {bad}")


def reconstruct_curve(
    tau: SampledField,
    metric: AmbientMetric | None = None,
    init: FrameState | None = None,
    h: float | None = None,
    tol: float = 1e-12,
) -> FramedCurve:
    """Integrate ``gamma' = T, T' = N - G gamma, N' = tau N, B' = T - tau B``.

    Classical RK4 with step ``h`` (which must divide the grid step); torsion
    between samples comes from a cubic spline.  Frames are returned at the
    grid samples.
    """
    metric = metric or AmbientMetric(0.0)
    init = init or default_frame(metric)
    _check_initial(init, metric, tol)
    h = tau.step if h is None else float(h)
    ratio = tau.step / h
    sub = int(round(ratio))
    if sub < 1 or abs(ratio - sub) > 1e-9 * ratio:
        raise StepMismatch(f"integration step {h} does not divide grid step {tau.step}")
    nsteps = (tau.count - 1) * sub
    s_half = tau.origin + 0.5 * h * np.arange(2 * nsteps + 1)
    tau_half = tau.spline()(s_half)
    # spline nodes are reproduced exactly at the samples
    tau_half[:: 2 * sub] = tau.values
    out = kernels.frenet_rk4(tau_half, h, float(metric.G), init.as_array(), sub)
    return FramedCurve(tau.s, out, metric)


@dataclass(frozen=True)
class CylinderReport:
    parallelism: float
    hyperplane: float
    offset: float

    def ok(self, tol: float) -> bool:
        return self.parallelism <= tol and self.hyperplane <= tol


def _check_grid(curve: FramedCurve, k: SampledField):
    if len(curve) != k.count or not math.isclose(curve.step, k.step, rel_tol=1e-9) or not math.isclose(
        curve.s[0], k.origin, rel_tol=1e-9, abs_tol=1e-12
    ):
        raise GridMismatch("curve and field are sampled on different grids")


def cylinder_check(curve: FramedCurve, k: SampledField, metric: AmbientMetric | None = None) -> CylinderReport:
    """Check that ``xi = N / k`` is constant and the curve lies in ``<x, xi0> = r``."""
    metric = metric or curve.metric
    _check_grid(curve, k)
    if np.any(k.values <= 0):
        raise NonPositiveSample("pseudo-curvature must be positive")
    xi = curve.N / k.values[:, None]
    xi0 = xi[0]
    parallel = float(np.max(np.linalg.norm(xi - xi0, axis=1)))
    if metric.G == 0:
        offset = 0.0
        plane = float(np.max(np.abs(metric.inner(curve.gamma - curve.gamma[0], xi0))))
    else:
        offset = float(metric.inner(curve.gamma[0], xi0))
        plane = float(np.max(np.abs(metric.inner(curve.gamma, xi0) - offset)))
    return CylinderReport(parallel, plane, offset)


@dataclass(frozen=True)
class ParallelFrameSamples:
    xi: np.ndarray
    eta: np.ndarray
    xi_residual: float
    eta_residual: float

    def pairs(self) -> list[tuple[np.ndarray, np.ndarray]]:
        return list(zip(self.xi, self.eta))


def parallel_frame_samples(curve: FramedCurve, k: SampledField, accuracy: int = 4) -> ParallelFrameSamples:
    """``xi = N / k`` and ``eta = k B`` with the residuals of ``nabla_T xi = 0``, ``nabla_T eta = k T``."""
    _check_grid(curve, k)
    if np.any(k.values <= 0):
        raise NonPositiveSample("pseudo-curvature must be positive")
    metric = curve.metric
    kk = k.values[:, None]
    xi = curve.N / kk
    eta = curve.B * kk

    def cov(X):
        dX = np.stack([derivative(X[:, j], 1, accuracy, step=curve.step, periodic=False) for j in range(X.shape[1])], 1)
        if metric.G:
            dX = dX + metric.G * metric.inner(curve.T, X)[:, None] * curve.gamma
        return dX

    xi_res = float(np.max(np.abs(cov(xi))))
    eta_res = float(np.max(np.abs(cov(eta) - kk * curve.T)))
    return ParallelFrameSamples(xi, eta, xi_res, eta_res)
