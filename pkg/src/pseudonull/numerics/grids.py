"""Uniform grid functions, finite-difference stencils and time-stepped runs."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

__all__ = [
    "NumericsError",
    "GridMismatch",
    "NonPositiveSample",
    "StabilityViolation",
    "SampledField",
    "EvolutionRun",
    "fd_weights",
    "derivative",
    "jets",
    "periodic_grid",
    "write_field_csv",
    "read_field_csv",
]


class NumericsError(ValueError):
    pass


class GridMismatch(NumericsError):
    pass


class NonPositiveSample(NumericsError):
    pass


class StabilityViolation(NumericsError):
    pass


@dataclass(frozen=True, eq=False)
class SampledField:
    """Samples ``values[i]`` at ``origin + i * step``.

    A periodic field does not repeat its first sample at the end; index
    ``count`` wraps to ``0``.
    """

    origin: float
    step: float
    values: np.ndarray
    periodic: bool = False

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1:
            raise ValueError("samples must be one-dimensional")
        if not self.step > 0:
            raise ValueError("grid step must be positive")
        if v.size < 4:
            raise ValueError("need at least 4 samples")
        object.__setattr__(self, "values", v)

    @classmethod
    def from_function(cls, fn, origin: float, length: float, count: int, periodic: bool = True) -> "SampledField":
        """Sample ``fn`` on ``count`` points.  Periodic grids exclude the endpoint."""
        step = length / count if periodic else length / (count - 1)
        s = origin + step * np.arange(count)
        return cls(origin, step, np.asarray(fn(s), dtype=float) * np.ones(count), periodic)

    @property
    def count(self) -> int:
        return self.values.size

    @property
    def s(self) -> np.ndarray:
        return self.origin + self.step * np.arange(self.count)

    @property
    def length(self) -> float:
        return self.step * (self.count if self.periodic else self.count - 1)

    def with_values(self, values) -> "SampledField":
        return SampledField(self.origin, self.step, values, self.periodic)

    def same_grid(self, other: "SampledField", rtol: float = 1e-12) -> bool:
        return (
            self.count == other.count
            and self.periodic == other.periodic
            and math.isclose(self.step, other.step, rel_tol=rtol)
            and math.isclose(self.origin, other.origin, rel_tol=rtol, abs_tol=rtol * self.step)
        )

    def spline(self):
        from scipy.interpolate import CubicSpline

        if self.periodic:
            s = self.origin + self.step * np.arange(self.count + 1)
            return CubicSpline(s, np.append(self.values, self.values[0]), bc_type="periodic")
        return CubicSpline(self.s, self.values)


@dataclass
class EvolutionRun:
    """Snapshots of a time-stepped computation; ``times[0] == 0``."""

    dt: float
    times: np.ndarray
    fields: list[SampledField]
    curves: list | None = None
    anchors: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        if self.times.size and self.times[0] != 0.0:
            raise ValueError("snapshot times must start at 0")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("snapshot times must increase strictly")

    @property
    def ds(self) -> float:
        return self.fields[0].step

    def final(self) -> SampledField:
        return self.fields[-1]

    def at(self, t: float, tol: float = 1e-9) -> int:
        """Index of the snapshot taken at time ``t``."""
        i = int(np.argmin(np.abs(self.times - t)))
        if abs(self.times[i] - t) > tol * max(1.0, abs(t)):
            raise KeyError(f"no snapshot at t={t}")
        return i

    def to_json(self) -> dict:
        return {
            "dt": self.dt,
            "ds": self.ds,
            "times": [float(t) for t in self.times],
            "fields": [[float(x) for x in f.values] for f in self.fields],
        }


def periodic_grid(count: int, length: float = 2 * math.pi, origin: float = 0.0) -> np.ndarray:
    return origin + (length / count) * np.arange(count)


@lru_cache(maxsize=None)
def fd_weights(offsets: tuple[int, ...], deriv: int) -> np.ndarray:
    """Weights ``w`` with ``sum_j w_j f(x + o_j h) = h^deriv f^(deriv)(x) + O(h^n)``."""
    n = len(offsets)
    if deriv >= n:
        raise ValueError("not enough stencil points")
    A = np.array([[o**i / math.factorial(i) for o in offsets] for i in range(n)], dtype=float)
    b = np.zeros(n)
    b[deriv] = 1.0
    w = np.linalg.solve(A, b)
    w.setflags(write=False)
    return w


def _half_width(deriv: int, accuracy: int) -> int:
    return (deriv + 1) // 2 - 1 + accuracy // 2


def derivative(f: SampledField | np.ndarray, deriv: int = 1, accuracy: int = 4, step: float | None = None,
               periodic: bool | None = None) -> np.ndarray:
    """Finite-difference derivative of order ``deriv``.

    Central stencils of the given accuracy in the interior (and everywhere
    for periodic fields); one-sided stencils of equal width at the ends of a
    non-periodic grid.
    """
    if isinstance(f, SampledField):
        values, step, periodic = f.values, f.step, f.periodic
    else:
        values = np.asarray(f, dtype=float)
        if step is None or periodic is None:
            raise ValueError("step and periodic are required for raw arrays")
    if deriv == 0:
        return values.copy()
    p = _half_width(deriv, accuracy)
    n = values.size
    scale = step**deriv
    if periodic:
        w = fd_weights(tuple(range(-p, p + 1)), deriv)
        out = np.zeros(n)
        for o, wj in zip(range(-p, p + 1), w):
            out += wj * np.roll(values, -o)
        return out / scale
    width = 2 * p + 1
    if n < width:
        raise GridMismatch(f"need at least {width} samples for this stencil")
    w = fd_weights(tuple(range(-p, p + 1)), deriv)
    out = np.empty(n)
    out[p : n - p] = sum(wj * values[p + o : n - p + o] for o, wj in zip(range(-p, p + 1), w))
    for i in list(range(p)) + list(range(n - p, n)):
        start = min(max(i - p, 0), n - width)
        offs = tuple(range(start - i, start - i + width))
        out[i] = fd_weights(offs, deriv) @ values[start : start + width]
    return out / scale


def jets(f: SampledField, count: int, accuracy: int = 6) -> list[np.ndarray]:
    """``[u, u', ..., u^(count)]`` by finite differences."""
    return [f.values.copy()] + [derivative(f, m, accuracy) for m in range(1, count + 1)]


def write_field_csv(path, f: SampledField) -> None:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["s", "value"])
        for s, v in zip(f.s, f.values):
            w.writerow([format(s, ".17g"), format(v, ".17g")])


def read_field_csv(path, periodic: bool = True) -> SampledField:
    with Path(path).open(newline="") as fh:
        rows = list(csv.reader(fh))
    if rows and rows[0][0].strip().lower() == "s":
        rows = rows[1:]
    s = np.array([float(r[0]) for r in rows])
    v = np.array([float(r[1]) for r in rows])
    steps = np.diff(s)
    if steps.size == 0 or not np.allclose(steps, steps[0], rtol=1e-9, atol=0):
        raise GridMismatch("CSV grid is not uniform")
    return SampledField(float(s[0]), float(steps.mean()), v, periodic)
