"""Variation calculus for pseudo-null curves.

Vector fields along a pseudo-null curve are written in the Frenet frame
``V = f T + g N + h B`` with components in the torsion algebra, or in a
parallel frame ``V = f~ T + g~ xi + h~ eta`` with components in the
curvature algebra.  The frame derivation ``D_V`` and the Lie bracket are
only defined here for evolution fields (``h = 0`` and ``f`` constant),
which is where they close.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diffalg import KAPPA, TAU, Coefficient, DiffPoly, evolution_derivation, total_derivative

__all__ = [
    "InvalidField",
    "FrenetField",
    "ParallelField",
    "VariationData",
    "TangencyReport",
    "FrameMatrix",
    "variation_coefficients",
    "tangency_check",
    "torsion_variation",
    "curvature_variation",
    "frame_derivation",
    "derive_field",
    "lie_bracket",
    "inner",
    "curvature_identity_check",
]


class InvalidField(ValueError):
    """A vector field does not satisfy the precondition of an operation."""


_t = DiffPoly.var(0, TAU)
_G = DiffPoly.G(TAU)


def _d(p: DiffPoly) -> DiffPoly:
    return total_derivative(p)


def _poly(x, gen=TAU) -> DiffPoly:
    if isinstance(x, DiffPoly):
        if x.generator is not gen:
            raise InvalidField(f"component over {x.generator.name}, expected {gen.name}")
        return x
    if isinstance(x, str):
        from .expr import parse

        return parse(x, gen)
    return DiffPoly.const(x, gen)


@dataclass(frozen=True)
class FrenetField:
    """``f T + g N + h B`` with components in the torsion algebra."""

    f: DiffPoly
    g: DiffPoly
    h: DiffPoly

    def __post_init__(self):
        for name in ("f", "g", "h"):
            object.__setattr__(self, name, _poly(getattr(self, name)))

    @classmethod
    def T(cls) -> "FrenetField":
        return cls(1, 0, 0)

    @classmethod
    def N(cls) -> "FrenetField":
        return cls(0, 1, 0)

    @classmethod
    def B(cls) -> "FrenetField":
        return cls(0, 0, 1)

    @classmethod
    def zero(cls) -> "FrenetField":
        return cls(0, 0, 0)

    @classmethod
    def parse(cls, text: str) -> "FrenetField":
        """Read ``"f;g;h"``."""
        parts = text.split(";")
        if len(parts) != 3:
            raise ValueError(f"expected 'f;g;h', got {text!r}")
        return cls(*(p.strip() or "0" for p in parts))

    def components(self) -> tuple[DiffPoly, DiffPoly, DiffPoly]:
        return (self.f, self.g, self.h)

    def is_evolution(self) -> bool:
        return self.h.is_zero() and self.f.is_constant()

    def is_zero(self) -> bool:
        return not (self.f or self.g or self.h)

    def __add__(self, other: "FrenetField") -> "FrenetField":
        return FrenetField(self.f + other.f, self.g + other.g, self.h + other.h)

    def __sub__(self, other: "FrenetField") -> "FrenetField":
        return FrenetField(self.f - other.f, self.g - other.g, self.h - other.h)

    def __neg__(self) -> "FrenetField":
        return FrenetField(-self.f, -self.g, -self.h)

    def scale(self, a) -> "FrenetField":
        return FrenetField(self.f * a, self.g * a, self.h * a)

    def format(self) -> str:
        return f"{self.f.format()};{self.g.format()};{self.h.format()}"

    def to_json(self) -> dict[str, str]:
        return {"f": self.f.format(), "g": self.g.format(), "h": self.h.format()}

    def __str__(self):
        return self.format()


@dataclass(frozen=True)
class ParallelField:
    """``f~ T + g~ xi + h~ eta`` with components in the curvature algebra."""

    f: DiffPoly
    g: DiffPoly
    h: DiffPoly

    def __post_init__(self):
        for name in ("f", "g", "h"):
            object.__setattr__(self, name, _poly(getattr(self, name), KAPPA))

    def is_evolution(self) -> bool:
        return self.h.is_zero() and self.f.is_constant()


@dataclass(frozen=True)
class VariationData:
    rho: DiffPoly
    phi: DiffPoly
    psi: DiffPoly
    alpha: DiffPoly

    def to_json(self) -> dict[str, str]:
        return {k: getattr(self, k).format() for k in ("rho", "phi", "psi", "alpha")}


@dataclass(frozen=True)
class TangencyReport:
    pseudo_null_ok: bool
    arclength_ok: bool
    pseudo_null_residual: DiffPoly
    arclength_residual: DiffPoly

    @property
    def ok(self) -> bool:
        return self.pseudo_null_ok and self.arclength_ok


# ordered basis (T, N, B); rows give D_V T, D_V N, D_V B
FrameMatrix = tuple[tuple[DiffPoly, DiffPoly, DiffPoly], ...]


def variation_coefficients(V: FrenetField) -> VariationData:
    f, g, h = V.components()
    rho = _d(f) + h
    phi = f + _d(g) + _t * g
    psi = _d(h) - _t * h
    alpha = _d(phi) + _t * phi + _G * g - rho
    return VariationData(rho, phi, psi, alpha)


def tangency_check(V: FrenetField) -> TangencyReport:
    f, _, h = V.components()
    dh = _d(h)
    pn = _d(dh) - 2 * _t * dh + (_t * _t - _d(_t) + _G) * h
    al = _d(f) + h
    return TangencyReport(pn.is_zero(), al.is_zero(), pn, al)


def _require_tangent(V: FrenetField):
    report = tangency_check(V)
    if not report.ok:
        raise InvalidField(
            f"field {V} is not tangent to the pseudo-null curve space "
            f"(pseudo-null residual {report.pseudo_null_residual}, arc-length residual {report.arclength_residual})"
        )


def _require_evolution(V: FrenetField):
    if not V.is_evolution():
        raise InvalidField(f"field {V} is not an evolution field (need h = 0 and constant f)")


def torsion_variation(V: FrenetField) -> DiffPoly:
    """``V(tau) = alpha' + psi - tau rho`` for a field tangent to the curve space."""
    _require_tangent(V)
    c = variation_coefficients(V)
    return _d(c.alpha) + c.psi - _t * c.rho


def curvature_variation(V: ParallelField, d=0) -> DiffPoly:
    """``V(k) = g~'' + k' f~ + G g~ + d k`` for an evolution field in the parallel frame."""
    if not V.is_evolution():
        raise InvalidField("curvature variation needs h~ = 0 and constant f~")
    k = DiffPoly.var(0, KAPPA)
    dk = DiffPoly.var(1, KAPPA)
    return _d(_d(V.g)) + dk * V.f + DiffPoly.G(KAPPA) * V.g + k * Coefficient.of(d)


def frame_derivation(V: FrenetField) -> FrameMatrix:
    _require_evolution(V)
    c = variation_coefficients(V)
    z = DiffPoly.zero(TAU)
    return (
        (z, c.phi, c.psi),
        (c.psi, c.alpha, z),
        (c.phi, z, -c.alpha),
    )


def _apply(V: FrenetField, vt: DiffPoly, M: FrameMatrix, U: FrenetField) -> FrenetField:
    # D_V (a T + b N + c B) = V(a) T + V(b) N + V(c) B + a D_V T + b D_V N + c D_V B
    comps = U.components()
    out = [evolution_derivation(vt, x) for x in comps]
    for row, x in zip(M, comps):
        if x:
            for j in range(3):
                if row[j]:
                    out[j] = out[j] + x * row[j]
    return FrenetField(*out)


def derive_field(V: FrenetField, U: FrenetField) -> FrenetField:
    """Tensor derivation ``D_V U`` for an evolution field ``V``."""
    M = frame_derivation(V)
    return _apply(V, torsion_variation(V), M, U)


def lie_bracket(V1: FrenetField, V2: FrenetField) -> FrenetField:
    """``[V1, V2] = D_{V1} V2 - D_{V2} V1``."""
    return derive_field(V1, V2) - derive_field(V2, V1)


def inner(U: FrenetField, V: FrenetField) -> DiffPoly:
    """Pointwise metric with ``<T,T> = 1``, ``<N,B> = -1`` and all others zero."""
    return U.f * V.f - U.g * V.h - U.h * V.g


def curvature_identity_check(V1: FrenetField, V2: FrenetField, U: FrenetField) -> FrenetField:
    """Residual of ``D_[V1,V2] U - D_V1 D_V2 U + D_V2 D_V1 U - G(<U,V1> V2 - <U,V2> V1)``."""
    lhs = derive_field(lie_bracket(V1, V2), U) - derive_field(V1, derive_field(V2, U)) + derive_field(
        V2, derive_field(V1, U)
    )
    rhs = V2.scale(inner(U, V1)) - V1.scale(inner(U, V2))
    return lhs - rhs.scale(_G)
