"""Recursion operators, hierarchies of commuting flows and symmetry tests."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .diffalg import (
    KAPPA,
    TAU,
    DiffPoly,
    Generator,
    antiderivative,
    commutator,
    total_derivative,
)
from .geometry import FrenetField, InvalidField, ParallelField, curvature_variation, torsion_variation

__all__ = [
    "RecursionOperator",
    "HierarchyLevel",
    "apply",
    "apply_polynomial",
    "burgers_operator",
    "geometric_recursion_step",
    "generate_hierarchy",
    "operator_flow",
    "is_symmetry",
    "recursion_chain",
]


@dataclass(frozen=True)
class RecursionOperator:
    """``sum_i c_i D^{p_i}`` with powers ``p_i >= -1``.

    ``D^{-1}`` is the antiderivative normalized to have no constant term.
    """

    terms: tuple[tuple[int, DiffPoly], ...]

    def __post_init__(self):
        powers = [p for p, _ in self.terms]
        if len(set(powers)) != len(powers):
            raise ValueError("at most one coefficient per power")
        if any(p < -1 for p in powers):
            raise ValueError("powers must be >= -1")
        gens = {c.generator for _, c in self.terms}
        if len(gens) > 1:
            raise ValueError("mixed generators in operator coefficients")
        object.__setattr__(self, "terms", tuple(sorted(self.terms, key=lambda t: t[0])))

    @property
    def generator(self) -> Generator:
        return self.terms[0][1].generator if self.terms else TAU

    def __str__(self):
        parts = []
        for p, c in self.terms:
            op = {-1: "D^-1", 0: "", 1: "D"}.get(p, f"D^{p}")
            parts.append(f"({c})" + (f"*{op}" if op else ""))
        return " + ".join(parts) or "0"


def burgers_operator(generator: Generator = TAU) -> RecursionOperator:
    """``u' D^{-1} + u + D``, the recursion operator of ``u_t = u'' + 2 u u'``."""
    u = DiffPoly.var(0, generator)
    return RecursionOperator(((-1, DiffPoly.var(1, generator)), (0, u), (1, DiffPoly.const(1, generator))))


def apply(R: RecursionOperator, p: DiffPoly) -> DiffPoly:
    result = DiffPoly.zero(p.generator)
    if p.is_zero():
        return result
    for power, coeff in R.terms:
        if power == -1:
            image = antiderivative(p)
        else:
            image = p
            for _ in range(power):
                image = total_derivative(image)
        result = result + coeff * image
    return result


def apply_polynomial(R: RecursionOperator, coeffs: Sequence, p: DiffPoly) -> DiffPoly:
    """``sum_i coeffs[i] R^i (p)``; coefficients are scalars or constant polys."""
    result = DiffPoly.zero(p.generator)
    power = p
    for i, c in enumerate(coeffs):
        if i:
            power = apply(R, power)
        if c:
            result = result + power * c
    return result


def operator_flow(g: DiffPoly) -> DiffPoly:
    """``(R^2 + G)(g')`` for ``g`` with zero constant term."""
    R = burgers_operator(g.generator)
    return apply_polynomial(R, [DiffPoly.G(g.generator), 0, 1], total_derivative(g))


def is_symmetry(f: DiffPoly, sigma: DiffPoly) -> tuple[bool, DiffPoly]:
    residual = commutator(f, sigma)
    return residual.is_zero(), residual


def recursion_chain(seed: DiffPoly, steps: int, R: RecursionOperator | None = None) -> list[DiffPoly]:
    """``[seed, R seed, ..., R^steps seed]``."""
    R = R or burgers_operator(seed.generator)
    out = [seed]
    for _ in range(steps):
        out.append(apply(R, out[-1]))
    return out


def geometric_recursion_step(V: FrenetField) -> FrenetField:
    """``nabla_T V = (f + g' + tau g) N`` for an evolution field."""
    if not V.is_evolution():
        raise InvalidField(f"field {V} is not an evolution field")
    t = DiffPoly.var(0, TAU)
    return FrenetField(0, V.f + total_derivative(V.g) + t * V.g, 0)


@dataclass(frozen=True)
class HierarchyLevel:
    n: int
    field: FrenetField
    tau_flow: DiffPoly
    k_flow: DiffPoly

    @property
    def g(self) -> DiffPoly:
        return self.field.g

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "field": self.field.format(),
            "tau_flow": self.tau_flow.format(),
            "k_flow": self.k_flow.format(),
        }


def _parallel_counterpart(n: int) -> ParallelField:
    # V_0 = T; V_n = k^(n-1) xi for n >= 1
    if n == 0:
        return ParallelField(1, 0, 0)
    return ParallelField(0, DiffPoly.var(n - 1, KAPPA), 0)


def generate_hierarchy(levels: int = 5, d=0) -> list[HierarchyLevel]:
    """First ``levels`` members of the geometric hierarchy ``V_0 = T, V_{n+1} = nabla_T V_n``."""
    if levels < 1:
        raise ValueError("levels must be >= 1")
    out = []
    V = FrenetField.T()
    for n in range(levels):
        if n:
            V = geometric_recursion_step(V)
        out.append(HierarchyLevel(n, V, torsion_variation(V), curvature_variation(_parallel_counterpart(n), d)))
    return out
