"""Seeded random elements of the differential algebra, for property checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .diffalg import TAU, DiffPoly, Generator, total_derivative, variational_derivative
from .geometry import FrenetField


def random_monomial(rng: random.Random, max_degree: int, max_order: int) -> tuple[int, ...]:
    deg = rng.randint(1, max_degree)
    exps = [0] * (max_order + 1)
    for _ in range(deg):
        exps[rng.randint(0, max_order)] += 1
    return tuple(exps)


def random_poly(
    rng: random.Random,
    max_degree: int = 3,
    max_order: int = 3,
    terms: int = 4,
    with_G: bool = True,
    constant: bool = False,
    generator: Generator = TAU,
) -> DiffPoly:
    """Random polynomial with small rational coefficients.

    Without ``constant`` the result lies in the ideal of polynomials with no
    constant term; ``with_G`` lets coefficients pick up powers of ``G``.
    """
    out = {}
    for _ in range(rng.randint(1, terms)):
        mono = random_monomial(rng, max_degree, max_order)
        e = rng.choice((0, 0, 1)) if with_G else 0
        c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3, 5]), rng.choice([1, 1, 2, 3]))
        out[(mono, e)] = out.get((mono, e), 0) + c
    if constant:
        out[((), 0)] = Fraction(rng.randint(-3, 3))
    return DiffPoly(out, generator)


def random_nonzero_poly(rng: random.Random, **kw) -> DiffPoly:
    while True:
        p = random_poly(rng, **kw)
        if p:
            return p


def random_non_exact(rng: random.Random, **kw) -> DiffPoly:
    """Random polynomial whose Euler operator does not vanish."""
    while True:
        p = random_poly(rng, **kw)
        if variational_derivative(p):
            return p


def random_exact(rng: random.Random, **kw) -> tuple[DiffPoly, DiffPoly]:
    """``(q, D q)`` for a random ``q`` with zero constant term."""
    q = random_nonzero_poly(rng, **kw)
    return q, total_derivative(q)


def random_evolution_field(rng: random.Random, max_degree: int = 2, max_order: int = 2) -> FrenetField:
    """``f T + g N`` with constant ``f``."""
    f = DiffPoly.const(rng.randint(-2, 2))
    g = random_poly(rng, max_degree=max_degree, max_order=max_order, terms=3, constant=rng.random() < 0.3)
    return FrenetField(f, g, 0)
