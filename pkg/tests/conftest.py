from __future__ import annotations

import os
from fractions import Fraction

import sympy as sp
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pseudonull import TAU, DiffPoly

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# ---------------------------------------------------------------- strategies

small_fractions = st.builds(
    Fraction, st.integers(-4, 4), st.sampled_from([1, 1, 2, 3])
).filter(bool)


@st.composite
def monomials(draw, max_order=3, max_degree=3):
    degree = draw(st.integers(0, max_degree))
    exps = [0] * (max_order + 1)
    for _ in range(degree):
        exps[draw(st.integers(0, max_order))] += 1
    return tuple(exps)


@st.composite
def diffpolys(draw, max_order=3, max_degree=3, max_terms=4, with_G=True, constant=True):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        mono = draw(monomials(max_order, max_degree))
        if not constant and not any(mono):
            continue
        e = draw(st.integers(0, 2)) if with_G else 0
        terms[(mono, e)] = draw(small_fractions)
    return DiffPoly(terms, TAU)


# ---------------------------------------------------------------- sympy oracle

s = sp.Symbol("s")
G = sp.Symbol("G")
u = sp.Function("u")


def to_sympy(p: DiffPoly, base=None):
    """``p`` as an expression in ``base(s)`` (default ``u(s)``) and its derivatives."""
    base = u(s) if base is None else base
    out = sp.Integer(0)
    for mono, gexp, c in p.items():
        term = sp.Rational(c.numerator, c.denominator) * G**gexp
        for m, e in enumerate(mono):
            if e:
                term *= sp.diff(base, s, m) ** e
        out += term
    return sp.expand(out)


def sympy_evolution(a: DiffPoly, p: DiffPoly):
    """Directional derivative of ``p`` along ``u -> u + eps a``."""
    eps = sp.Symbol("eps")
    shifted = to_sympy(p, u(s) + eps * to_sympy(a))
    return sp.expand(sp.diff(shifted, eps).subs(eps, 0).doit())


def sympy_euler(p: DiffPoly, max_order: int = 8):
    """``sum_m (-d/ds)^m dL/du^(m)`` with sympy differentiating in the jet variables."""
    expr = to_sympy(p)
    out = sp.Integer(0)
    for m in range(max_order + 1):
        var = sp.diff(u(s), s, m)
        out += (-1) ** m * sp.diff(sp.diff(expr, var), s, m)
    return sp.expand(out)


def same(p: DiffPoly, expr) -> bool:
    return sp.expand(to_sympy(p) - expr) == 0
