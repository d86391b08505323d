from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from conftest import diffpolys, s, same, sympy_euler, sympy_evolution, to_sympy
from hypothesis import given
from hypothesis import strategies as st

from pseudonull import (
    KAPPA,
    TAU,
    Coefficient,
    DiffMonomial,
    DiffPoly,
    GeneratorMismatch,
    NotTotalDerivative,
    antiderivative,
    commutator,
    evolution_derivation,
    frechet,
    parse,
    total_derivative,
    variational_derivative,
)

P = parse


# ---------------------------------------------------------------- worked examples


@pytest.mark.parametrize(
    "p, expected",
    [("t", "t1"), ("t*t1", "t1^2 + t*t2"), ("t1 + t^2", "t2 + 2*t*t1"), ("G*t^3", "3*G*t^2*t1"), ("5", "0")],
)
def test_total_derivative_examples(p, expected):
    assert total_derivative(P(p)) == P(expected)


@pytest.mark.parametrize(
    "a, p, expected",
    [
        ("t^2", "t", "t^2"),
        ("t1", "t*t2", "t1*t2 + t*t3"),
        ("t^2", "t2", "2*t1^2 + 2*t*t2"),
    ],
)
def test_evolution_derivation_examples(a, p, expected):
    assert evolution_derivation(P(a), P(p)) == P(expected)


@pytest.mark.parametrize(
    "a, b, expected",
    [("t2 + 2*t*t1", "t", "t2 + 4*t*t1"), ("t", "t2 + t", "t2 + t"), ("t^2", "t1", "2*t*t1")],
)
def test_frechet_examples(a, b, expected):
    assert frechet(P(a), P(b)) == P(expected)


def test_frechet_is_linear_in_direction():
    a = P("t2 + 2*t*t1")
    b = P("t3 - t^2")
    assert frechet(a, b) == total_derivative(total_derivative(b)) + 2 * P("t") * total_derivative(b) + 2 * P("t1") * b


@pytest.mark.parametrize(
    "a, b, expected",
    [
        ("t1", "t*t2", "0"),
        ("t2 + 2*t*t1", "t^2", "-2*t1^2 - 2*t^2*t1"),
        ("t2 + 2*t*t1", "t3 + 3*t*t2 + 3*t1^2 + (G + 3*t^2)*t1", "0"),
    ],
)
def test_commutator_examples(a, b, expected):
    assert commutator(P(a), P(b)) == P(expected)


@pytest.mark.parametrize("p, expected", [("t*t1", "0"), ("t^2", "2*t"), ("t1^2", "-2*t2"), ("G", "0")])
def test_variational_derivative_examples(p, expected):
    assert variational_derivative(P(p)) == P(expected)


@pytest.mark.parametrize("p, expected", [("t*t1", "1/2*t^2"), ("t2 + 2*t*t1", "t1 + t^2"), ("0", "0")])
def test_antiderivative_examples(p, expected):
    assert antiderivative(P(p)) == P(expected)


@pytest.mark.parametrize("p", ["t^2", "t1^2", "t*t2", "t + 1", "G"])
def test_antiderivative_rejects(p):
    with pytest.raises(NotTotalDerivative):
        antiderivative(P(p))


def test_antiderivative_with_G_coefficients():
    q = P("G*t1*t + G^2*t^3 - 1/2*t2^2")
    assert antiderivative(total_derivative(q)) == q


# ---------------------------------------------------------------- structure


def test_coefficient_arithmetic():
    c = Coefficient({0: 2, 1: Fraction(1, 2)})
    assert c * c == Coefficient({0: 4, 1: 2, 2: Fraction(1, 4)})
    assert c - c == 0
    assert c.evaluate(2) == 3
    assert Coefficient.of(3).is_rational() and Coefficient.of(3).rational() == 3
    assert not Coefficient.G().is_rational()


def test_monomial_helpers():
    m = DiffMonomial((1, 0, 2, 0, 0))
    assert tuple(m) == (1, 0, 2)
    assert m.degree == 3 and m.order == 2
    assert DiffMonomial.from_map({2: 2, 0: 1}) == m
    assert DiffMonomial().order == -1


def test_polynomial_properties():
    p = P("t3*t + G*t1^2 - 4")
    assert p.order == 3 and p.degree == 2
    assert p.constant_term() == -4 and not p.in_P0()
    assert (p + 4).in_P0()
    assert P("G + 3").is_constant()
    assert p.coefficient_of((0, 2)) == Coefficient.G()
    assert p.substitute_G(2) == P("t3*t + 2*t1^2 - 4")


def test_equality_with_scalars():
    assert P("3") == 3
    assert P("1/2") == Fraction(1, 2)
    assert P("G") == Coefficient.G()
    assert hash(P("t + t1")) == hash(P("t1 + t"))


def test_generators_do_not_mix():
    with pytest.raises(GeneratorMismatch):
        P("t") + P("k")
    with pytest.raises(GeneratorMismatch):
        commutator(P("t1"), P("k1"))
    assert P("t2 + G*t").with_generator(KAPPA) == P("k2 + G*k")


def test_evaluate_on_jets():
    x = np.linspace(0, 1, 7)
    jets = [np.sin(x), np.cos(x), -np.sin(x)]
    p = P("t*t1 + G*t2")
    assert np.allclose(p.evaluate(jets, G=2.0), np.sin(x) * np.cos(x) - 2 * np.sin(x))


def test_power_and_negative_exponent():
    assert P("t + 1") ** 2 == P("t^2 + 2*t + 1")
    with pytest.raises(ValueError):
        P("t") ** -1


# ---------------------------------------------------------------- independent oracle


@given(diffpolys())
def test_total_derivative_matches_sympy(p):
    assert same(total_derivative(p), sp.diff(to_sympy(p), s))


@given(diffpolys(max_order=2, max_terms=3), diffpolys(max_order=2, max_degree=2, max_terms=3))
def test_evolution_derivation_matches_sympy(p, a):
    assert same(evolution_derivation(a, p), sympy_evolution(a, p))


@given(diffpolys(max_order=2, max_terms=3))
def test_variational_derivative_matches_sympy(p):
    assert same(variational_derivative(p), sympy_euler(p))


# ---------------------------------------------------------------- algebraic laws


@given(diffpolys(), diffpolys())
def test_total_derivative_is_a_derivation(p, q):
    D = total_derivative
    assert D(p * q) == D(p) * q + p * D(q)
    assert D(p + q) == D(p) + D(q)


@given(diffpolys(max_order=2, max_degree=2, max_terms=3), diffpolys(max_order=2), diffpolys(max_order=2))
def test_evolution_derivation_laws(a, p, q):
    d = evolution_derivation
    assert d(a, p * q) == d(a, p) * q + p * d(a, q)
    assert d(a, total_derivative(p)) == total_derivative(d(a, p))
    assert d(a, P("t")) == a
    assert d(P("t1"), p) == total_derivative(p)


@given(*(diffpolys(max_order=2, max_degree=2, max_terms=3) for _ in range(3)))
def test_commutator_bracket_laws(a, b, c):
    assert commutator(a, b) == -commutator(b, a)
    jacobi = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b))
    assert jacobi.is_zero()


@given(
    diffpolys(max_order=2, max_degree=2, max_terms=2),
    diffpolys(max_order=2, max_degree=2, max_terms=2),
    diffpolys(max_order=2, max_terms=3),
)
def test_derivations_commute_up_to_bracket(a, b, p):
    d = evolution_derivation
    assert d(a, d(b, p)) - d(b, d(a, p)) == d(commutator(a, b), p)


@given(diffpolys(max_order=4, max_degree=4))
def test_euler_operator_kills_total_derivatives(p):
    assert variational_derivative(total_derivative(p)).is_zero()


@given(diffpolys(max_order=4, max_degree=4, constant=False))
def test_antiderivative_round_trip(q):
    assert antiderivative(total_derivative(q)) == q


@given(diffpolys(max_order=3, max_degree=3, constant=False))
def test_antiderivative_raises_exactly_off_the_image(p):
    if variational_derivative(p).is_zero():
        assert total_derivative(antiderivative(p)) == p
    else:
        with pytest.raises(NotTotalDerivative):
            antiderivative(p)


@given(st.integers(0, 6))
def test_variable_derivatives(m):
    assert total_derivative(DiffPoly.var(m, TAU)) == DiffPoly.var(m + 1, TAU)
