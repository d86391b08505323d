import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pseudonull import (
    KAPPA,
    DiffPoly,
    FrenetField,
    InvalidField,
    ParallelField,
    commutator,
    curvature_variation,
    derive_field,
    evolution_derivation,
    frame_derivation,
    inner,
    lie_bracket,
    parse,
    tangency_check,
    torsion_variation,
    variation_coefficients,
)
from pseudonull.geometry import curvature_identity_check
from pseudonull.sampling import random_evolution_field

P = parse
T, N, B = FrenetField.T(), FrenetField.N(), FrenetField.B()


def test_field_parsing_and_format():
    V = FrenetField.parse("1; t1 + t^2; 0")
    assert V == FrenetField(1, "t1 + t^2", 0)
    assert V.format() == "1;t1 + t^2;0"
    assert V.to_json() == {"f": "1", "g": "t1 + t^2", "h": "0"}
    with pytest.raises(ValueError):
        FrenetField.parse("1;2")


def test_field_arithmetic():
    assert T + N - N == T
    assert N.scale(P("t")) == FrenetField(0, "t", 0)
    assert (T - T).is_zero()


@pytest.mark.parametrize(
    "field, rho, phi, psi, alpha",
    [
        (N, "0", "t", "0", "t1 + t^2 + G"),
        (T, "0", "1", "0", "t"),
        (FrenetField.zero(), "0", "0", "0", "0"),
        (B, "1", "0", "-t", "-1"),
    ],
)
def test_variation_coefficients(field, rho, phi, psi, alpha):
    c = variation_coefficients(field)
    assert (c.rho, c.phi, c.psi, c.alpha) == tuple(P(x) for x in (rho, phi, psi, alpha))


@pytest.mark.parametrize("field", [FrenetField(3, 5, 0), FrenetField(0, "t", 0), FrenetField(-1, "1/2", 0)])
def test_tangent_fields(field):
    rep = tangency_check(field)
    assert rep.pseudo_null_ok and rep.arclength_ok and rep.ok


def test_tangential_torsion_multiple_is_not_arclength_preserving():
    rep = tangency_check(FrenetField("t", 0, 0))
    assert rep.pseudo_null_ok and not rep.arclength_ok
    assert rep.arclength_residual == P("t1")


def test_binormal_is_not_tangent():
    assert not tangency_check(B).pseudo_null_ok


@pytest.mark.parametrize(
    "field, expected",
    [
        (N, "t2 + 2*t*t1"),
        (FrenetField(3, 5, 0), "5*t2 + 10*t*t1 + 3*t1"),
        (FrenetField(0, "t", 0), "t3 + 3*t*t2 + 3*t1^2 + (G + 3*t^2)*t1"),
        (T, "t1"),
    ],
)
def test_torsion_variation(field, expected):
    assert torsion_variation(field) == P(expected)


def test_torsion_variation_rejects_non_tangent():
    with pytest.raises(InvalidField):
        torsion_variation(FrenetField("t", 0, 0))


@pytest.mark.parametrize(
    "field, d, expected",
    [
        (ParallelField(0, "k", 0), 0, "k2 + G*k"),
        (ParallelField(1, 0, 0), 0, "k1"),
        (ParallelField(0, "k1", 0), 0, "k3 + G*k1"),
        (ParallelField(1, 0, 0), 2, "k1 + 2*k"),
    ],
)
def test_curvature_variation(field, d, expected):
    assert curvature_variation(field, d) == parse(expected, KAPPA)


def test_curvature_variation_needs_evolution_field():
    with pytest.raises(InvalidField):
        curvature_variation(ParallelField("k", 0, 0))


def test_frame_derivation_examples():
    z = P("0")
    assert frame_derivation(T)[0] == (z, P("1"), z)
    a = P("t1 + t^2 + G")
    assert frame_derivation(N) == ((z, P("t"), z), (z, a, z), (P("t"), z, -a))
    assert all(x.is_zero() for row in frame_derivation(FrenetField.zero()) for x in row)
    with pytest.raises(InvalidField):
        frame_derivation(B)


def test_derive_field_examples():
    assert derive_field(N, T) == FrenetField(0, "t", 0)
    assert derive_field(T, T) == N
    g = P("t1*t + 2")
    expected = evolution_derivation(P("t2 + 2*t*t1"), g) + g * P("t1 + t^2 + G")
    assert derive_field(N, FrenetField(0, g, 0)) == FrenetField(0, expected, 0)
    assert derive_field(FrenetField(2, "t^2", 0), FrenetField.zero()).is_zero()


@pytest.mark.parametrize("a, b", [(T, N), (N, FrenetField(0, "t", 0)), (FrenetField(0, "t1 + t^2", 0), N)])
def test_bracket_of_hierarchy_fields_vanishes(a, b):
    assert lie_bracket(a, b).is_zero()


def test_inner_products():
    assert inner(T, T) == 1
    assert inner(N, B) == -1
    assert inner(N, N) == 0 and inner(B, B) == 0 and inner(T, N) == 0


@pytest.mark.parametrize("triple", [(T, N, T), (N, FrenetField(0, "t", 0), N), (N, N, B)])
def test_curvature_identity_examples(triple):
    assert curvature_identity_check(*triple).is_zero()


evolution_fields = st.integers(0, 10**6).map(lambda seed: random_evolution_field(random.Random(seed)))


@given(evolution_fields)
def test_bracket_antisymmetry(V):
    assert lie_bracket(V, V).is_zero()


@given(evolution_fields, evolution_fields)
def test_bracket_closure_and_homomorphism(V1, V2):
    W = lie_bracket(V1, V2)
    assert W.is_evolution()
    assert W == -lie_bracket(V2, V1)
    assert torsion_variation(W) == commutator(torsion_variation(V1), torsion_variation(V2))


@given(evolution_fields, evolution_fields, st.sampled_from([T, N, B]))
def test_curvature_identity_random(V1, V2, U):
    assert curvature_identity_check(V1, V2, U).is_zero()


@given(evolution_fields, evolution_fields)
def test_frame_derivation_preserves_inner_products(V, W):
    # D_V is metric compatible on the frame: V<X,Y> = <D_V X, Y> + <X, D_V Y>
    for X in (T, N, B, W):
        for Y in (T, N, B):
            lhs = evolution_derivation(torsion_variation(V), inner(X, Y))
            assert lhs == inner(derive_field(V, X), Y) + inner(X, derive_field(V, Y))
