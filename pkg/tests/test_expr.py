import pytest
from conftest import diffpolys
from hypothesis import given

from pseudonull import KAPPA, TAU, DiffPoly, ExpressionSyntaxError, UnknownSymbolError, format_poly, parse
from pseudonull.golden import CORPUS, HIERARCHY


def test_parse_simple_flow():
    t, t1, t2 = (DiffPoly.var(m) for m in range(3))
    assert parse("t2 + 2*t*t1") == t2 + 2 * t * t1


def test_parse_grouped_coefficient():
    t, t1 = DiffPoly.var(0), DiffPoly.var(1)
    assert parse("G*t1 + 3*t^2*t1") == (DiffPoly.G() + 3 * t**2) * t1


def test_trailing_operator_reports_offset():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse("t1 -")
    assert info.value.offset == 4
    assert "offset 4" in str(info.value)


@pytest.mark.parametrize(
    "text, offset",
    [("t1 + * t", 5), ("(t + 1", 6), ("t^", 2), ("2 t", 2), ("t1 ++ t", 4), ("", 0), ("t^-1", 2)],
)
def test_syntax_error_offsets(text, offset):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse(text)
    assert info.value.offset == offset


@pytest.mark.parametrize("text, offset", [("t + x", 4), ("t + k", 4), ("u1", 0)])
def test_unknown_symbols(text, offset):
    with pytest.raises(UnknownSymbolError) as info:
        parse(text)
    assert info.value.offset == offset


def test_generator_selection():
    assert parse("k2 + G*k").generator is KAPPA
    assert parse("3").generator is TAU
    assert parse("3", KAPPA).generator is KAPPA
    with pytest.raises(UnknownSymbolError):
        parse("t1", KAPPA)


@pytest.mark.parametrize(
    "text, canonical",
    [
        ("t1*2 + t*t*t1", "2*t1 + t^2*t1"),
        ("-2*t1^2 - 2*t^2*t1", "-2*t1^2 - 2*t^2*t1"),
        ("(t - 1)*(t + 1)", "-1 + t^2"),
        ("t0", "t"),
        ("G*k + k2", "k2 + G*k"),
        ("(G + 3*t^2)*t1", "G*t1 + 3*t^2*t1"),
        ("2/4*t", "1/2*t"),
        ("G^2*t - G*t", "-G*t + G^2*t"),
        ("0*t", "0"),
    ],
)
def test_canonical_form(text, canonical):
    assert parse(text).format() == canonical


def test_corpus_size_and_membership():
    assert len(CORPUS) >= 50
    for row in HIERARCHY:
        assert row["tau_flow"] in CORPUS and row["k_flow"] in CORPUS


@pytest.mark.parametrize("text", CORPUS)
def test_corpus_round_trip(text):
    canonical = parse(text).format()
    assert parse(canonical) == parse(text)
    assert parse(canonical).format() == canonical


@given(diffpolys(max_order=5, max_degree=4, max_terms=6))
def test_format_then_parse_is_identity(p):
    text = format_poly(p)
    assert parse(text) == p
    assert parse(text).format() == text


@given(diffpolys(max_order=3, max_terms=4))
def test_round_trip_over_kappa(p):
    q = p.with_generator(KAPPA)
    assert parse(q.format(), KAPPA) == q
