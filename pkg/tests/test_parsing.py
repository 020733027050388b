"""Expression parsing and canonical text/LaTeX rendering."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from painleve_ivs.parsing import (
    parse,
    parse_poly,
    poly_to_latex,
    poly_to_text,
    ratfn_to_latex,
    ratfn_to_text,
)
from painleve_ivs.poly import Poly
from painleve_ivs.ratfn import RatFn
from painleve_ivs.symbols import ALPHA, ETA, P1, P2, Q1, Q2, T

coeffs = st.fractions(min_value=-9, max_value=9, max_denominator=5).filter(
    lambda c: c != 0
)
monomials = st.lists(
    st.tuples(
        st.sampled_from([Q1, Q2, P1, P2, T, ALPHA[2], ETA]),
        st.integers(min_value=1, max_value=4),
    ),
    max_size=3,
).map(lambda ps: tuple(sorted(dict(ps).items())))
polys = st.dictionaries(monomials, coeffs, max_size=6).map(Poly)


def test_parse_basic_arithmetic():
    assert parse_poly("q1 + 2*q2 - 3") == (
        Poly.var(Q1) + Poly.const(2) * Poly.var(Q2) - Poly.const(3)
    )
    assert parse_poly("(q1 - q2)^2") == parse_poly("q1^2 - 2*q1*q2 + q2^2")
    assert parse_poly("q1**2") == parse_poly("q1^2")
    assert parse_poly("-q1^2") == -Poly.var(Q1, 2)
    assert parse_poly("7/2") == Poly.const(Fraction(7, 2))


def test_parse_precedence_and_unary_minus():
    assert parse_poly("-q1^2 + q2") == parse_poly("q2 - q1^2")
    assert parse_poly("2*q1 + 3*q2*t") == parse_poly("3*t*q2 + 2*q1")
    assert parse("1 - 1/t") == parse("(t - 1)/t")


def test_parse_keeps_denominator_factorization():
    r = parse("1/(t*(t-1)*q1)")
    degs = sorted(f.total_degree() for f, _ in r.denominator_factors())
    assert degs == [1, 1, 1]
    # Reduction across factors still happens when exact.
    assert ratfn_to_text(parse("(t^2-t)/(t*(t-1)*q1)")) == "(1)/((q1))"


def test_parse_rejects_malformed_input():
    for bad in ["q1 +", "(q1", "q1^q2", "q1 2"]:
        with pytest.raises((ValueError, KeyError, SyntaxError)):
            parse(bad)


def test_parse_registers_fresh_symbol_names():
    # New names become symbols on first use; repeated use is stable.
    from painleve_ivs.symbols import UNIVERSE

    r = parse("fresh_test_symbol_abc + 1")
    assert "fresh_test_symbol_abc" in UNIVERSE
    assert parse("fresh_test_symbol_abc + 1") == r


def test_polynomial_text_is_canonical_and_frozen():
    p = parse_poly("q2^3 + q1^2 + q1*q2 + q1 + 5")
    assert poly_to_text(p) == "q2^3 + q1^2 + q1*q2 + q1 + 5"
    q = parse_poly("-q1^2 + q2 - 1/2")
    assert poly_to_text(q) == "-q1^2 + q2 - 1/2"
    assert poly_to_text(Poly.zero()) == "0"


@settings(max_examples=60, deadline=None)
@given(polys)
def test_poly_text_roundtrip(p):
    assert parse_poly(poly_to_text(p)) == p


@settings(max_examples=40, deadline=None)
@given(polys, polys)
def test_ratfn_text_roundtrip(num, den):
    if den.is_zero():
        return
    r = RatFn(num, [(den, 1)])
    assert parse(ratfn_to_text(r)) == r


def test_latex_rendering_frozen_examples():
    p = parse_poly("q1^2 - a2*t + 1/2")
    assert poly_to_latex(p) == "q_1^{2} - t \\alpha_2 + \\frac{1}{2}"
    r = parse("(q1 - q2)/(t*(t-1))")
    assert (
        ratfn_to_latex(r)
        == "\\frac{q_1 - q_2}{\\left(t\\right) \\left(t - 1\\right)}"
    )
