"""Rational-function field: reduction, arithmetic, calculus, equality."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from painleve_ivs.poly import Poly
from painleve_ivs.ratfn import RatFn, clear_denominators, rat
from painleve_ivs.symbols import ALPHA, ETA, P1, P2, Q1, Q2, T

Q1V, Q2V, TV = Poly.var(Q1), Poly.var(Q2), Poly.var(T)

# Evaluation points chosen so every denominator built from the factor
# pool below is nonzero: distinct primes.
POINT = {Q1: Fraction(2), Q2: Fraction(3), P1: Fraction(5), P2: Fraction(7),
         T: Fraction(11), ALPHA[0]: Fraction(13), ALPHA[1]: Fraction(17),
         ETA: Fraction(19)}

FACTORS = [Q1V, Q2V, TV, Q1V - Q2V, TV - Poly.const(1)]

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=3).filter(
    lambda c: c != 0
)
monomials = st.lists(
    st.tuples(
        st.sampled_from([Q1, Q2, P1, P2, T]),
        st.integers(min_value=1, max_value=2),
    ),
    max_size=2,
).map(lambda ps: tuple(sorted(dict(ps).items())))
polys = st.dictionaries(monomials, coeffs, max_size=4).map(Poly)

ratfns = st.builds(
    lambda num, idxs: RatFn(num, [(FACTORS[i], 1) for i in idxs]),
    polys,
    st.lists(st.integers(min_value=0, max_value=4), max_size=2),
)


def ev(r: RatFn) -> Fraction:
    return r.evaluate(POINT)


def test_constructor_reduces_by_trial_division():
    num = (TV * TV - TV) * (Q1V + Q2V)
    r = RatFn(num, [(TV, 1), (TV - Poly.const(1), 1), (Q1V, 1)])
    assert r.denominator_factors() == ((Q1V, 1),)
    assert r.num == Q1V + Q2V


def test_constructor_normalizes_constants_and_leading_coefficients():
    r = RatFn(Q1V, [(Poly.const(3) * TV, 2), (Poly.const(Fraction(1, 2)), 1)])
    # Constant factors and leading coefficients move into the numerator;
    # every stored factor is monic and non-constant.
    for f, _ in r.denominator_factors():
        assert f.leading()[1] == 1
        assert not f.is_const()
    assert ev(r) == Fraction(2) / (9 * Fraction(11) ** 2 * Fraction(1, 2))


def test_zero_and_constant_queries():
    z = RatFn(Poly.zero(), [(TV, 3)])
    assert z.is_zero()
    assert z.denominator_factors() == ()
    c = rat(Fraction(5, 3))
    assert c.is_const() and c.const_value() == Fraction(5, 3)
    assert rat(2).as_poly() == Poly.const(2)


@settings(max_examples=50, deadline=None)
@given(ratfns, ratfns)
def test_field_laws_under_evaluation(a, b):
    assert ev(a + b) == ev(a) + ev(b)
    assert ev(a - b) == ev(a) - ev(b)
    assert ev(a * b) == ev(a) * ev(b)
    if not b.is_zero():
        assert ev(a / b) == ev(a) / ev(b)


@settings(max_examples=50, deadline=None)
@given(ratfns)
def test_additive_and_multiplicative_units(a):
    assert (a - a).is_zero()
    assert a + rat(0) == a
    assert a * rat(1) == a
    if not a.is_zero():
        assert (a * a.reciprocal()) == rat(1)
        assert a**-2 == (a.reciprocal()) ** 2


@settings(max_examples=40, deadline=None)
@given(ratfns, ratfns)
def test_equality_is_semantic(a, b):
    lhs = (a + b) * (a - b)
    rhs = a * a - b * b
    assert lhs == rhs


@settings(max_examples=30, deadline=None)
@given(ratfns)
def test_derivative_against_difference_identity(a):
    # d/dt of t*a equals a + t*da/dt (Leibniz with an exact product).
    tv = RatFn.var(T)
    assert (tv * a).diff(T) == a + tv * a.diff(T)
    # Chain through the quotient rule on a nontrivial denominator.
    if not a.is_zero():
        inv = a.reciprocal()
        assert (a * inv).diff(T).is_zero()


def test_derivative_of_explicit_quotient():
    r = RatFn(Q1V, [(TV - Poly.const(1), 2)])
    d = r.diff(T)
    # d/dt q1/(t-1)^2 = -2 q1/(t-1)^3
    expected = RatFn(Poly.const(-2) * Q1V, [(TV - Poly.const(1), 3)])
    assert d == expected


def test_substitute_matches_pointwise_composition():
    r = RatFn(Q1V * Q2V + Poly.const(1), [(Q1V - Q2V, 1)])
    image = {Q1: RatFn(TV, [(Q2V, 1)]), Q2: rat(Fraction(1, 2))}
    composed = r.substitute(image)
    pt = {Q2: Fraction(3), T: Fraction(5)}
    inner = {Q1: Fraction(5) / 3, Q2: Fraction(1, 2)}
    assert composed.evaluate(pt) == r.evaluate(inner)


def test_evaluate_raises_on_pole():
    r = RatFn(Poly.const(1), [(Q1V - Q2V, 1)])
    with pytest.raises(ZeroDivisionError):
        r.evaluate({Q1: Fraction(1), Q2: Fraction(1)})


def test_eq_mod_relation_uses_root_normalization():
    total = Poly.zero()
    for a in ALPHA:
        total = total + Poly.var(a)
    lhs = RatFn.from_poly(total)
    assert lhs != rat(1)
    assert lhs.eq_mod_relation(rat(1))
    # And a rearranged form: a0 + a3 == 1 - a1 - a2 - a4 - a5.
    left = RatFn.from_poly(Poly.var(ALPHA[0]) + Poly.var(ALPHA[3]))
    rest = Poly.const(1)
    for i in (1, 2, 4, 5):
        rest = rest - Poly.var(ALPHA[i])
    assert left.eq_mod_relation(RatFn.from_poly(rest))
    assert not left.eq_mod_relation(rat(1))


def test_ratfn_is_deliberately_unhashable():
    with pytest.raises(TypeError):
        hash(rat(1))


def test_clear_denominators_produces_common_polynomial_forms():
    a = RatFn(Q1V, [(TV, 1)])
    b = RatFn(Q2V, [(TV, 2), (Q1V, 1)])
    factors, nums = clear_denominators({"a": a, "b": b})
    assert sorted(f.total_degree() for f, _ in factors) == [1, 1]
    assert sorted(m for _, m in factors) == [1, 2]
    # Each cleared numerator equals component * product of factors.
    prod = rat(1)
    for f, m in factors:
        prod = prod * RatFn.from_poly(f) ** m
    assert RatFn.from_poly(nums["a"]) == a * prod
    assert RatFn.from_poly(nums["b"]) == b * prod


def test_power_and_division_shortcuts():
    r = RatFn(Q1V + Poly.const(1), [(TV, 1)])
    assert r**0 == rat(1)
    assert r / 2 == r * rat(Fraction(1, 2))
    assert (r**3) / r == r * r
