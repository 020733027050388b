"""Coupled sixth-Painlevé Hamiltonian: structure, brackets, reconstruction.

The defining Hamiltonian is re-transcribed here in plain Fraction
arithmetic, independently of the package's symbolic pipeline, and the
two routes are compared exactly at randomized rational points.
"""

import random
from fractions import Fraction

from painleve_ivs.hamiltonian import (
    PAIRS_BASE,
    construct_hamiltonian,
    h_vi,
    hamilton_equations,
    hamiltonian,
    poisson_bracket,
)
from painleve_ivs.poly import Poly
from painleve_ivs.ratfn import RatFn, rat
from painleve_ivs.symbols import ALPHA, ETA, P1, P2, Q1, Q2, T


def hvi_reference(a, b, c, d, q, p, t):
    """Independent scalar transcription of the one-variable Hamiltonian."""
    num = (
        q * (q - 1) * (q - t) * p**2
        - (a * (q - 1) * (q - t) + b * q * (q - t) + (c - 1) * q * (q - 1)) * p
        + d * q
    )
    return num / (t * (t - 1))


def full_reference(q1, q2, p1, p2, t, al, eta):
    """Independent scalar transcription of the coupled Hamiltonian."""
    h1 = hvi_reference(
        al[3] + al[5] - eta, al[0], al[2] + al[4], al[1] * eta, q1, p1, t
    )
    h2 = hvi_reference(
        al[1] + al[5] - eta, al[0] + al[2], al[4], al[3] * eta, q2, p2, t
    )
    coupling = (
        (q1 - 1)
        * (q2 - t)
        * ((q1 * p1 + al[1]) * p2 + (q2 * p2 + al[3]) * p1)
        / (t * (t - 1))
    )
    return h1 + h2 + coupling


def random_point(rng):
    pt = {
        Q1: Fraction(rng.randint(2, 40), rng.randint(1, 7)),
        Q2: Fraction(rng.randint(41, 80), rng.randint(1, 7)),
        P1: Fraction(rng.randint(-30, 30), rng.randint(1, 5)),
        P2: Fraction(rng.randint(-30, 30), rng.randint(1, 5)),
        T: Fraction(rng.randint(81, 120), rng.randint(1, 7)),
        ETA: Fraction(rng.randint(1, 9), 10),
    }
    for i, a in enumerate(ALPHA):
        pt[a] = Fraction(rng.randint(1, 19), 20 + i)
    return pt


def test_hamiltonian_matches_independent_transcription():
    H = hamiltonian()
    rng = random.Random(20260816)
    for _ in range(20):
        pt = random_point(rng)
        expected = full_reference(
            pt[Q1], pt[Q2], pt[P1], pt[P2], pt[T],
            [pt[a] for a in ALPHA], pt[ETA],
        )
        assert H.evaluate(pt) == expected


def test_single_variable_piece_matches_reference():
    a, b = rat(Fraction(1, 3)), rat(Fraction(2, 5))
    c, d = rat(Fraction(-1, 2)), rat(Fraction(3, 7))
    piece = h_vi(a, b, c, d, Q1, P1)
    pt = {Q1: Fraction(3), P1: Fraction(-2), T: Fraction(5)}
    assert piece.evaluate(pt) == hvi_reference(
        Fraction(1, 3), Fraction(2, 5), Fraction(-1, 2), Fraction(3, 7),
        Fraction(3), Fraction(-2), Fraction(5),
    )


def test_hamiltonian_denominator_is_t_times_t_minus_one():
    H = hamiltonian()
    tv = Poly.var(T)
    assert dict(H.denominator_factors()) == {tv: 1, tv - Poly.const(1): 1}
    # The numerator is genuinely polynomial in all four chart variables.
    assert H.num.degree_in(Q1) >= 2 and H.num.degree_in(P2) >= 1


def test_canonical_poisson_brackets():
    for qi, pi in PAIRS_BASE:
        for qj, pj in PAIRS_BASE:
            qv, pv = RatFn.var(qi), RatFn.var(pj)
            expect = rat(1 if (qi, pi) == (qj, pj) else 0)
            assert poisson_bracket(qv, pv, PAIRS_BASE) == expect
    q1v, q2v = RatFn.var(Q1), RatFn.var(Q2)
    assert poisson_bracket(q1v, q2v, PAIRS_BASE).is_zero()
    H = hamiltonian()
    assert poisson_bracket(H, H, PAIRS_BASE).is_zero()


def test_hamilton_equations_shape():
    H = hamiltonian()
    vf = hamilton_equations(H, PAIRS_BASE)
    assert set(vf) == {Q1, Q2, P1, P2}
    assert vf[Q1] == H.diff(P1)
    assert vf[P1] == -H.diff(Q1)
    # dq1/dt contains the leading 2 q1(q1-1)(q1-t) p1 / t(t-1) term.
    pt = {Q1: Fraction(2), Q2: Fraction(3), P1: Fraction(0), P2: Fraction(0),
          T: Fraction(7), ETA: Fraction(1, 3)}
    for i, a in enumerate(ALPHA):
        pt[a] = Fraction(i + 1, 21)
    val = vf[Q1].evaluate(pt)
    # At p1=p2=0 only the p1-linear terms of H survive differentiation.
    a_ = pt[ALPHA[3]] + pt[ALPHA[5]] - pt[ETA]
    b_ = pt[ALPHA[0]]
    c_ = pt[ALPHA[2]] + pt[ALPHA[4]]
    q1, q2, t = pt[Q1], pt[Q2], pt[T]
    expect = (
        -(a_ * (q1 - 1) * (q1 - t) + b_ * q1 * (q1 - t)
          + (c_ - 1) * q1 * (q1 - 1))
        + (q1 - 1) * (q2 - t) * pt[ALPHA[3]]
    ) / (t * (t - 1))
    assert val == expect


def test_reconstruction_from_own_vector_field():
    H = hamiltonian()
    vf = hamilton_equations(H, PAIRS_BASE)
    K, diag = construct_hamiltonian(vf, PAIRS_BASE)
    assert K is not None, diag
    assert diag["reason"] == "ok"
    # Unique up to a function of t alone; here the difference is exactly
    # the variable-free part of H.
    diff = H - K
    assert all(s not in diff.symbols() for s in (Q1, Q2, P1, P2))
    vf2 = hamilton_equations(K, PAIRS_BASE)
    for v in (Q1, Q2, P1, P2):
        assert vf[v] == vf2[v]


def test_reconstruction_rejects_non_hamiltonian_field():
    # Perturb one component so the integrability conditions fail.
    H = hamiltonian()
    vf = dict(hamilton_equations(H, PAIRS_BASE))
    vf[Q1] = vf[Q1] + RatFn.var(Q1)
    K, diag = construct_hamiltonian(vf, PAIRS_BASE)
    assert K is None
    assert diag["reason"] != "ok"
