"""Birational symmetries: generator data, composition calculus, exactness.

Each generator is checked along two independent routes: exact symbolic
verification that it maps solutions to solutions, and numeric spot
checks of the defining involution/composition properties at randomized
rational points.
"""

import random
from fractions import Fraction

import pytest

from painleve_ivs.poly import Poly
from painleve_ivs.ratfn import RatFn, rat
from painleve_ivs.symbols import ALPHA, ETA, P1, P2, Q1, Q2, T
from painleve_ivs.symmetry import (
    GENERATOR_NAMES,
    apply_map,
    compose,
    generator,
    identity_map,
    is_identity,
    maps_equal,
    order_of,
    pi1_order_bound,
    verify_symmetry,
    word_map,
)

REFLECTIONS = ["r0", "r1", "r2", "r3", "r4", "r5"]


def seeded_point(seed):
    rng = random.Random(seed)
    pt = {
        Q1: Fraction(rng.randint(50, 99), 7),
        Q2: Fraction(rng.randint(100, 149), 7),
        P1: Fraction(rng.randint(13, 50), 11),
        P2: Fraction(rng.randint(51, 90), 11),
        T: Fraction(rng.randint(150, 199), 7),
        ETA: Fraction(rng.randint(1, 9), 13),
    }
    for i, a in enumerate(ALPHA):
        pt[a] = Fraction(rng.randint(1, 23), 29 + i)
    return pt


def apply_at_point(m, pt):
    out = dict(pt)
    for v in (Q1, Q2, P1, P2):
        out[v] = m.image(v).evaluate(pt)
    for p in ALPHA + (ETA,):
        out[p] = m.param_images[p].evaluate(pt)
    out[T] = m.time_image.evaluate(pt)
    return out


def test_generator_registry_is_complete():
    for name in GENERATOR_NAMES:
        g = generator(name)
        assert g.name == name
    assert set(REFLECTIONS) <= set(GENERATOR_NAMES)
    for extra in ("r0p", "pi1", "pi2", "rho"):
        assert extra in GENERATOR_NAMES


def test_simple_reflection_images_are_frozen():
    r0 = generator("r0")
    assert r0.image(P1) == RatFn.var(P1) - RatFn(
        Poly.var(ALPHA[0]), [(Poly.var(Q1) - Poly.const(1), 1)]
    )
    assert r0.image(Q1) == RatFn.var(Q1)
    r1 = generator("r1")
    assert r1.image(Q1) == RatFn.var(Q1) + RatFn(
        Poly.var(ALPHA[1]), [(Poly.var(P1), 1)]
    )
    r2 = generator("r2")
    d12 = Poly.var(Q1) - Poly.var(Q2)
    assert r2.image(P1) == RatFn.var(P1) - RatFn(Poly.var(ALPHA[2]), [(d12, 1)])
    assert r2.image(P2) == RatFn.var(P2) + RatFn(Poly.var(ALPHA[2]), [(d12, 1)])
    r4 = generator("r4")
    assert r4.image(P2) == RatFn.var(P2) - RatFn(
        Poly.var(ALPHA[4]), [(Poly.var(Q2) - Poly.var(T), 1)]
    )


def test_parameter_actions_are_frozen():
    # Reflection r_i negates its own root and adds it to the adjacent
    # roots in the affine A5 diagram; eta shifts with alternating sign.
    a = [Poly.var(s) for s in ALPHA]
    eta = Poly.var(ETA)
    r0 = generator("r0")
    assert r0.param_images[ALPHA[0]] == RatFn.from_poly(-a[0])
    assert r0.param_images[ALPHA[1]] == RatFn.from_poly(a[1] + a[0])
    assert r0.param_images[ALPHA[5]] == RatFn.from_poly(a[5] + a[0])
    assert r0.param_images[ALPHA[2]] == RatFn.from_poly(a[2])
    assert r0.param_images[ETA] == RatFn.from_poly(eta + a[0])
    r3 = generator("r3")
    assert r3.param_images[ALPHA[3]] == RatFn.from_poly(-a[3])
    assert r3.param_images[ETA] == RatFn.from_poly(eta - a[3])
    pi1 = generator("pi1")
    for i in range(6):
        assert pi1.param_images[ALPHA[i]] == RatFn.from_poly(a[(i + 1) % 6])
    assert pi1.param_images[ETA] == RatFn.from_poly(eta + a[0] + a[2] + a[4])
    pi2 = generator("pi2")
    for i in range(6):
        assert pi2.param_images[ALPHA[i]] == RatFn.from_poly(a[(i + 2) % 6])
    assert pi2.param_images[ETA] == RatFn.from_poly(eta)
    rho = generator("rho")
    perm = [0, 5, 4, 3, 2, 1]
    for i in range(6):
        assert rho.param_images[ALPHA[i]] == RatFn.from_poly(a[perm[i]])
    assert rho.param_images[ETA] == RatFn.from_poly(-eta + a[1] + a[3] + a[5])
    r0p = generator("r0p")
    assert r0p.param_images[ETA] == RatFn.from_poly(-eta + a[1] + a[3] + a[5])
    for i in range(6):
        assert r0p.param_images[ALPHA[i]] == RatFn.from_poly(a[i])


def test_root_sum_is_invariant_under_every_generator():
    total = rat(0)
    for s in ALPHA:
        total = total + RatFn.var(s)
    for name in GENERATOR_NAMES:
        g = generator(name)
        image_sum = rat(0)
        for s in ALPHA:
            image_sum = image_sum + g.param_images[s]
        assert image_sum == total, name


def test_time_actions():
    # Only the outer involution moves t (to 1/t); everything else is
    # autonomous in time.
    for name in GENERATOR_NAMES:
        g = generator(name)
        if name == "r0p":
            assert g.time_image == RatFn(Poly.const(1), [(Poly.var(T), 1)])
        else:
            assert g.time_image == RatFn.var(T), name


def test_composition_convention_anchor():
    # compose(m1, m2) substitutes m2's images into m1's formulas; the q2
    # image of r4 after r3 picks up exactly the a3/p2 shift.
    m = compose(generator("r4"), generator("r3"))
    expected = RatFn.var(Q2) + RatFn(Poly.var(ALPHA[3]), [(Poly.var(P2), 1)])
    assert m.image(Q2) == expected
    # Non-adjacent reflections commute, adjacent ones do not.
    assert maps_equal(
        compose(generator("r0"), generator("r3")),
        compose(generator("r3"), generator("r0")),
    )
    assert not maps_equal(m, compose(generator("r3"), generator("r4")))


def test_word_map_order_matches_composition():
    w = word_map(["r3", "r4"])
    assert maps_equal(w, compose(generator("r4"), generator("r3")))
    assert maps_equal(word_map(["r1"]), generator("r1"))
    with pytest.raises((KeyError, ValueError)):
        word_map(["no_such_generator"])


def test_identity_and_apply():
    e = identity_map()
    assert is_identity(e)
    pt = seeded_point(3)
    h = RatFn.var(Q1) * RatFn.var(P2)
    assert apply_map(e, h) == h
    g = generator("r1")
    moved = apply_map(g, h)
    assert moved.evaluate(pt) == (pt[Q1] + pt[ALPHA[1]] / pt[P1]) * pt[P2]


def test_reflections_are_numeric_involutions():
    for k, name in enumerate(REFLECTIONS + ["r0p", "rho"]):
        g = generator(name)
        pt = seeded_point(100 + k)
        twice = apply_at_point(g, apply_at_point(g, pt))
        for v in (Q1, Q2, P1, P2, T):
            assert twice[v] == pt[v], name
        for p in ALPHA + (ETA,):
            assert twice[p] == pt[p], name


def test_rotation_orders():
    assert order_of("pi2", 6) == 3
    assert order_of("rho", 4) == 2
    assert pi1_order_bound(12) is None


def test_every_generator_maps_solutions_to_solutions():
    for name in GENERATOR_NAMES:
        res = verify_symmetry(name)
        assert res["ok"], (name, res)
        assert all(res["per_variable"].values()), name


def test_r5_verification_reports_its_nonzero_assumptions():
    res = verify_symmetry("r5")
    assert res["ok"]
    texts = " ".join(res["nonzero_assumptions"])
    assert "q1*p1 + q2*p2" in texts
