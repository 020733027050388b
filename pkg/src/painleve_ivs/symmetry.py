"""Birational symmetries of the system and their group structure.

Ten generators act on the phase-space variables, the parameters and the
time: six reflections r0..r5 generating an affine Weyl group of type
A5, an involution r0p (which inverts both coordinates and the time)
generating an A1 part together with the composite r0p * pi2^{-1} *
pi1^2, and three Dynkin-diagram automorphisms pi1, pi2, rho.

A map is stored by its substitution data: images of q1, q2, p1, p2
(rational functions), affine images of the parameters a0..a5, eta, and
the time image (t or 1/t).  ``apply_map(m, f)`` substitutes all images
into f.  ``compose(m1, m2)`` substitutes m2's images into m1's, so as
point transformations the composite acts as m1 after m2, while on
functions it pulls back in the opposite order.  ``word_map([g1, ..,
gn])`` is the group product g1 g2 ... gn in automorphism convention:
the rightmost factor is substituted first, i.e. the leftmost acts
last.

``pi1`` has infinite order (its square shifts eta by a0+...+a5 = 1),
so no inverse of it is ever formed; the Dynkin rotation relations are
verified in the inverse-free form  pi1 * r_i == r_{i+1 mod 6} * pi1.
``pi2`` has order three and pi2^{-1} := pi2^2.

Equality of maps is exact equality of all images modulo the parameter
normalization a0+...+a5 = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .hamiltonian import hamilton_equations, hamiltonian
from .parsing import parse, parse_poly
from .poly import Poly
from .ratfn import RatFn, rat
from .symbols import ALPHA, DYNAMICAL, ETA, P1, P2, PARAMETERS, Q1, Q2, T

__all__ = [
    "BirationalMap",
    "generator",
    "GENERATOR_NAMES",
    "identity_map",
    "apply_map",
    "compose",
    "word_map",
    "maps_equal",
    "is_identity",
    "order_of",
    "verify_symmetry",
    "group_relation_checks",
]


@dataclass(frozen=True)
class BirationalMap:
    """Substitution data of one birational transformation."""

    name: str
    var_images: Mapping[int, RatFn]
    param_images: Mapping[int, Poly]
    time_image: RatFn

    def image(self, sym: int) -> RatFn:
        if sym in self.var_images:
            return self.var_images[sym]
        if sym in self.param_images:
            return rat(self.param_images[sym])
        if sym == T:
            return self.time_image
        return RatFn.var(sym)

    def all_images(self) -> dict:
        out = {s: v for s, v in self.var_images.items()}
        for s, v in self.param_images.items():
            out[s] = rat(v)
        out[T] = self.time_image
        return out


def _mk(name: str, vars_: Mapping[str, str], params: Mapping[str, str], time: str = "t") -> BirationalMap:
    var_images = {s: RatFn.var(s) for s in DYNAMICAL}
    names = {"q1": Q1, "q2": Q2, "p1": P1, "p2": P2}
    for k, text in vars_.items():
        var_images[names[k]] = parse(text)
    param_images = {s: Poly.var(s) for s in PARAMETERS}
    pnames = {f"a{i}": ALPHA[i] for i in range(6)}
    pnames["eta"] = ETA
    for k, text in params.items():
        param_images[pnames[k]] = parse_poly(text)
    return BirationalMap(name, var_images, param_images, parse(time))


def _build_generators() -> dict:
    g = {}
    g["r0"] = _mk(
        "r0",
        {"p1": "p1 - a0/(q1 - 1)"},
        {"a0": "-a0", "a1": "a1 + a0", "a5": "a5 + a0", "eta": "eta + a0"},
    )
    g["r1"] = _mk(
        "r1",
        {"q1": "q1 + a1/p1"},
        {"a0": "a0 + a1", "a1": "-a1", "a2": "a2 + a1", "eta": "eta - a1"},
    )
    g["r2"] = _mk(
        "r2",
        {"p1": "p1 - a2/(q1 - q2)", "p2": "p2 + a2/(q1 - q2)"},
        {"a1": "a1 + a2", "a2": "-a2", "a3": "a3 + a2", "eta": "eta + a2"},
    )
    g["r3"] = _mk(
        "r3",
        {"q2": "q2 + a3/p2"},
        {"a2": "a2 + a3", "a3": "-a3", "a4": "a4 + a3", "eta": "eta - a3"},
    )
    g["r4"] = _mk(
        "r4",
        {"p2": "p2 - a4/(q2 - t)"},
        {"a3": "a3 + a4", "a4": "-a4", "a5": "a5 + a4", "eta": "eta + a4"},
    )
    g["r5"] = _mk(
        "r5",
        {
            "q1": "q1*(q1*p1 + q2*p2 + eta)/(q1*p1 + q2*p2 - a5 + eta)",
            "q2": "q2*(q1*p1 + q2*p2 + eta)/(q1*p1 + q2*p2 - a5 + eta)",
            "p1": "p1*(q1*p1 + q2*p2 - a5 + eta)/(q1*p1 + q2*p2 + eta)",
            "p2": "p2*(q1*p1 + q2*p2 - a5 + eta)/(q1*p1 + q2*p2 + eta)",
        },
        {"a0": "a0 + a5", "a4": "a4 + a5", "a5": "-a5", "eta": "eta - a5"},
    )
    g["r0p"] = _mk(
        "r0p",
        {
            "q1": "1/q1",
            "q2": "1/q2",
            "p1": "-q1*(q1*p1 + a1)",
            "p2": "-q2*(q2*p2 + a3)",
        },
        {"eta": "-eta + a1 + a3 + a5"},
        time="1/t",
    )
    g["pi1"] = _mk(
        "pi1",
        {
            "q1": "((q1 - t)*p1 + (q2 - t)*p2 + eta)/((q1 - 1)*p1 + (q2 - t)*p2 + eta)",
            "q2": "((q1 - t)*p1 + (q2 - t)*p2 + eta)/((q1 - 1)*p1 + (q2 - 1)*p2 + eta)",
            "p1": "((q1 - q2)/(t - 1)*((q1 - 1)*p1 + (q2 - t)*p2 + eta) - a2)"
            "*((q1 - 1)*p1 + (q2 - t)*p2 + eta)/((q1 - t)*p1 + (q2 - t)*p2 + eta)",
            "p2": "((q2 - t)/(t - 1)*((q1 - 1)*p1 + (q2 - 1)*p2 + eta) - a4)"
            "*((q1 - 1)*p1 + (q2 - 1)*p2 + eta)/((q1 - t)*p1 + (q2 - t)*p2 + eta)",
        },
        {
            "a0": "a1",
            "a1": "a2",
            "a2": "a3",
            "a3": "a4",
            "a4": "a5",
            "a5": "a0",
            "eta": "eta + a0 + a2 + a4",
        },
    )
    g["pi2"] = _mk(
        "pi2",
        {
            "q1": "q2/q1",
            "q2": "t/q1",
            "p1": "q1*p2",
            "p2": "-q1*(q1*p1 + q2*p2 + eta)/t",
        },
        {"a0": "a2", "a1": "a3", "a2": "a4", "a3": "a5", "a4": "a0", "a5": "a1"},
    )
    g["rho"] = _mk(
        "rho",
        {
            "q2": "t*q1/q2",
            "p1": "(q1*p1 + q2*p2 - a5 + eta)/q1",
            "p2": "-q2*(q2*p2 + a3)/(t*q1)",
        },
        {
            "a1": "a5",
            "a2": "a4",
            "a4": "a2",
            "a5": "a1",
            "eta": "-eta + a1 + a3 + a5",
        },
    )
    return g


_GENERATORS: dict = {}

GENERATOR_NAMES = ("r0", "r1", "r2", "r3", "r4", "r5", "r0p", "pi1", "pi2", "rho")


def generator(name: str) -> BirationalMap:
    """One of the ten generators (plus derived names 'id' and 'pi2_inv')."""
    if not _GENERATORS:
        _GENERATORS.update(_build_generators())
        _GENERATORS["id"] = identity_map()
        p2 = _GENERATORS["pi2"]
        _GENERATORS["pi2_inv"] = _rename(compose(p2, p2), "pi2_inv")
    return _GENERATORS[name]


def identity_map() -> BirationalMap:
    return BirationalMap(
        "id",
        {s: RatFn.var(s) for s in DYNAMICAL},
        {s: Poly.var(s) for s in PARAMETERS},
        RatFn.var(T),
    )


def _rename(m: BirationalMap, name: str) -> BirationalMap:
    return BirationalMap(name, m.var_images, m.param_images, m.time_image)


def apply_map(m: BirationalMap, f: RatFn) -> RatFn:
    """Substitute all images of the map into f."""
    return f.substitute(m.all_images())


def compose(m1: BirationalMap, m2: BirationalMap) -> BirationalMap:
    """Composite that acts on points as m1 after m2.

    The images of m1 are substituted with the images of m2, so the
    substitution operators compose the opposite way:
    T_compose(m1,m2) = T_m2 after T_m1.
    """
    images2 = m2.all_images()
    param_images2 = {s: m2.param_images[s] for s in PARAMETERS}
    var_images = {s: m1.var_images[s].substitute(images2) for s in DYNAMICAL}
    param_images = {s: m1.param_images[s].substitute(param_images2) for s in PARAMETERS}
    time_image = m1.time_image.substitute({T: m2.time_image})
    return BirationalMap(f"({m1.name}.{m2.name})", var_images, param_images, time_image)


def word_map(names: Sequence[str]) -> BirationalMap:
    """Group product g1 g2 ... gn; the leftmost factor acts last."""
    if not names:
        return identity_map()
    m = generator(names[0])
    for nm in names[1:]:
        m = compose(generator(nm), m)
    return _rename(m, "*".join(names))


def maps_equal(m1: BirationalMap, m2: BirationalMap) -> bool:
    """Equality of all images modulo a0+...+a5 = 1."""
    for s in DYNAMICAL:
        if not m1.var_images[s].eq_mod_relation(m2.var_images[s]):
            return False
    for s in PARAMETERS:
        if not rat(m1.param_images[s]).eq_mod_relation(rat(m2.param_images[s])):
            return False
    return m1.time_image.eq_mod_relation(m2.time_image)


def is_identity(m: BirationalMap) -> bool:
    return maps_equal(m, identity_map())


def order_of(name: str, max_order: int = 12) -> int | None:
    """Order of a generator in the group, or None if above max_order."""
    base = generator(name)
    m = base
    for k in range(1, max_order + 1):
        if is_identity(m):
            return k
        m = compose(base, m)
    return None


def verify_symmetry(name: str) -> dict:
    """Check that a generator maps solutions to solutions.

    For a map m with time image tau(t), every variable v must satisfy

        sum_w  d m(v)/dw * F_w  +  d m(v)/dt  =  tau'(t) * m(F_v)

    modulo a0+...+a5 = 1, where F is the Hamiltonian vector field and
    m(F_v) substitutes all images into F_v.  Returns a dict with one
    boolean per variable plus the denominator factors that the check
    assumes to be nonzero (the exceptional divisors of the map).
    """
    m = generator(name)
    field = hamilton_equations(hamiltonian())
    dtau = m.time_image.diff(T)
    images = m.all_images()
    results = {}
    assumptions: list = []
    for v in DYNAMICAL:
        img = m.var_images[v]
        lhs = img.diff(T)
        for w in DYNAMICAL:
            d = img.diff(w)
            if not d.is_zero():
                lhs = lhs + d * field[w]
        rhs = dtau * field[v].substitute(images)
        ok = lhs.eq_mod_relation(rhs)
        results[v] = ok
        for fac, _ in (lhs - rhs).den:
            assumptions.append(fac)
    from .parsing import poly_to_text

    seen = set()
    factor_texts = []
    for fac in assumptions:
        txt = poly_to_text(fac)
        if txt not in seen:
            seen.add(txt)
            factor_texts.append(txt)
    return {
        "map": name,
        "ok": all(results.values()),
        "per_variable": {v: results[v] for v in DYNAMICAL},
        "nonzero_assumptions": factor_texts,
    }


def pi1_order_bound(max_order: int = 12) -> int | None:
    """Order of pi1 if at most max_order, else None.

    Decided on the parameter action alone, which is exact and cheap:
    if the parameter action has no order <= N, neither has the map.
    pi1^6 fixes all roots but shifts eta by a0+...+a5 = 1, so no power
    of pi1 is the identity: the search reports None for any bound.
    """
    base = {s: generator("pi1").param_images[s] for s in PARAMETERS}
    current = dict(base)
    for k in range(1, max_order + 1):
        if all(
            rat(current[s]).eq_mod_relation(rat(Poly.var(s))) for s in PARAMETERS
        ):
            return k
        current = {s: base[s].substitute(current) for s in PARAMETERS}
    return None


def group_relation_checks() -> list:
    """All defining relations, as (relation_id, ok, note) triples.

    Covers: reflection involutions, the A5 braid relations in the
    involution-reduced form (r_i r_j)^3 = 1 <=> r_i r_j r_i = r_j r_i r_j
    and (r_i r_j)^2 = 1 <=> r_i r_j = r_j r_i, the two A1 involutions,
    pi2^3 = rho^2 = 1, and the inverse-free conjugation relations for
    pi1, pi2 and rho.

    The square of the second A1 generator s1 = r0p * pi2^-1 * pi1^2 is
    decided without ever composing two copies of the translation part
    (whose images are thousands of terms): with x = pi1*rho, the four
    cheap relations x^2 = rho^2 = r0p^2 = 1 and pi2^3 = 1 give, by pure
    group algebra, rho*pi1^2*rho = pi1^-2 and hence

        s1^2 = 1  <=>  s1 = rho*pi1^2*rho*pi2*r0p   (= s1^-1),

    and the right-hand word collapses to a small map while it is
    built, so the remaining check is a feasible exact subtraction.
    """
    checks = []
    refl = [f"r{i}" for i in range(6)]
    for i in range(6):
        checks.append(
            (f"r{i}^2 = 1", is_identity(word_map([refl[i], refl[i]])), "")
        )
    for i in range(6):
        for j in range(i + 1, 6):
            adjacent = (j - i) % 6 in (1, 5)
            if adjacent:
                lhs = word_map([refl[i], refl[j], refl[i]])
                rhs = word_map([refl[j], refl[i], refl[j]])
                checks.append(
                    (
                        f"(r{i}*r{j})^3 = 1",
                        maps_equal(lhs, rhs),
                        "checked as the braid identity r_i r_j r_i = r_j r_i r_j",
                    )
                )
            else:
                lhs = word_map([refl[i], refl[j]])
                rhs = word_map([refl[j], refl[i]])
                checks.append(
                    (
                        f"(r{i}*r{j})^2 = 1",
                        maps_equal(lhs, rhs),
                        "checked as commutativity r_i r_j = r_j r_i",
                    )
                )
    checks.append(("r0p^2 = 1", is_identity(word_map(["r0p", "r0p"])), ""))
    checks.append(("pi2^3 = 1", order_of("pi2", 3) == 3, ""))
    checks.append(("rho^2 = 1", order_of("rho", 2) == 2, ""))
    x = word_map(["pi1", "rho"])
    x_invol = is_identity(compose(x, x))
    checks.append(("(pi1*rho)^2 = 1", x_invol, "gives pi1^-1 = rho*pi1*rho"))
    s1 = word_map(["r0p", "pi2_inv", "pi1", "pi1"])
    # Assemble s1^-1 = pi1^-1 * pi1^-1 * pi2 * r0p from the small map
    # pi1^-1 = rho*pi1*rho.  Spelling it as the literal six-letter word
    # would drag a large non-collapsing prefix through every step; this
    # association keeps each step a small map composed with the
    # accumulator, the same shape as the s1 build itself.
    pi1_inv = word_map(["rho", "pi1", "rho"])
    s1_inv = compose(
        generator("r0p"),
        compose(generator("pi2"), compose(pi1_inv, pi1_inv)),
    )
    a1_square = x_invol and maps_equal(s1, s1_inv)
    checks.append(
        (
            "(r0p*pi2^-1*pi1^2)^2 = 1",
            a1_square,
            "decided as s1 = rho*pi1^2*rho*pi2*r0p, which equals s1^-1 by "
            "the verified relations (pi1*rho)^2 = rho^2 = r0p^2 = pi2^3 = 1",
        )
    )
    for i in range(6):
        lhs = word_map(["pi1", refl[i]])
        rhs = word_map([refl[(i + 1) % 6], "pi1"])
        checks.append((f"pi1*r{i} = r{(i + 1) % 6}*pi1", maps_equal(lhs, rhs), ""))
    for i in range(6):
        lhs = word_map(["pi2", refl[i]])
        rhs = word_map([refl[(i + 2) % 6], "pi2"])
        checks.append((f"pi2*r{i} = r{(i + 2) % 6}*pi2", maps_equal(lhs, rhs), ""))
    for i in range(6):
        lhs = word_map(["rho", refl[i]])
        rhs = word_map([refl[(6 - i) % 6], "rho"])
        checks.append((f"rho*r{i} = r{(6 - i) % 6}*rho", maps_equal(lhs, rhs), ""))
    return checks
