"""Hamiltonian structure of the fourth-order system.

The system lives in two canonical pairs (q1,p1), (q2,p2) over the time
domain t in C \\ {0,1}, with root parameters a0..a5 normalized by
a0+...+a5 = 1 and a weight parameter eta.  Its Hamiltonian is a sum of
two coupled sixth-Painlevé-type blocks plus an interaction term:

    H = HVI[a3+a5-eta, a0,    a2+a4, a1*eta; q1,p1]
      + HVI[a1+a5-eta, a0+a2, a4,    a3*eta; q2,p2]
      + (q1-1)(q2-t){(q1*p1+a1)p2 + (q2*p2+a3)p1} / (t(t-1))

where

    HVI[a,b,c,d; q,p] = [ q(q-1)(q-t)p^2
                          - {a(q-1)(q-t) + b*q(q-t) + (c-1)q(q-1)} p
                          + d*q ] / (t(t-1)).

Besides the Hamiltonian itself this module provides the canonical
calculus: Hamilton equations, Poisson brackets, and the inverse
problem of reconstructing a Hamiltonian from a vector field (used to
certify that transported systems stay Hamiltonian and polynomial in
every chart of the atlas).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .poly import Poly
from .ratfn import RatFn, rat
from .symbols import ALPHA, ETA, P1, P2, Q1, Q2, T

__all__ = [
    "PAIRS_BASE",
    "h_vi",
    "hamiltonian",
    "hamilton_equations",
    "poisson_bracket",
    "poly_integrate",
    "construct_hamiltonian",
]

#: Canonical pairs on the base chart: (coordinate, momentum) twice.
PAIRS_BASE = ((Q1, P1), (Q2, P2))


def h_vi(a, b, c, d, q: int, p: int) -> RatFn:
    """Sixth-Painlevé-type Hamiltonian block HVI[a,b,c,d; q,p].

    ``a..d`` may be anything coercible to RatFn; ``q``, ``p`` are symbol
    indices.
    """
    a, b, c, d = rat(a), rat(b), rat(c), rat(d)
    qv, pv = RatFn.var(q), RatFn.var(p)
    tv = RatFn.var(T)
    one = RatFn.const(1)
    num = (
        qv * (qv - one) * (qv - tv) * pv * pv
        - (a * (qv - one) * (qv - tv) + b * qv * (qv - tv) + (c - one) * qv * (qv - one)) * pv
        + d * qv
    )
    return num * _inv_t_t1()


def _inv_t_t1() -> RatFn:
    """1/(t(t-1)) with the two factors kept separate."""
    t_poly = Poly.var(T)
    t1_poly = t_poly - Poly.const(1)
    return RatFn(Poly.const(1), [(t_poly, 1), (t1_poly, 1)])


_H_CACHE: list = []


def hamiltonian() -> RatFn:
    """The full Hamiltonian H of the system (cached)."""
    if _H_CACHE:
        return _H_CACHE[0]
    a = [RatFn.var(s) for s in ALPHA]
    eta = RatFn.var(ETA)
    q1, q2, p1, p2 = (RatFn.var(s) for s in (Q1, Q2, P1, P2))
    tv = RatFn.var(T)
    one = RatFn.const(1)
    h = (
        h_vi(a[3] + a[5] - eta, a[0], a[2] + a[4], a[1] * eta, Q1, P1)
        + h_vi(a[1] + a[5] - eta, a[0] + a[2], a[4], a[3] * eta, Q2, P2)
        + (q1 - one) * (q2 - tv) * ((q1 * p1 + a[1]) * p2 + (q2 * p2 + a[3]) * p1)
        * _inv_t_t1()
    )
    _H_CACHE.append(h)
    return h


def hamilton_equations(k: RatFn, pairs: Sequence = PAIRS_BASE) -> dict:
    """Vector field of a Hamiltonian: dx/dt = dK/dz, dz/dt = -dK/dx."""
    vf = {}
    for x, z in pairs:
        vf[x] = k.diff(z)
        vf[z] = -k.diff(x)
    return vf


def poisson_bracket(f: RatFn, g: RatFn, pairs: Sequence = PAIRS_BASE) -> RatFn:
    """{f,g} = sum over pairs of df/dx dg/dz - df/dz dg/dx."""
    total = RatFn.const(0)
    for x, z in pairs:
        total = total + f.diff(x) * g.diff(z) - f.diff(z) * g.diff(x)
    return total


def poly_integrate(p: Poly, sym: int) -> Poly:
    """Antiderivative of a polynomial in one symbol (no constant)."""
    out: dict = {}
    for m, c in p.terms().items():
        e_sym = 0
        rest = []
        for s, e in m:
            if s == sym:
                e_sym = e
            else:
                rest.append((s, e))
        rest.append((sym, e_sym + 1))
        rest.sort()
        out[tuple(rest)] = c / (e_sym + 1)
    return Poly(out)


def _integrate(f: RatFn, sym: int, vars_: tuple) -> RatFn:
    """Integrate f d(sym) when every denominator factor is free of vars_."""
    for fac, _ in f.den:
        if fac.symbols() & set(vars_):
            raise ValueError("component has a variable-dependent denominator")
    num = poly_integrate(f.num, sym)
    return RatFn(num, f.den)


def construct_hamiltonian(
    vf: Mapping[int, RatFn], pairs: Sequence
) -> tuple:
    """Reconstruct K with vf = (dK/dz, -dK/dx, dK/dw, -dK/dy), if it exists.

    Returns ``(K, diagnostics)``.  K is None when the field is not
    Hamiltonian for the given canonical pairs, and ``diagnostics`` then
    records the first integrability residual that failed to vanish.
    The reconstructed K carries no term free of all four variables, so
    it is the unique normalized Hamiltonian of the field.
    """
    (x, z), (y, w) = pairs
    variables = (x, z, y, w)
    for s in variables:
        for fac, _ in vf[s].den:
            if fac.symbols() & set(variables):
                return None, {
                    "reason": "component denominator involves chart variables",
                    "component": s,
                }
    k = _integrate(vf[x], z, variables)
    r = -vf[z] - k.diff(x)
    if not r.diff(z).is_zero():
        return None, {"reason": "integrability failure", "component": z, "residual": r}
    k = k + _integrate(r, x, variables)
    s_resid = vf[y] - k.diff(w)
    for bad in (z, x):
        if not s_resid.diff(bad).is_zero():
            return None, {"reason": "integrability failure", "component": y, "residual": s_resid}
    k = k + _integrate(s_resid, w, variables)
    u = -vf[w] - k.diff(y)
    for bad in (z, x, w):
        if not u.diff(bad).is_zero():
            return None, {"reason": "integrability failure", "component": w, "residual": u}
    k = k + _integrate(u, y, variables)
    # Confirm the reconstruction reproduces the field exactly.
    back = hamilton_equations(k, pairs)
    for s in variables:
        if not (back[s] - vf[s]).is_zero():
            return None, {"reason": "reconstruction mismatch", "component": s}
    return k, {"reason": "ok"}
