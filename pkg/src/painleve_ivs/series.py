"""Formal power-series solutions through accessible singular loci.

The engine expands the flow of a pole window as a power series in
``t - t0`` around a base point on an accessible locus.  The window
system has a single pole coordinate; clearing that denominator turns
the four equations of motion into polynomial identities whose series
coefficients are matched order by order.  Rank deficiencies in the
matching introduce free constants; the resulting truncated solution is
then pushed through transition maps to certify that the resolving
chart receives finite initial data parametrized by those constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import charts
from . import singularities as sing
from .parsing import parse, ratfn_to_text
from .poly import Poly
from .ratfn import RatFn, rat
from .symbols import ALPHA, ETA, T, name_of, sym

T0 = sym("t0", "t_0")

_ZERO = RatFn.const(0)
_ONE = RatFn.const(1)
_LETTERS = ("a", "b", "c", "d")
_PARAM_SYMS = frozenset(ALPHA) | {ETA}


def _is_zero(r: RatFn) -> bool:
    return r.normalized().is_zero()


# ---------------------------------------------------------------------------
# Truncated series arithmetic (lists of RatFn coefficients in t - t0)
# ---------------------------------------------------------------------------

def _ser_trim(s: Sequence[RatFn], m: int) -> list:
    out = list(s[: m + 1])
    out.extend([_ZERO] * (m + 1 - len(out)))
    return out


def _ser_add(a: Sequence[RatFn], b: Sequence[RatFn]) -> list:
    n = max(len(a), len(b))
    aa, bb = _ser_trim(a, n - 1), _ser_trim(b, n - 1)
    return [x + y for x, y in zip(aa, bb)]


def _ser_mul(a: Sequence[RatFn], b: Sequence[RatFn], m: int) -> list:
    out = [_ZERO] * (m + 1)
    for i, x in enumerate(a):
        if i > m or x.is_zero():
            continue
        for j, y in enumerate(b):
            if i + j > m:
                break
            if y.is_zero():
                continue
            out[i + j] = out[i + j] + x * y
    return out


def _ser_pow(a: Sequence[RatFn], n: int, m: int) -> list:
    out = [_ONE] + [_ZERO] * m
    base = _ser_trim(a, m)
    for _ in range(n):
        out = _ser_mul(out, base, m)
    return out


def _ser_diff(a: Sequence[RatFn]) -> list:
    return [RatFn.const(k) * a[k] for k in range(1, len(a))]


def _ser_lead(a: Sequence[RatFn]) -> int | None:
    for k, c in enumerate(a):
        if not _is_zero(c):
            return k
    return None


def _ser_div(num: Sequence[RatFn], den: Sequence[RatFn], m: int) -> list:
    """Series quotient to order ``m``; cancels a common leading zero."""
    r = _ser_lead(den)
    if r is None:
        raise ZeroDivisionError("series denominator vanishes through the computed order")
    if r:
        for c in num[:r]:
            if not _is_zero(c):
                raise ValueError("series quotient has a pole: denominator order exceeds numerator order")
        num = list(num[r:])
        den = list(den[r:])
    num = _ser_trim(num, m)
    den = _ser_trim(den, m)
    inv0 = den[0].reciprocal()
    out = [_ZERO] * (m + 1)
    for k in range(m + 1):
        acc = num[k]
        for j in range(k):
            acc = acc - out[j] * den[k - j]
        out[k] = acc * inv0
    return out


def _poly_on_series(p: Poly, env: Mapping[int, Sequence[RatFn]], m: int) -> list:
    """Series of a polynomial along per-symbol coefficient series.

    Symbols absent from ``env`` stay symbolic inside the coefficients.
    """
    out = [_ZERO] * (m + 1)
    powers: dict = {}
    for mono, coeff in p.terms().items():
        ser = None
        residue: list = []
        for s, e in mono:
            if s in env:
                key = (s, e)
                if key not in powers:
                    powers[key] = _ser_pow(env[s], e, m)
                ser = powers[key] if ser is None else _ser_mul(ser, powers[key], m)
            else:
                residue.append((s, e))
        scale = RatFn(Poly({tuple(residue): coeff}))
        if ser is None:
            out[0] = out[0] + scale
        else:
            for k in range(m + 1):
                if not ser[k].is_zero():
                    out[k] = out[k] + ser[k] * scale
    return out


# ---------------------------------------------------------------------------
# Series solutions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeriesSolution:
    """Truncated power-series solution of one chart's flow at a base point."""

    chart: str
    syms: tuple
    base: Mapping[int, RatFn]
    coeffs: Mapping[int, tuple]
    order: int
    leading_shift: Mapping[int, int]
    free: tuple            # ((free symbol, introduction order), ...)
    assumptions: tuple     # textual nonzero assumptions used while solving

    def series(self, s: int) -> list:
        """Coefficients c0..cN of the coordinate ``s``."""
        return [self.base[s], *self.coeffs[s]]

    def free_symbols(self) -> tuple:
        return tuple(u for u, _ in self.free)


def base_parameter(position: int) -> int:
    """Symbol for the free initial value at a window-coordinate position."""
    return sym(f"{_LETTERS[position]}_0", f"{_LETTERS[position]}_0")


def locus_base_point(locus) -> dict:
    """Window base point of a locus with symbolic free values and t0."""
    if isinstance(locus, str):
        locus = sing.locus_by_name(locus)
    win = charts.get_chart(locus.window)
    images = {T: RatFn.var(T0)}
    for pos, s in enumerate(win.syms):
        if s in locus.free:
            images[s] = RatFn.var(base_parameter(pos))
    return {s: locus.parametrization[s].substitute(images) for s in win.syms}


def _linear_split(p: Poly, unknowns: frozenset) -> tuple | None:
    """Split ``p`` as sum(coeff_u * u) + rest, or None when not affine."""
    buckets: dict = {}
    rest: dict = {}
    for mono, coeff in p.terms().items():
        hits = [(s, e) for s, e in mono if s in unknowns]
        if not hits:
            rest[mono] = coeff
            continue
        if len(hits) > 1 or hits[0][1] > 1:
            return None
        u = hits[0][0]
        stripped = tuple((s, e) for s, e in mono if s != u)
        buckets.setdefault(u, {})[stripped] = coeff
    return {u: Poly(t) for u, t in buckets.items()}, Poly(rest)


class InconsistentExpansion(ValueError):
    """The matching equations have no solution at some order."""

    def __init__(self, chart: str, order: int, residual: str):
        self.order = order
        self.residual = residual
        super().__init__(
            f"series matching on {chart} is inconsistent at order {order}: "
            f"residual {residual} (the base point is not an accessible initial condition)"
        )


class _Aff:
    """Concrete rational function plus linear terms in matching unknowns.

    Unknown coefficients of the current matching order are keyed by
    ``(row, order)``; their coefficients are always concrete, which is
    what makes the per-order systems honestly linear.
    """

    __slots__ = ("c", "lin")

    def __init__(self, c: RatFn = _ZERO, lin: dict | None = None):
        self.c = c
        self.lin = lin if lin is not None else {}

    def is_zero(self) -> bool:
        return not self.lin and self.c.is_zero()


def _aff_add(a: _Aff, b: _Aff) -> _Aff:
    if not b.lin:
        return _Aff(a.c + b.c, a.lin)
    lin = dict(a.lin)
    for u, co in b.lin.items():
        lin[u] = lin[u] + co if u in lin else co
    return _Aff(a.c + b.c, lin)


def _aff_neg(a: _Aff) -> _Aff:
    return _Aff(-a.c, {u: -co for u, co in a.lin.items()})


def _aff_scale(a: _Aff, r: RatFn) -> _Aff:
    if r.is_zero():
        return _Aff()
    if not a.lin:
        return _Aff(a.c * r)
    return _Aff(a.c * r, {u: co * r for u, co in a.lin.items()})


def _aff_mul(a: _Aff, b: _Aff) -> _Aff:
    if a.lin and b.lin:
        raise RuntimeError("order matching produced a product of two undetermined coefficients")
    if b.lin:
        a, b = b, a
    return _aff_scale(a, b.c)


def _sa_trim(s: Sequence[_Aff], m: int) -> list:
    out = list(s[: m + 1])
    out.extend(_Aff() for _ in range(m + 1 - len(out)))
    return out


def _sa_mul(a: Sequence[_Aff], b: Sequence[_Aff], m: int) -> list:
    out = [_Aff() for _ in range(m + 1)]
    for i, x in enumerate(a):
        if i > m:
            break
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if i + j > m:
                break
            if y.is_zero():
                continue
            out[i + j] = _aff_add(out[i + j], _aff_mul(x, y))
    return out


def _sa_pow(a: Sequence[_Aff], n: int, m: int) -> list:
    out = [_Aff(_ONE)] + [_Aff() for _ in range(m)]
    base = _sa_trim(a, m)
    for _ in range(n):
        out = _sa_mul(out, base, m)
    return out


def _sa_diff(a: Sequence[_Aff]) -> list:
    return [_aff_scale(a[k], RatFn.const(k)) for k in range(1, len(a))]


def _poly_on_series_aff(p: Poly, env: Mapping[int, Sequence[_Aff]], m: int) -> list:
    out = [_Aff() for _ in range(m + 1)]
    powers: dict = {}
    for mono, coeff in p.terms().items():
        ser = None
        residue: list = []
        for s, e in mono:
            if s in env:
                key = (s, e)
                if key not in powers:
                    powers[key] = _sa_pow(env[s], e, m)
                ser = powers[key] if ser is None else _sa_mul(ser, powers[key], m)
            else:
                residue.append((s, e))
        scale = RatFn(Poly({tuple(residue): coeff}))
        if ser is None:
            out[0] = _aff_add(out[0], _Aff(scale))
        else:
            for k in range(m + 1):
                if not ser[k].is_zero():
                    out[k] = _aff_add(out[k], _aff_scale(ser[k], scale))
    return out


def expand_solution(chart: str, base_point: Mapping[int, RatFn], N: int = 4) -> SeriesSolution:
    """Power-series solution of a chart's flow around ``t0``.

    Clears each equation's denominator, substitutes the order-zero
    ansatz ``u_i = base_i + sum c_{i,k} (t-t0)^k`` and matches
    coefficients.  Unknowns an order fails to determine become fresh
    free constants ``f<k>_<coordinate>``; an unsatisfiable order raises
    :class:`InconsistentExpansion`.
    """
    ch = charts.get_chart(chart)
    syms4 = ch.syms
    if N < 2:
        raise ValueError("series order must be at least 2")
    # Working with the canonical parameter representative keeps every
    # derived coefficient canonical too, so zero tests stay cheap.
    field = {s: f.normalized() for s, f in charts.transported_field(chart).items()}
    base = {s: rat(base_point[s]).normalized() for s in syms4}
    for v in base.values():
        if v.symbols() & set(syms4):
            raise ValueError("base point values must not involve the chart coordinates")

    # Cleared equations and denominator lags at the base point.
    lags = []
    cleareds = []
    for i, s in enumerate(syms4):
        lag = 0
        cleared = Poly.const(1)
        for fac, mult in field[s].den:
            at_base = rat(fac).substitute({**base, T: RatFn.var(T0)})
            if _is_zero(at_base):
                lag += mult
            cleared = cleared * fac ** mult
        if lag > 1:
            raise ValueError(
                f"equation for {name_of(s)} on {chart} has a pole of order {lag} at the base point"
            )
        lags.append(lag)
        cleareds.append(cleared)
    m_rows = [N - 1 + lag for lag in lags]
    max_order = max(m_rows)

    resolved: dict = {}        # (row, order) -> concrete coefficient
    free_list: list = []       # (free symbol, introduction order)
    assumptions: set = set()
    t_series = [_Aff(RatFn.var(T0)), _Aff(_ONE)] + [_Aff() for _ in range(max_order + 1)]

    def coeff_entry(i: int, k: int) -> _Aff:
        if k == 0:
            return _Aff(base[syms4[i]])
        if k > N:
            return _Aff()
        if (i, k) in resolved:
            return _Aff(resolved[(i, k)])
        return _Aff(_ZERO, {(i, k): _ONE})

    # The matching identities are linear in each order's undetermined
    # coefficients, so the orders are swept in sequence: build the four
    # order-K identities as affine forms, eliminate exactly, and freeze
    # whatever order-K coefficient stays undetermined into a fresh free
    # constant before the next order begins.
    for K in range(max_order + 1):
        env = {T: t_series[: K + 2]}
        for i, s in enumerate(syms4):
            env[s] = [coeff_entry(i, k) for k in range(K + 2)]
        rows = []
        for i, s in enumerate(syms4):
            if K > m_rows[i]:
                continue
            dser = _poly_on_series_aff(cleareds[i], env, K)
            nser = _poly_on_series_aff(field[s].num, env, K)
            udot = _sa_trim(_sa_diff(env[s]), K)
            lhs = _sa_mul(dser, udot, K)
            rows.append((i, _aff_add(lhs[K], _aff_neg(nser[K]))))

        def prune(r: _Aff) -> _Aff:
            return _Aff(r.c, {u: co for u, co in r.lin.items() if not co.is_zero()})

        work = [(i, prune(r)) for i, r in rows]
        pivots = []
        phase_b = False
        while True:
            acted = False
            for idx, (i, r) in enumerate(work):
                if not r.lin:
                    continue
                own_col = (i, K + 1) if lags[i] == 0 else (i, K)
                if own_col in r.lin:
                    col = own_col
                elif phase_b:
                    col = sorted(r.lin, key=lambda c: (-c[1], c[0]))[0]
                else:
                    continue
                a = r.lin[col]
                rest = _Aff(r.c, {u: co for u, co in r.lin.items() if u != col})
                expr = _aff_scale(rest, -a.reciprocal())
                if set(a.symbols()) - {T0}:
                    assumptions.add(f"nonzero: {ratfn_to_text(a.normalized())}")
                work.pop(idx)
                reduced = []
                for j, r2 in work:
                    if col in r2.lin:
                        b = r2.lin[col]
                        r2 = _aff_add(
                            _Aff(r2.c, {u: co for u, co in r2.lin.items() if u != col}),
                            _aff_scale(expr, b),
                        )
                        r2 = prune(r2)
                    reduced.append((j, r2))
                work = reduced
                pivots.append((col, expr))
                acted = True
                break
            if acted:
                continue
            if not phase_b:
                phase_b = True
                continue
            break

        for i, r in work:
            if not r.c.is_zero() and not _is_zero(r.c):
                raise InconsistentExpansion(chart, K, ratfn_to_text(r.c.normalized()))

        pivot_cols = {col for col, _ in pivots}
        for i in range(4):
            for k in range(1, min(K, N) + 1):
                col = (i, k)
                if col not in resolved and col not in pivot_cols:
                    fs = sym(f"f{k}_{name_of(syms4[i])}")
                    resolved[col] = RatFn.var(fs)
                    free_list.append((fs, k))

        values: dict = {}
        for col, expr in reversed(pivots):
            val = expr.c
            for u, co in expr.lin.items():
                val = val + co * (values[u] if u in values else resolved[u])
            values[col] = val
        resolved.update(values)

    coeffs: dict = {}
    for i, s in enumerate(syms4):
        coeffs[s] = tuple(resolved[(i, k)] for k in range(1, N + 1))

    for fs, k in free_list:
        for s in syms4:
            for j in range(k - 1):
                if fs in coeffs[s][j].symbols():
                    raise RuntimeError(
                        f"free constant {name_of(fs)} leaks into order {j + 1}"
                    )

    return SeriesSolution(
        chart=chart,
        syms=syms4,
        base=base,
        coeffs=coeffs,
        order=N,
        leading_shift={s: 0 for s in syms4},
        free=tuple(free_list),
        assumptions=tuple(sorted(assumptions)),
    )


def verify_residual(sol: SeriesSolution) -> dict:
    """Independent check that the cleared system vanishes to order N-1."""
    field = {s: f.normalized() for s, f in charts.transported_field(sol.chart).items()}
    env = {T: [RatFn.var(T0), _ONE] + [_ZERO] * (sol.order - 1)}
    for s in sol.syms:
        env[s] = sol.series(s)
    m = sol.order - 1
    rows = []
    ok = True
    for s in sol.syms:
        f = field[s]
        cleared = Poly.const(1)
        for fac, mult in f.den:
            cleared = cleared * fac ** mult
        dser = _poly_on_series(cleared, env, m)
        nser = _poly_on_series(f.num, env, m)
        udot = _ser_trim(_ser_diff(env[s]), m)
        eq = [x - y for x, y in zip(_ser_mul(dser, udot, m), nser)]
        bad = [k for k in range(m + 1) if not _is_zero(eq[k])]
        rows.append((name_of(s), not bad))
        ok = ok and not bad
    return {"chart": sol.chart, "orders_checked": m, "rows": rows, "ok": ok}


def limit_along_series(expr, sol: SeriesSolution) -> RatFn:
    """Value of a rational expression at t0 along a series solution."""
    expr = rat(expr).normalized()
    m = sol.order
    env = {T: [RatFn.var(T0), _ONE] + [_ZERO] * (m - 1)}
    for s in sol.syms:
        env[s] = sol.series(s)
    num = _poly_on_series(expr.num, env, m)
    den = [_ONE] + [_ZERO] * m
    for fac, mult in expr.den:
        den = _ser_mul(den, _ser_pow(_poly_on_series(fac, env, m), mult, m), m)
    ld = _ser_lead(den)
    if ld is None:
        raise ZeroDivisionError(
            f"denominator of the limit vanishes through order {m} along the series"
        )
    ln = _ser_lead(num)
    if ln is None:
        return RatFn.const(0)
    if ld > ln:
        raise ValueError(
            f"expression has a pole along the series: numerator order {ln}, "
            f"denominator order {ld}"
        )
    if ln > ld:
        return RatFn.const(0)
    return num[ln] / den[ld]


# ---------------------------------------------------------------------------
# Verification reports
# ---------------------------------------------------------------------------

def _eqz(x, y) -> bool:
    return _is_zero(rat(x) - rat(y))


def _affine_part(r: RatFn, s: int) -> tuple:
    """Write ``r`` as coeff * s + rest (requires degree <= 1 in ``s``)."""
    split = _linear_split(r.num, frozenset({s}))
    if split is None:
        raise ValueError(f"expression is not affine-linear in {name_of(s)}")
    buckets, rest = split
    den = RatFn(Poly.const(1), r.den)
    coeff = buckets.get(s, Poly.zero())
    return RatFn(coeff) * den, RatFn(rest) * den


def _allowed(r: RatFn, allowed: set) -> bool:
    return r.symbols() <= allowed


def verify_leading_coefficients() -> dict:
    """Frozen leading-order data of the two worked window expansions."""
    checks = []
    p = parse

    b0 = base_parameter(1)
    win = charts.get_chart("W01")
    q1, q2, p1, p2 = win.syms
    allowed_base = {T0, ETA, b0} | set(ALPHA)

    sol = expand_solution("W01", locus_base_point("C2_01"), N=2)
    a_c, b_c, c_c, d_c = (sol.coeffs[s] for s in (q1, q2, p1, p2))
    checks.append(("C2_01: shifts all zero", all(v == 0 for v in sol.leading_shift.values())))
    checks.append(("C2_01: c1 = -1/t0", _eqz(c_c[0], p("-1/t0"))))
    checks.append(("C2_01: a1 = -a0/t0", _eqz(a_c[0], p("-a0/t0"))))
    free = {name_of(s): k for s, k in sol.free}
    checks.append(
        ("C2_01: free constants are d1 and a2", free == {"f1_p2_01": 1, "f2_q1": 2})
    )
    f1 = sym("f1_p2_01")
    f2 = sym("f2_q1")
    coeff_b1, rest_b1 = _affine_part(b_c[0], f1)
    checks.append(
        (
            "C2_01: b1 = -2*b0*(b0-1)*(b0-t0)/(t0-1) * d1 + B1",
            _eqz(coeff_b1, p("-2*b_0*(b_0-1)*(b_0-t0)/(t0-1)")),
        )
    )
    checks.append(("C2_01: B1 free of the series constants", _allowed(rest_b1, allowed_base)))
    checks.append(
        (
            "C2_01: c2 and d2 are unique given d1",
            _allowed(c_c[1], allowed_base | {f1}) and _allowed(d_c[1], allowed_base | {f1}),
        )
    )
    coeff_b2, rest_b2 = _affine_part(b_c[1], f2)
    checks.append(
        (
            "C2_01: b2 = -(b0+1)*(b0-t0)/(2*(t0-1)) * a2 + B2",
            _eqz(coeff_b2, p("-(b_0+1)*(b_0-t0)/(2*(t0-1))")),
        )
    )
    checks.append(("C2_01: B2 free of a2", _allowed(rest_b2, allowed_base | {f1})))

    solp = expand_solution("W01", locus_base_point("P3_01"), N=2)
    a_p, b_p, c_p, d_p = (solp.coeffs[s] for s in (q1, q2, p1, p2))
    allowed_p = {T0, ETA} | set(ALPHA)
    checks.append(("P3_01: c1 = 1/(t0-1)", _eqz(c_p[0], p("1/(t0-1)"))))
    checks.append(("P3_01: d1 = -a3/(t0*(t0-1))", _eqz(d_p[0], p("-a3/(t0*(t0-1))"))))
    checks.append(("P3_01: a1 = (a3+a5-eta)/(t0-1)", _eqz(a_p[0], p("(a3+a5-eta)/(t0-1)"))))
    checks.append(("P3_01: b1 = 1 - a4/2", _eqz(b_p[0], p("1 - a4/2"))))
    freep = {name_of(s): k for s, k in solp.free}
    checks.append(
        ("P3_01: free constants are a2 and d2", freep == {"f2_q1": 2, "f2_p2_01": 2})
    )
    checks.append(
        (
            "P3_01: b2 and c2 are unique parameter expressions",
            _allowed(b_p[1], allowed_p) and _allowed(c_p[1], allowed_p),
        )
    )
    checks.append(
        (
            "P3_01: t0 + a3*c1/d1 = 0",
            _is_zero(RatFn.var(T0) + rat(Poly.var(ALPHA[3])) * c_p[0] / d_p[0]),
        )
    )

    ok = all(flag for _, flag in checks)
    return {"checks": checks, "ok": ok}


def _det(rows: list) -> RatFn:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = _ZERO
    sign = 1
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det(minor)
        acc = acc + (term if sign > 0 else -term)
        sign = -sign
    return acc


def _intermediate_images(window: str, word: tuple) -> dict:
    """Window coordinates composed with a symmetry word, on the window."""
    wch = charts.get_chart(window)
    out = {}
    for s, expr in zip(wch.syms, wch.from_base):
        e = expr
        for gname in word:
            e = charts.apply_map(charts.generator(gname), e)
        out[s] = e.substitute(wch.to_base).normalized()
    return out


def verify_resolution_by_series(locus, chart: str | None = None, N: int = 4) -> dict:
    """Series certificate that a resolving chart receives the locus data.

    Expands the window flow at the locus, takes limits of the resolving
    chart's coordinates along the series, and checks finiteness, the
    vanishing pattern, and that the free data parametrizes the finite
    limits with an invertible Jacobian.  For reflection-built charts the
    word's action is verified to carry the initial point onto the
    parent chart's locus.
    """
    if isinstance(locus, str):
        locus = sing.locus_by_name(locus)
    names = sing.REDUCED_C_NAMES + sing.REDUCED_P_NAMES
    if locus.name not in names:
        raise ValueError(f"{locus.name} is not one of the reduced loci")
    chart_name = chart or locus.name
    ch = charts.get_chart(chart_name)
    checks = []
    flags = []

    sol = expand_solution(locus.window, locus_base_point(locus), N)
    res = verify_residual(sol)
    checks.append((f"residual vanishes to order {res['orders_checked']}", res["ok"]))

    tr = charts.transition(locus.window, chart_name)
    limits = {}
    finite = True
    for s in ch.syms:
        try:
            limits[s] = limit_along_series(tr[s], sol)
        except (ValueError, ZeroDivisionError) as exc:
            finite = False
            flags.append(f"{name_of(s)}: {exc}")
    checks.append(("all four chart limits are finite", finite))
    if not finite:
        return {
            "locus": locus.name,
            "chart": chart_name,
            "checks": checks,
            "flags": flags,
            "ok": False,
        }

    vanish_expected = {ch.syms[2]}
    if locus.kind == "P":
        vanish_expected.add(ch.syms[3])
    vanish_ok = all(
        _is_zero(limits[s]) == (s in vanish_expected) for s in ch.syms
    )
    checks.append(("vanishing limits are exactly the contracted coordinates", vanish_ok))

    params = [base_parameter(list(charts.get_chart(locus.window).syms).index(s)) for s in locus.free]
    params += [fs for fs, _ in sol.free]
    finite_syms = [s for s in ch.syms if s not in vanish_expected]
    checks.append(
        (
            "free data matches the finite coordinates",
            len(params) == len(finite_syms),
        )
    )
    jac = [[limits[s].diff(u) for u in params] for s in finite_syms]
    for u, col in zip(params, range(len(params))):
        col_ok = any(not _is_zero(jac[r][col]) for r in range(len(finite_syms)))
        checks.append((f"{name_of(u)} enters the finite limits", col_ok))
    if len(params) == len(finite_syms):
        checks.append(("initial-data Jacobian is invertible", not _is_zero(_det(jac))))

    checks.append(("exactly two free series constants", len(sol.free) == 2))
    fiber = len(locus.free)
    time_slot = 0 if fiber else 1
    checks.append(
        ("three initial-data parameters", fiber + len(sol.free) + time_slot == 3)
    )

    if locus.kind == "P":
        inter = _intermediate_images(locus.window, ch.word)
        point = {}
        inter_ok = True
        for s in charts.get_chart(locus.window).syms:
            try:
                point[s] = limit_along_series(inter[s], sol)
            except (ValueError, ZeroDivisionError) as exc:
                inter_ok = False
                flags.append(f"intermediate {name_of(s)}: {exc}")
        if inter_ok:
            parent = sing.locus_by_name(ch.parent)
            on_parent = all(
                _is_zero(rat(d).substitute({**point, T: RatFn.var(T0)}))
                for d in parent.defining
            )
            checks.append(
                (f"symmetry word sends the initial point onto {ch.parent}", on_parent)
            )
        else:
            checks.append(("symmetry word sends the initial point onto the parent locus", False))
        fA, fB = (fs for fs, _ in sol.free)
        x_sym, y_sym = ch.syms[0], ch.syms[1]
        a1c = limits[x_sym].diff(fA)
        a2c = limits[x_sym].diff(fB)
        a4c = limits[y_sym].diff(fB)
        checks.append(("both free constants reach the first coordinate", not _is_zero(a1c) and not _is_zero(a2c)))
        if _is_zero(a4c):
            a4c = limits[y_sym].diff(fA)
            if _is_zero(a4c):
                flags.append("second-coordinate coupling to the free constants vanishes")

    ok = all(flag for _, flag in checks) and not flags
    return {
        "locus": locus.name,
        "chart": chart_name,
        "checks": checks,
        "flags": flags,
        "limits": {name_of(s): ratfn_to_text(v) for s, v in limits.items()},
        "free": [(name_of(fs), k) for fs, k in sol.free],
        "assumptions": sol.assumptions,
        "ok": ok,
    }


def verify_chart_consistency(locus, chart: str | None = None, N: int = 4) -> dict:
    """Re-expansion in the resolving chart reproduces the window series.

    Expands the resolving chart's polynomial flow at the limit point,
    pushes that series back through the transition map, and compares
    with the window expansion order by order.
    """
    if isinstance(locus, str):
        locus = sing.locus_by_name(locus)
    chart_name = chart or locus.name
    ch = charts.get_chart(chart_name)
    nc = min(N, 4)

    sol = expand_solution(locus.window, locus_base_point(locus), N)
    tr = charts.transition(locus.window, chart_name)
    limits = {s: limit_along_series(tr[s], sol) for s in ch.syms}

    chart_sol = expand_solution(chart_name, limits, nc)
    rows = [("chart expansion introduces no free constants", chart_sol.free == ())]

    back = charts.transition(chart_name, locus.window)
    margin = 0
    while True:
        m = nc + margin
        if margin:
            chart_sol = expand_solution(chart_name, limits, m)
        env = {T: [RatFn.var(T0), _ONE] + [_ZERO] * (m - 1)}
        for s in ch.syms:
            env[s] = chart_sol.series(s)
        needed = 0
        quotients = {}
        for w in sol.syms:
            expr = back[w]
            num = _poly_on_series(expr.num, env, m)
            den = [_ONE] + [_ZERO] * m
            for fac, mult in expr.den:
                den = _ser_mul(den, _ser_pow(_poly_on_series(fac, env, m), mult, m), m)
            r = _ser_lead(den)
            if r is None:
                raise ZeroDivisionError("transition denominator vanishes along the chart series")
            needed = max(needed, r)
            if r <= margin:
                quotients[w] = _ser_div(num, den, nc)
        if len(quotients) == len(sol.syms):
            break
        margin = needed

    ok = True
    for w in sol.syms:
        target = sol.series(w)
        got = quotients[w]
        agree = all(_is_zero(got[k] - target[k]) for k in range(nc + 1))
        rows.append((f"{name_of(w)} series reproduced to order {nc}", agree))
        ok = ok and agree
    return {"locus": locus.name, "chart": chart_name, "rows": rows, "ok": ok and rows[0][1]}


def verify_all_resolutions(N: int = 4) -> dict:
    """Resolution-by-series reports for all reduced loci."""
    reports = {}
    ok = True
    for name in sing.REDUCED_C_NAMES + sing.REDUCED_P_NAMES:
        rep = verify_resolution_by_series(name, N=N)
        reports[name] = rep
        ok = ok and rep["ok"]
    return {"loci": reports, "count": len(reports), "ok": ok}
