"""Chart atlas for the compactified initial-value space.

The phase space C^4 is compactified inside a product of two projective
planes carrying homogeneous coordinates xi (positions) and zeta
(momenta), glued over the three standard position charts by the
eta-twisted matrices ``Z10``/``Z20``.  Nine affine windows ``W_ij``
(i = position chart, j = momentum chart) cover the compactification;
the three symplectic windows ``W_00, W_10, W_20`` carry polynomial
Hamiltonian systems, while the remaining six expose the pole divisor
of the flow.

On top of the windows sit the resolved charts: nine ``C``-type charts
given by explicit symplectic coordinates, and twelve ``P``-type charts
obtained from them by reflection substitutions.  Together with the
three symplectic windows they form the 24-chart atlas.  Every chart is
represented by

* ``from_base`` — its four coordinates as exact rational functions of
  the base variables (q1, q2, p1, p2), and
* ``to_base``   — the base variables as exact rational functions of
  its coordinates,

so that any transition is a substitution and every structural claim
(inverse round trips, symplecticity, polynomial Hamiltonians, pole
structure, gluing consistency) is decided by exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hamiltonian import (
    PAIRS_BASE,
    construct_hamiltonian,
    hamilton_equations,
    hamiltonian,
    poisson_bracket,
)
from .parsing import parse
from .poly import Poly, exact_divide
from .ratfn import RatFn, rat
from .symbols import (
    ETA,
    P1,
    P2,
    PARAMETERS,
    Q1,
    Q2,
    T,
    name_of,
    sym,
)
from .symmetry import BirationalMap, apply_map, compose, generator, word_map

__all__ = [
    "Chart",
    "atlas",
    "window_charts",
    "get_chart",
    "transition",
    "roundtrip_ok",
    "transported_field",
    "polynomial_hamiltonian",
    "symplecticity_brackets",
    "z_matrix",
    "z_matrix_determinant_ok",
    "gluing_consistency_ok",
    "window_pairing_maps",
    "window_pairing_ok",
    "pole_structure",
    "blowup_stage_charts",
    "blowup_checks",
    "ATLAS_NAMES",
    "WINDOW_NAMES",
    "POLE_WINDOW_NAMES",
]

BASE_VARS = (Q1, Q2, P1, P2)


@dataclass(frozen=True)
class Chart:
    """An affine chart with exact transitions to the base window."""

    name: str
    kind: str  # "window" | "C" | "P" | "blow"
    syms: tuple
    from_base: tuple  # chart coordinates as RatFn in base variables
    to_base: dict  # base variable -> RatFn in chart coordinates
    parent: str | None = None
    word: tuple = ()

    @property
    def pairs(self) -> tuple:
        """Canonical conjugate pairs ((x, z), (y, w)) of the chart."""
        a, b, c, d = self.syms
        return ((a, c), (b, d))


# ---------------------------------------------------------------------------
# Symbol registration
# ---------------------------------------------------------------------------

def _reg4(names, latexes):
    return tuple(sym(n, lx) for n, lx in zip(names, latexes))


_W10_SYMS = _reg4(
    ("q1_1", "q2_1", "p1_1", "p2_1"),
    ("q_1^{(1)}", "q_2^{(1)}", "p_1^{(1)}", "p_2^{(1)}"),
)
_W20_SYMS = _reg4(
    ("q1_2", "q2_2", "p1_2", "p2_2"),
    ("q_1^{(2)}", "q_2^{(2)}", "p_1^{(2)}", "p_2^{(2)}"),
)
_PFLIP_SYMS = {
    tag: _reg4(
        (f"p1_{tag}", f"p2_{tag}"),
        (f"p_1^{{({tag})}}", f"p_2^{{({tag})}}"),
    )
    for tag in ("01", "02", "11", "12", "21", "22")
}


def _c_syms(stem: str, tag: str) -> tuple:
    return tuple(
        sym(f"{ch}{stem}_{tag}", f"{ch}_{stem}^{{[{tag}]}}")
        for ch in "xyzw"
    )


def _p_syms(stem: str, tag: str) -> tuple:
    return tuple(
        sym(f"{ch}t{stem}_{tag}", f"\\tilde{{{ch}}}_{stem}^{{[{tag}]}}")
        for ch in "xyzw"
    )


# Homogeneous position coordinates, used by the gluing matrices.
XI = tuple(sym(f"xi{i}", f"\\xi_{i}") for i in range(3))


# ---------------------------------------------------------------------------
# Window charts
# ---------------------------------------------------------------------------

def _subst(expr: RatFn, env: dict) -> RatFn:
    return expr.substitute({k: rat(v) for k, v in env.items()})


def _build_windows() -> dict:
    charts = {}

    charts["base"] = Chart(
        name="base",
        kind="window",
        syms=BASE_VARS,
        from_base=tuple(RatFn.var(v) for v in BASE_VARS),
        to_base={v: RatFn.var(v) for v in BASE_VARS},
    )

    # Position flips: the windows over the other two position charts.
    charts["W10"] = Chart(
        "W10", "window", _W10_SYMS,
        tuple(parse(s) for s in (
            "1/q1",
            "q2/q1",
            "-q1*(q1*p1 + q2*p2 + eta)",
            "q1*p2",
        )),
        {
            Q1: parse("1/q1_1"),
            Q2: parse("q2_1/q1_1"),
            P1: parse("-q1_1*(q1_1*p1_1 + q2_1*p2_1 + eta)"),
            P2: parse("q1_1*p2_1"),
        },
    )
    charts["W20"] = Chart(
        "W20", "window", _W20_SYMS,
        tuple(parse(s) for s in (
            "q1/q2",
            "1/q2",
            "q2*p1",
            "-q2*(q1*p1 + q2*p2 + eta)",
        )),
        {
            Q1: parse("q1_2/q2_2"),
            Q2: parse("1/q2_2"),
            P1: parse("q2_2*p1_2"),
            P2: parse("-q2_2*(q1_2*p1_2 + q2_2*p2_2 + eta)"),
        },
    )

    # Momentum flips on top of each symplectic window.
    def momentum_flip(parent: Chart, which: int, tag: str) -> Chart:
        q1e, q2e, p1e, p2e = parent.from_base
        pa, pb = _PFLIP_SYMS[tag]
        if which == 1:
            flipped = (p1e.reciprocal(), p2e / p1e)
            inv_p = (
                RatFn.var(pa).reciprocal(),
                RatFn.var(pb) / RatFn.var(pa),
            )
        else:
            flipped = (p1e / p2e, p2e.reciprocal())
            inv_p = (
                RatFn.var(pa) / RatFn.var(pb),
                RatFn.var(pb).reciprocal(),
            )
        psub = {parent.syms[2]: inv_p[0], parent.syms[3]: inv_p[1]}
        to_base = {v: _subst(parent.to_base[v], psub) for v in BASE_VARS}
        syms = (parent.syms[0], parent.syms[1], pa, pb)
        return Chart(
            f"W{tag}", "window", syms,
            (q1e, q2e) + flipped, to_base, parent=parent.name,
        )

    charts["W01"] = momentum_flip(charts["base"], 1, "01")
    charts["W02"] = momentum_flip(charts["base"], 2, "02")
    charts["W11"] = momentum_flip(charts["W10"], 1, "11")
    charts["W12"] = momentum_flip(charts["W10"], 2, "12")
    charts["W21"] = momentum_flip(charts["W20"], 1, "21")
    charts["W22"] = momentum_flip(charts["W20"], 2, "22")
    return charts


WINDOW_NAMES = (
    "base", "W01", "W02", "W10", "W11", "W12", "W20", "W21", "W22",
)
POLE_WINDOW_NAMES = ("W01", "W02", "W11", "W12", "W21", "W22")


# ---------------------------------------------------------------------------
# Resolved charts
# ---------------------------------------------------------------------------

def _c_chart(
    name: str,
    parent: Chart,
    syms: tuple,
    formulas: tuple,
    inverses: dict,
) -> Chart:
    """C-type chart from formulas in the parent window's variables.

    ``formulas`` give (x, y, z, w) in parent variables; ``inverses``
    give the parent variables in chart coordinates.  Both are composed
    with the parent's own base transitions.
    """
    parent_env = dict(zip(parent.syms, parent.from_base))
    from_base = tuple(_subst(f, parent_env) for f in formulas)
    to_base = {v: _subst(parent.to_base[v], inverses) for v in BASE_VARS}
    return Chart(name, "C", syms, from_base, to_base, parent=parent.name)


def _fold_word(word: tuple) -> BirationalMap:
    """Map whose substitution operator applies the word left to right."""
    maps = [generator(w) for w in word]
    m = maps[0]
    for g in maps[1:]:
        m = compose(m, g)
    return m


def _p_chart(name: str, source: Chart, word: tuple, syms: tuple) -> Chart:
    """P-type chart: reflection substitutions applied to a C-chart.

    The forward coordinates substitute the reflections of ``word`` (in
    that order) into the source coordinates; the value obtained is the
    source coordinate of the reflected point at reflected parameters.
    The inverse therefore evaluates the reversed word's variable images
    at the source inverse taken at reflected parameters.  Both
    directions are certified by the atlas round-trip checks.
    """
    maps = [generator(w) for w in word]
    from_base = []
    for expr in source.from_base:
        for m in maps:
            expr = apply_map(m, expr)
        from_base.append(expr)

    m_fwd = _fold_word(word)
    m_inv = _fold_word(tuple(reversed(word)))
    shift = {s: rat(m_fwd.param_images[s]) for s in PARAMETERS}
    env = {v: source.to_base[v].substitute(shift) for v in BASE_VARS}
    env.update(shift)
    rename = dict(zip(source.syms, (RatFn.var(s) for s in syms)))
    to_base = {
        v: m_inv.image(v).substitute(env).substitute(rename)
        for v in BASE_VARS
    }
    return Chart(
        name, "P", syms, tuple(from_base), to_base,
        parent=source.name, word=word,
    )


def _build_atlas() -> dict:
    charts = dict(_build_windows())
    base, w10, w20 = charts["base"], charts["W10"], charts["W20"]

    # --- C-type charts -------------------------------------------------
    charts["C2_01"] = _c_chart(
        "C2_01", base, _c_syms("2", "01"),
        tuple(parse(f) for f in (
            "-((q1-1)*p1 - a0)*p1", "q2", "1/p1", "p2",
        )),
        {
            Q1: parse("1 + (a0 - x2_01*z2_01)*z2_01"),
            Q2: parse("y2_01"),
            P1: parse("1/z2_01"),
            P2: parse("w2_01"),
        },
    )

    def c3_first(name, parent, tag, beta):
        # (x, y, z, w) = (-(Q1 P1 + Q2 P2 - beta) P1, Q2 P1, 1/P1, P2/P1)
        syms = _c_syms("3", tag)
        v = [name_of(u) for u in parent.syms]
        x, y, z, w = (f"{ch}3_{tag}" for ch in "xyzw")
        return _c_chart(
            name, parent, syms,
            tuple(parse(f) for f in (
                f"-({v[0]}*{v[2]} + {v[1]}*{v[3]} - ({beta}))*{v[2]}",
                f"{v[1]}*{v[2]}",
                f"1/{v[2]}",
                f"{v[3]}/{v[2]}",
            )),
            {
                parent.syms[0]: parse(
                    f"-({x}*{z} + {y}*{w} - ({beta}))*{z}"
                ),
                parent.syms[1]: parse(f"{y}*{z}"),
                parent.syms[2]: parse(f"1/{z}"),
                parent.syms[3]: parse(f"{w}/{z}"),
            },
        )

    def c3_second(name, parent, tag, beta):
        # (x, y, z, w) = (Q1 P2, -(Q1 P1 + Q2 P2 - beta) P2, P1/P2, 1/P2)
        syms = _c_syms("3", tag)
        v = [name_of(u) for u in parent.syms]
        x, y, z, w = (f"{ch}3_{tag}" for ch in "xyzw")
        return _c_chart(
            name, parent, syms,
            tuple(parse(f) for f in (
                f"{v[0]}*{v[3]}",
                f"-({v[0]}*{v[2]} + {v[1]}*{v[3]} - ({beta}))*{v[3]}",
                f"{v[2]}/{v[3]}",
                f"1/{v[3]}",
            )),
            {
                parent.syms[0]: parse(f"{x}*{w}"),
                parent.syms[1]: parse(
                    f"-({x}*{z} + {y}*{w} - ({beta}))*{w}"
                ),
                parent.syms[2]: parse(f"{z}/{w}"),
                parent.syms[3]: parse(f"1/{w}"),
            },
        )

    charts["C3_01"] = c3_first("C3_01", base, "01", "a5 - eta")
    charts["C3_02"] = c3_second("C3_02", base, "02", "a5 - eta")
    charts["C3_11"] = c3_first("C3_11", w10, "11", "a1 - eta")
    charts["C3_12"] = c3_second("C3_12", w10, "12", "a1 - eta")
    charts["C3_21"] = c3_first("C3_21", w20, "21", "a3 - eta")
    charts["C3_22"] = c3_second("C3_22", w20, "22", "a3 - eta")

    charts["C2_12"] = _c_chart(
        "C2_12", w10, _c_syms("2", "12"),
        tuple(parse(f) for f in (
            "q1_1",
            "-((q2_1 - 1)*p2_1 - a2)*p2_1",
            "p1_1",
            "1/p2_1",
        )),
        {
            _W10_SYMS[0]: parse("x2_12"),
            _W10_SYMS[1]: parse("1 + (a2 - y2_12*w2_12)*w2_12"),
            _W10_SYMS[2]: parse("z2_12"),
            _W10_SYMS[3]: parse("1/w2_12"),
        },
    )
    charts["C2_22"] = _c_chart(
        "C2_22", w20, _c_syms("2", "22"),
        tuple(parse(f) for f in (
            "q1_2",
            "-((q2_2 - 1/t)*p2_2 - a4)*p2_2",
            "p1_2",
            "1/p2_2",
        )),
        {
            _W20_SYMS[0]: parse("x2_22"),
            _W20_SYMS[1]: parse("1/t + (a4 - y2_22*w2_22)*w2_22"),
            _W20_SYMS[2]: parse("z2_22"),
            _W20_SYMS[3]: parse("1/w2_22"),
        },
    )

    # --- P-type charts --------------------------------------------------
    p_specs = [
        ("P3_01", "C3_01", ("r3",)),
        ("P4_01", "C3_01", ("r3", "r4")),
        ("P6_01", "C2_01", ("r4",)),
        ("P7_01", "C2_01", ("r4", "r5")),
        ("P3_12", "C3_12", ("r5",)),
        ("P4_12", "C3_12", ("r5", "r0")),
        ("P6_12", "C2_12", ("r0",)),
        ("P7_12", "C2_12", ("r0", "r1")),
        ("P3_22", "C3_22", ("r1",)),
        ("P4_22", "C3_22", ("r1", "r2")),
        ("P6_22", "C2_22", ("r2",)),
        ("P7_22", "C2_22", ("r2", "r3")),
    ]
    for name, src, word in p_specs:
        stem, tag = name[1], name[3:]
        charts[name] = _p_chart(
            name, charts[src], word, _p_syms(stem, tag)
        )

    charts.update(_build_blowup(charts))
    return charts


_CHARTS: dict | None = None

ATLAS_NAMES = (
    "base", "W10", "W20",
    "C2_01", "C3_01", "C3_02", "C3_11", "C2_12", "C3_12",
    "C3_21", "C2_22", "C3_22",
    "P3_01", "P4_01", "P6_01", "P7_01",
    "P3_12", "P4_12", "P6_12", "P7_12",
    "P3_22", "P4_22", "P6_22", "P7_22",
)


def _charts() -> dict:
    global _CHARTS
    if _CHARTS is None:
        _CHARTS = _build_atlas()
    return _CHARTS


def atlas() -> dict:
    """The 24 charts of the initial-value space, keyed by name."""
    c = _charts()
    return {n: c[n] for n in ATLAS_NAMES}


def window_charts() -> dict:
    """The nine window charts W_ij, keyed by name."""
    c = _charts()
    return {n: c[n] for n in WINDOW_NAMES}


def get_chart(name: str) -> Chart:
    try:
        return _charts()[name]
    except KeyError:
        raise KeyError(f"unknown chart {name!r}") from None


# ---------------------------------------------------------------------------
# Transitions and round trips
# ---------------------------------------------------------------------------

def transition(a: str, b: str) -> dict:
    """Coordinates of chart ``b`` as rational functions on chart ``a``."""
    ca, cb = get_chart(a), get_chart(b)
    env = dict(ca.to_base)
    return {
        s: _subst(expr, env) for s, expr in zip(cb.syms, cb.from_base)
    }


def roundtrip_ok(name: str) -> bool:
    """Exactness of both transition round trips for one chart."""
    c = get_chart(name)
    env_to = dict(c.to_base)
    for s, expr in zip(c.syms, c.from_base):
        if not _subst(expr, env_to).eq_mod_relation(RatFn.var(s)):
            return False
    env_from = dict(zip(c.syms, c.from_base))
    for v in BASE_VARS:
        if not _subst(c.to_base[v], env_from).eq_mod_relation(
            RatFn.var(v)
        ):
            return False
    return True


# ---------------------------------------------------------------------------
# The flow seen from a chart
# ---------------------------------------------------------------------------

_FIELD_CACHE: dict = {}


def base_field() -> dict:
    """The Hamiltonian vector field in base coordinates."""
    if "base" not in _FIELD_CACHE:
        _FIELD_CACHE["base"] = hamilton_equations(hamiltonian(), PAIRS_BASE)
    return _FIELD_CACHE["base"]


def transported_field(name: str) -> dict:
    """The flow's components d(chart coordinate)/dt on a chart.

    Chain rule in base coordinates followed by the exact substitution
    of the chart's inverse transition.  A reflection-built chart
    instead reuses its parent chart's field with the word's parameter
    shift: the reflections are symmetries of the flow, so the pulled
    back coordinates obey the parent's equations at shifted parameters.
    (The direct chain-rule route is equal but far more expensive; the
    equality of the two routes is pinned by tests on one- and
    two-letter words.)
    """
    if name in _FIELD_CACHE:
        return _FIELD_CACHE[name]
    c = get_chart(name)
    out = {}
    if c.kind == "P":
        src = get_chart(c.parent)
        fsrc = transported_field(c.parent)
        m_fwd = _fold_word(c.word)
        if not m_fwd.time_image.eq_mod_relation(RatFn.var(T)):
            raise ValueError(f"word of {name} rescales time")
        shift = {s: rat(m_fwd.param_images[s]) for s in PARAMETERS}
        rename = {s: RatFn.var(y) for s, y in zip(src.syms, c.syms)}
        for xs, ys in zip(src.syms, c.syms):
            out[ys] = fsrc[xs].substitute(shift).substitute(rename).normalized()
        _FIELD_CACHE[name] = out
        return out
    out = chain_rule_field(name)
    _FIELD_CACHE[name] = out
    return out


def chain_rule_field(name: str) -> dict:
    """The flow on a chart by the direct (uncached) chain-rule route."""
    c = get_chart(name)
    fb = base_field()
    env = {k: rat(v) for k, v in c.to_base.items()}
    out = {}
    for s, expr in zip(c.syms, c.from_base):
        total = expr.diff(T)
        for v in BASE_VARS:
            total = total + expr.diff(v) * fb[v]
        # Cancellations across the window gluings hold only on the
        # normalized parameter space, so reduce the representative.
        out[s] = total.substitute(env).normalized()
    return out


def _chart_poles(comp: RatFn, syms: tuple) -> list:
    """Denominator factors of a component that involve chart variables."""
    return [
        f for f, _ in comp.den if any(v in f.symbols() for v in syms)
    ]


def polynomial_hamiltonian(name: str) -> tuple:
    """(K, diagnostics) for a chart's flow; K is None on failure.

    Success certifies that the chart carries a polynomial Hamiltonian
    system: every component of the flow is polynomial in the chart
    variables (denominators in t only) and is exactly reproduced by
    the reconstructed Hamiltonian through the canonical pairs.
    """
    c = get_chart(name)
    return construct_hamiltonian(transported_field(name), c.pairs)


def symplecticity_brackets(name: str) -> dict:
    """Poisson brackets of the chart coordinates in base variables.

    For a symplectic chart the canonical values are {x,z} = {y,w} = 1
    and all other brackets vanish.  Returns {"ok": bool, "values": ...}.
    """
    c = get_chart(name)
    exprs = dict(zip(c.syms, c.from_base))
    (x, z), (y, w) = c.pairs
    expected = {(x, z): rat(1), (y, w): rat(1)}
    values = {}
    ok = True
    order = list(c.syms)
    for i, a in enumerate(order):
        for b in order[i + 1:]:
            br = poisson_bracket(exprs[a], exprs[b], PAIRS_BASE)
            want = expected.get((a, b), expected.get((b, a), rat(0)))
            good = br.eq_mod_relation(want)
            ok = ok and good
            values[(name_of(a), name_of(b))] = good
    return {"ok": ok, "values": values}


# ---------------------------------------------------------------------------
# Homogeneous gluing data
# ---------------------------------------------------------------------------

def z_matrix(i: int) -> tuple:
    """Gluing matrix from the momentum plane over position chart 0 to
    the one over position chart ``i`` (i = 1, 2), in homogeneous
    position coordinates."""
    x0, x1, x2 = (Poly.var(s) for s in XI)
    eta = Poly.var(ETA)
    zero = Poly.zero()
    if i == 1:
        return (
            (x0 * x0, zero, zero),
            (-eta * x0 * x1, -x1 * x1, -x1 * x2),
            (zero, zero, x0 * x1),
        )
    if i == 2:
        return (
            (x0 * x0, zero, zero),
            (zero, x0 * x2, zero),
            (-eta * x0 * x2, -x1 * x2, -x2 * x2),
        )
    raise ValueError("gluing matrices exist for i = 1, 2")


def _det3(m: tuple) -> Poly:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def z_matrix_determinant_ok(i: int) -> bool:
    """det Z_i0 = -xi_0^3 xi_i^3, so the gluing degenerates only where
    a position coordinate does."""
    x0 = Poly.var(XI[0])
    xi = Poly.var(XI[i])
    return _det3(z_matrix(i)) == -(x0 ** 3) * xi ** 3


def gluing_consistency_ok(i: int) -> bool:
    """The Z-matrix action on affine momenta reproduces the window
    transition: with xi = (1, q1, q2) and zeta = (1, p1, p2), the
    ratios of Z_i0 * zeta give the W_i0 momenta."""
    m = z_matrix(i)
    env = {XI[0]: rat(1), XI[1]: RatFn.var(Q1), XI[2]: RatFn.var(Q2)}
    zeta = (rat(1), RatFn.var(P1), RatFn.var(P2))
    rows = []
    for r in range(3):
        total = rat(0)
        for cidx in range(3):
            total = total + RatFn.from_poly(m[r][cidx]).substitute(
                env
            ) * zeta[cidx]
        rows.append(total)
    w = get_chart("W10" if i == 1 else "W20")
    return (rows[1] / rows[0]) == w.from_base[2] and (
        rows[2] / rows[0]
    ) == w.from_base[3]


def window_pairing_maps() -> dict:
    """The two scaling maps that pair the position-flipped windows
    with the rotation symmetry of the flow."""
    tv = RatFn.var(T)
    ident = {s: Poly.var(s) for s in PARAMETERS}
    psi1 = BirationalMap(
        name="psi1",
        var_images={
            Q1: RatFn.var(Q2),
            Q2: tv * RatFn.var(Q1),
            P1: RatFn.var(P2),
            P2: RatFn.var(P1) / tv,
        },
        param_images=ident,
        time_image=tv,
    )
    psi2 = BirationalMap(
        name="psi2",
        var_images={
            Q1: tv * RatFn.var(Q2),
            Q2: tv * RatFn.var(Q1),
            P1: RatFn.var(P2) / tv,
            P2: RatFn.var(P1) / tv,
        },
        param_images=dict(ident),
        time_image=tv,
    )
    return {"psi1": psi1, "psi2": psi2}


def window_pairing_ok() -> dict:
    """The position-flipped window maps factor through the rotation
    symmetry of the flow: as point transformations, W10 is the scaling
    psi1 followed by the inverse rotation and W20 is psi2 followed by
    the rotation — the reason those windows stay polynomial
    Hamiltonian."""
    psis = window_pairing_maps()
    pi2 = generator("pi2")
    pi2_inv = word_map(["pi2", "pi2"])
    out = {}
    for wname, psi, rot in (
        ("W10", psis["psi1"], pi2_inv),
        ("W20", psis["psi2"], pi2),
    ):
        m = compose(rot, psi)
        w = get_chart(wname)
        out[wname] = all(
            m.image(v).eq_mod_relation(w.from_base[k])
            for k, v in enumerate(BASE_VARS)
        )
    return out


# ---------------------------------------------------------------------------
# Pole structure on the momentum-flipped windows
# ---------------------------------------------------------------------------

def pole_structure(name: str) -> dict:
    """Exact pole data of the flow on a momentum-flipped window.

    The flow has a simple pole along the vanishing of one distinguished
    momentum coordinate: that coordinate's own equation is polynomial,
    the other three components carry the pole, and every polar
    numerator is exactly coprime to it.
    """
    if name not in POLE_WINDOW_NAMES:
        raise ValueError(f"{name} is not a momentum-flipped window")
    c = get_chart(name)
    pole_sym = c.syms[2] if name[2] == "1" else c.syms[3]
    pole = Poly.var(pole_sym)
    field = transported_field(name)
    comps = {}
    ok = True
    for s in c.syms:
        comp = field[s]
        mult = dict(comp.den).get(pole, 0)
        extra = [f for f in _chart_poles(comp, c.syms) if f != pole]
        sharp = mult == 0 or exact_divide(comp.num, pole) is None
        comps[name_of(s)] = {
            "pole_order": mult,
            "numerator_coprime": sharp,
            "other_variable_poles": [str(f) for f in extra],
        }
        ok = ok and sharp and not extra and mult <= 1
    polar = [s for s in c.syms if comps[name_of(s)]["pole_order"] == 1]
    regular = [s for s in c.syms if comps[name_of(s)]["pole_order"] == 0]
    ok = ok and len(polar) == 3 and regular == [pole_sym]
    return {
        "ok": ok,
        "pole": name_of(pole_sym),
        "polar_components": [name_of(s) for s in polar],
        "regular_components": [name_of(s) for s in regular],
        "components": comps,
    }


# ---------------------------------------------------------------------------
# The two-step blow-up producing the C2_01 chart
# ---------------------------------------------------------------------------

BLOWUP_NAMES = ("blow1", "blow1p", "blow1pp", "blow2", "blow2p")


def _build_blowup(charts: dict) -> dict:
    """Charts of the two blow-ups over {q1 = 1, p1 = p2 = infinity}.

    First stage (over the W01 window): three charts covering the
    exceptional divisor.  Second stage (over the plain first-stage
    chart): the finishing chart, which coincides with C2_01, and the
    complementary chart whose exceptional direction is not accessible.
    """
    w01 = charts["W01"]
    out = {}

    def over(parent, name, names, fwd, inv):
        syms = tuple(sym(n) for n in names)
        parent_env = dict(zip(parent.syms, parent.from_base))
        from_base = tuple(_subst(parse(e), parent_env) for e in fwd)
        inv_env = {k: parse(v) for k, v in inv.items()}
        to_base = {
            v: _subst(parent.to_base[v], inv_env) for v in BASE_VARS
        }
        return Chart(name, "blow", syms, from_base, to_base,
                     parent=parent.name)

    p1n, p2n = _PFLIP_SYMS["01"]
    # Stage 1, plain: q1 - 1 = u1 v1, p1 = v1, p2 = v1 v2 (in the W01
    # momenta).
    out["blow1"] = over(
        w01, "blow1", ("u1", "u2", "v1", "v2"),
        ("(q1-1)/p1_01", "q2", "p1_01", "p2_01/p1_01"),
        {Q1: "1 + u1*v1", Q2: "u2", p1n: "v1", p2n: "v1*v2"},
    )
    # Stage 1, primed: q1 - 1 = u'1, p1 = u'1 v'1, p2 = u'1 v'2.
    out["blow1p"] = over(
        w01, "blow1p", ("u1p", "u2p", "v1p", "v2p"),
        ("q1 - 1", "q2", "p1_01/(q1-1)", "p2_01/(q1-1)"),
        {Q1: "1 + u1p", Q2: "u2p", p1n: "u1p*v1p", p2n: "u1p*v2p"},
    )
    # Stage 1, double-primed: q1 - 1 = u''1 v''2, p1 = v''1 v''2,
    # p2 = v''2.
    out["blow1pp"] = over(
        w01, "blow1pp", ("u1pp", "u2pp", "v1pp", "v2pp"),
        ("(q1-1)/p2_01", "q2", "p1_01/p2_01", "p2_01"),
        {Q1: "1 + u1pp*v2pp", Q2: "u2pp", p1n: "v1pp*v2pp",
         p2n: "v2pp"},
    )
    # Stage 2 over the plain chart: a0 - u1 = x z, v1 = z (finishing
    # chart) and a0 - u1 = x', v1 = x' z' (complementary chart).
    out["blow2"] = over(
        out["blow1"], "blow2", ("x2b", "y2b", "z2b", "w2b"),
        ("(a0 - u1)/v1", "u2", "v1", "v2"),
        {
            sym("u1"): "a0 - x2b*z2b",
            sym("u2"): "y2b",
            sym("v1"): "z2b",
            sym("v2"): "w2b",
        },
    )
    out["blow2p"] = over(
        out["blow1"], "blow2p", ("x2q", "y2q", "z2q", "w2q"),
        ("a0 - u1", "u2", "v1/(a0 - u1)", "v2"),
        {
            sym("u1"): "a0 - x2q",
            sym("u2"): "y2q",
            sym("v1"): "x2q*z2q",
            sym("v2"): "w2q",
        },
    )
    return out


def blowup_stage_charts() -> dict:
    """The five blow-up charts, keyed by name."""
    c = _charts()
    return {n: c[n] for n in BLOWUP_NAMES}


def _pole_free(expr: RatFn, syms: tuple) -> bool:
    """True when ``expr`` has no pole along any of ``syms``.

    The test is applied to the canonical representative modulo the
    parameter relation, so cancellations that hold only on the
    parameter hyperplane are honoured.
    """
    return not _chart_poles(expr.normalized(), syms)


def blowup_checks() -> dict:
    """Exact structural facts of the two-step blow-up.

    * the transitions between the three stage-1 charts are the ones
      induced by their defining relations;
    * each stage-1 chart's flow has exactly the displayed polar shape,
      so the accessible locus in the plain chart is
      {u1 = a0, v1 = 0};
    * the finishing stage-2 chart is polynomial and coincides with the
      resolved chart C2_01;
    * the complementary stage-2 chart's exceptional direction carries
      a nowhere-vanishing polar numerator, hence is not accessible.
    """
    out = {}
    u1, u2, v1, v2 = (sym(n) for n in ("u1", "u2", "v1", "v2"))
    u1p, v1p, v2p = (sym(n) for n in ("u1p", "v1p", "v2p"))
    u1pp, v1pp, v2pp = (sym(n) for n in ("u1pp", "v1pp", "v2pp"))

    # Transitions between the stage-1 charts.
    tr = transition("blow1", "blow1p")
    out["stage1_transition_primed"] = (
        tr[u1p] == parse("u1*v1")
        and tr[sym("u2p")] == parse("u2")
        and tr[v1p] == parse("1/u1")
        and tr[v2p] == parse("v2/u1")
    )
    tr = transition("blow1", "blow1pp")
    out["stage1_transition_doubleprimed"] = (
        tr[u1pp] == parse("u1/v2")
        and tr[sym("u2pp")] == parse("u2")
        and tr[v1pp] == parse("1/v2")
        and tr[v2pp] == parse("v1*v2")
    )

    # Plain stage-1 chart: a single simple pole, in du1/dt only, with
    # residue numerator (a0 - u1)/t.
    c1 = get_chart("blow1")
    f1 = transported_field("blow1")
    out["stage1_plain_shape"] = (
        _pole_free(f1[u1] - parse("(a0 - u1)/(t*v1)"), c1.syms)
        and all(_pole_free(f1[s], c1.syms) for s in (u2, v1, v2))
    )

    # Primed stage-1 chart: the position equations have a v'1 pole,
    # dv'1/dt has the u'1 pole with residue numerator (1 - a0 v'1)/t,
    # and the cleared dv'2/dt equals (t-1)(1 - a0 v'1) v'2 modulo u'1.
    cp = get_chart("blow1p")
    fp = transported_field("blow1p")
    v1p_r = RatFn.var(v1p)
    cleared = (
        fp[v2p] * parse("t*(t-1)*u1p*v1p")
        - parse("(t-1)*(1 - a0*v1p)*v2p")
    )
    out["stage1_primed_shape"] = (
        _pole_free(fp[u1p] * v1p_r, cp.syms)
        and _pole_free(fp[sym("u2p")] * v1p_r, cp.syms)
        and _pole_free(fp[v1p] - parse("(1 - a0*v1p)/(t*u1p)"), cp.syms)
        and _pole_free(cleared / RatFn.var(u1p), cp.syms)
    )

    # Double-primed stage-1 chart.
    cpp = get_chart("blow1pp")
    fpp = transported_field("blow1pp")
    cleared = (
        fpp[u1pp] * parse("t*(t-1)*v1pp*v2pp")
        - parse("(t-1)*(a0*v1pp - u1pp)")
    )
    cleared2 = fpp[v2pp] * parse("t*(t-1)*v1pp") - parse("1 - t")
    out["stage1_doubleprimed_shape"] = (
        _pole_free(cleared / RatFn.var(v2pp), cpp.syms)
        and _pole_free(fpp[sym("u2pp")] * RatFn.var(v1pp), cpp.syms)
        and _pole_free(fpp[v1pp], cpp.syms)
        and _pole_free(cleared2 / RatFn.var(v2pp), cpp.syms)
    )

    # Finishing stage-2 chart: polynomial flow, and it is C2_01.
    c2 = get_chart("blow2")
    f2 = transported_field("blow2")
    out["stage2_polynomial"] = all(
        _pole_free(f2[s], c2.syms) for s in c2.syms
    )
    final = get_chart("C2_01")
    out["finishing_chart_equals_resolved_chart"] = all(
        a.eq_mod_relation(b)
        for a, b in zip(c2.from_base, final.from_base)
    )

    # Complementary stage-2 chart: polar numerator -1/t on the
    # exceptional direction never vanishes, the rest is polynomial.
    cq = get_chart("blow2p")
    fq = transported_field("blow2p")
    out["stage2_exceptional_not_accessible"] = (
        _pole_free(fq[sym("x2q")] - parse("-1/(t*z2q)"), cq.syms)
        and all(
            _pole_free(fq[s], cq.syms)
            for s in (sym("y2q"), sym("z2q"), sym("w2q"))
        )
    )
    out["ok"] = all(out.values())
    return out
