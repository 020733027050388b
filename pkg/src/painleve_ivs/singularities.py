"""Accessible singularities of the Hamiltonian flow.

A movable singularity of a solution shows up, in one of the six
momentum windows, as a point where the flow meets the polar locus of
the window's vector field.  The *accessible* points of that locus are
those where every polar numerator of the field vanishes; only there can
a solution arc enter the window boundary.

This module records the complete catalogue of accessible singular loci
(ten per window, sixty in total, of which eighteen are of codimension
three, "C"-type, and forty-two are points over the base, "P"-type), the
rational identifications between loci of different windows (which
reduce the sixty to nine C-classes and twelve P-classes), the
projective-geometric description of the union of the C-loci as six
disjoint components, and the non-accessibility of the locus at position
infinity.  Every statement is verified by exact rational arithmetic:

* :func:`accessible_loci` builds the sixty loci, each carrying an exact
  rational parametrization of its points;
* :func:`verify_accessible` checks a locus against the window's
  transported field (all polar numerators vanish on the locus);
* :func:`appendixA_case_analysis` re-derives the ten loci of the first
  momentum window from the vanishing equations, following the displayed
  case split verbatim, and checks the outcome against the catalogue;
* :func:`window_case_tree` runs the same structural template on any of
  the six windows, flagging (not failing on) deviations;
* :func:`verify_locus_equalities` checks the thirty-six displayed
  identifications between loci in overlapping windows and derives the
  reduced lists;
* :func:`verify_disjoint_components` verifies the homogeneous
  description of the C-locus union: six mutually disjoint components,
  the three C1-classes absorbed into them, and the twelve reduced
  P-loci disjoint from all of them, for every admissible time;
* :func:`verify_nonaccessibility_xi0` checks that the locus at position
  infinity is not accessible under the generic parameter conditions,
  and verifies the invariant-locus flow of the exceptional parameter
  case.

Admissible times form B = C \\ {0, 1}; a polynomial in t certifies
"nonzero for every admissible t" exactly when it is a constant times a
power of t times a power of t - 1 (a unit on B).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .charts import XI, get_chart, transition, transported_field, z_matrix
from .parsing import parse, ratfn_to_text
from .poly import Poly, exact_divide
from .ratfn import RatFn, rat
from .symbols import ALPHA, ETA, T, name_of, sym

__all__ = [
    "SingularLocus",
    "HomogeneousLocus",
    "WINDOWS",
    "C_LABELS",
    "P_LABELS",
    "REDUCED_C_NAMES",
    "REDUCED_P_NAMES",
    "accessible_loci",
    "locus_by_name",
    "polar_system",
    "verify_accessible",
    "verify_all_accessible",
    "appendixA_case_analysis",
    "window_case_tree",
    "all_window_case_trees",
    "verify_locus_equalities",
    "verify_disjoint_components",
    "verify_nonaccessibility_xi0",
]

WINDOWS = ("W01", "W02", "W11", "W12", "W21", "W22")

#: locus labels of codimension three (one free coordinate) ...
C_LABELS = ("C1", "C2", "C3")
#: ... and of maximal codimension (isolated points over the base).
P_LABELS = ("P1", "P2", "P3", "P4", "P5", "P6", "P7")

_ZERO = rat(0)


# ---------------------------------------------------------------------------
# The catalogue
# ---------------------------------------------------------------------------
#
# Ten loci per momentum window, written in the window's own coordinates.
# Momenta that are omitted from a defining set are free; every defining
# polynomial has degree one in the window coordinates.

_CATALOGUE_SRC = {
    "W01": {
        "C1": ("q1 - q2", "p1_01", "p2_01 + 1"),
        "C2": ("q1 - 1", "p1_01", "p2_01"),
        "C3": ("q1", "q2", "p1_01"),
        "P1": ("q1 - t", "q2 - t", "p1_01", "p2_01"),
        "P2": ("q1 - t", "q2 + t", "p1_01", "p2_01"),
        "P3": ("q1", "q2 - t", "p1_01", "p2_01"),
        "P4": ("q1", "q2 - t", "p1_01", "(t-1)*p2_01 - 2"),
        "P5": ("q1 - 1", "q2", "p1_01", "2*t*p2_01 + t - 1"),
        "P6": ("q1 - 1", "q2 - t", "p1_01", "t*p2_01 + 1"),
        "P7": ("q1 + 1", "q2 + t", "p1_01", "t*p2_01 + 1"),
    },
    "W02": {
        "C1": ("q1 - q2", "p1_02 + 1", "p2_02"),
        "C2": ("q2 - t", "p1_02", "p2_02"),
        "C3": ("q1", "q2", "p2_02"),
        "P1": ("q1 - 1", "q2 - 1", "p1_02", "p2_02"),
        "P2": ("q1 + 1", "q2 - 1", "p1_02", "p2_02"),
        "P3": ("q1 - 1", "q2", "p1_02", "p2_02"),
        "P4": ("q1", "q2 - t", "2*p1_02 - t + 1", "p2_02"),
        "P5": ("q1 - 1", "q2", "(t-1)*p1_02 + 2*t", "p2_02"),
        "P6": ("q1 - 1", "q2 - t", "p1_02 + t", "p2_02"),
        "P7": ("q1 + 1", "q2 + t", "p1_02 + t", "p2_02"),
    },
    "W11": {
        "C1": ("t*q1_1 - q2_1", "p1_11", "t*p2_11 + 1"),
        "C2": ("q1_1 - 1", "p1_11", "p2_11"),
        "C3": ("q1_1", "q2_1", "p1_11"),
        "P1": ("t*q1_1 - 1", "q2_1 - 1", "p1_11", "p2_11"),
        "P2": ("t*q1_1 - 1", "q2_1 + 1", "p1_11", "p2_11"),
        "P3": ("q1_1", "q2_1 - 1", "p1_11", "p2_11"),
        "P4": ("q1_1 - 1", "q2_1", "p1_11", "2*t*p2_11 - t + 1"),
        "P5": ("q1_1", "q2_1 - 1", "p1_11", "(t-1)*p2_11 + 2"),
        "P6": ("q1_1 - 1", "q2_1 - 1", "p1_11", "p2_11 + 1"),
        "P7": ("q1_1 + 1", "q2_1 + 1", "p1_11", "p2_11 + 1"),
    },
    "W12": {
        "C1": ("t*q1_1 - q2_1", "p1_12 + t", "p2_12"),
        "C2": ("q2_1 - 1", "p1_12", "p2_12"),
        "C3": ("q1_1", "q2_1", "p2_12"),
        "P1": ("q1_1 - 1", "q2_1 - t", "p1_12", "p2_12"),
        "P2": ("q1_1 + 1", "q2_1 - t", "p1_12", "p2_12"),
        "P3": ("q1_1 - 1", "q2_1", "p1_12", "p2_12"),
        "P4": ("q1_1 - 1", "q2_1", "(t-1)*p1_12 - 2*t", "p2_12"),
        "P5": ("q1_1", "q2_1 - 1", "2*p1_12 + t - 1", "p2_12"),
        "P6": ("q1_1 - 1", "q2_1 - 1", "p1_12 + 1", "p2_12"),
        "P7": ("q1_1 + 1", "q2_1 + 1", "p1_12 + 1", "p2_12"),
    },
    "W21": {
        "C1": ("q1_2 - q2_2", "p1_21", "p2_21 + 1"),
        "C2": ("q1_2 - 1", "p1_21", "p2_21"),
        "C3": ("q1_2", "q2_2", "p1_21"),
        "P1": ("t*q1_2 - 1", "t*q2_2 - 1", "p1_21", "p2_21"),
        "P2": ("t*q1_2 - 1", "t*q2_2 + 1", "p1_21", "p2_21"),
        "P3": ("q1_2", "t*q2_2 - 1", "p1_21", "p2_21"),
        "P4": ("q1_2 - 1", "q2_2", "p1_21", "2*p2_21 - t + 1"),
        "P5": ("q1_2", "t*q2_2 - 1", "p1_21", "(t-1)*p2_21 + 2*t"),
        "P6": ("q1_2 - 1", "t*q2_2 - 1", "p1_21", "p2_21 + t"),
        "P7": ("q1_2 + 1", "t*q2_2 + 1", "p1_21", "p2_21 + t"),
    },
    "W22": {
        "C1": ("q1_2 - q2_2", "p1_22 + 1", "p2_22"),
        "C2": ("t*q2_2 - 1", "p1_22", "p2_22"),
        "C3": ("q1_2", "q2_2", "p2_22"),
        "P1": ("q1_2 - 1", "q2_2 - 1", "p1_22", "p2_22"),
        "P2": ("q1_2 + 1", "q2_2 - 1", "p1_22", "p2_22"),
        "P3": ("q1_2 - 1", "q2_2", "p1_22", "p2_22"),
        "P4": ("q1_2 - 1", "q2_2", "(t-1)*p1_22 - 2", "p2_22"),
        "P5": ("q1_2", "t*q2_2 - 1", "2*t*p1_22 + t - 1", "p2_22"),
        "P6": ("q1_2 - 1", "t*q2_2 - 1", "t*p1_22 + 1", "p2_22"),
        "P7": ("q1_2 + 1", "t*q2_2 + 1", "t*p1_22 + 1", "p2_22"),
    },
}

#: the pole coordinate of each momentum window (the variable whose
#: vanishing is the window's boundary divisor).
WINDOW_POLE = {
    "W01": "p1_01",
    "W02": "p2_02",
    "W11": "p1_11",
    "W12": "p2_12",
    "W21": "p1_21",
    "W22": "p2_22",
}


def _window_suffix(window: str) -> str:
    return window[1:]


def locus_name(label: str, window: str) -> str:
    """Canonical locus name, e.g. ``C2_01`` for label C2 in window W01."""
    return f"{label}_{_window_suffix(window)}"


# ---------------------------------------------------------------------------
# Exact affine-linear solving (for the rational parametrizations)
# ---------------------------------------------------------------------------


def _linear_rows(defining: tuple, syms: tuple) -> list:
    """Split affine-linear polynomials into coefficient rows.

    Each element of ``defining`` must have degree at most one in the
    chart coordinates ``syms`` jointly; coefficients may involve t.
    Returns ``[(coeffs, const)]`` with ``coeffs`` a dict sym -> RatFn
    and ``const`` a RatFn.
    """
    sset = set(syms)
    rows = []
    for eq in defining:
        coeffs: dict = {}
        const_terms: dict = {}
        for mono, coef in eq.terms().items():
            chart_part = [(s, e) for s, e in mono if s in sset]
            rest = tuple((s, e) for s, e in mono if s not in sset)
            if not chart_part:
                const_terms[rest] = const_terms.get(rest, 0) + coef
            elif len(chart_part) == 1 and chart_part[0][1] == 1:
                s = chart_part[0][0]
                bucket = coeffs.setdefault(s, {})
                bucket[rest] = bucket.get(rest, 0) + coef
            else:
                raise ValueError(
                    "defining equation is not affine-linear in the chart "
                    f"coordinates: {eq}"
                )
        rows.append((
            {s: rat(Poly(b)) for s, b in coeffs.items()},
            rat(Poly(const_terms)),
        ))
    return rows


def solve_affine_linear(defining: tuple, syms: tuple) -> tuple:
    """Solve an affine-linear system for the chart coordinates, exactly.

    Returns ``(parametrization, free)`` where ``parametrization`` maps
    every symbol of ``syms`` to a RatFn in the free symbols and t, and
    ``free`` lists the symbols not determined by the system.  Raises
    ``ValueError`` on an inconsistent system.
    """
    solved: dict = {}
    for eq in defining:
        # fold in the symbols solved so far, then re-read the row's
        # linear structure (substitution can merge coefficient terms)
        expr = rat(eq).substitute(solved) if solved else rat(eq)
        if expr.is_zero():
            continue
        ((coeffs, const),) = _linear_rows((expr.num,), syms)
        pivot = next(
            (s for s in syms if s in coeffs and not coeffs[s].is_zero()),
            None,
        )
        if pivot is None:
            if const.is_zero():
                continue
            raise ValueError("inconsistent affine-linear system")
        value = -const / coeffs[pivot]
        for s, c in coeffs.items():
            if s != pivot and not c.is_zero():
                value = value - (c / coeffs[pivot]) * RatFn.var(s)
        solved = {k: v.substitute({pivot: value}) for k, v in solved.items()}
        solved[pivot] = value
    free = tuple(s for s in syms if s not in solved)
    parametrization = {s: solved.get(s, RatFn.var(s)) for s in syms}
    return parametrization, free


# ---------------------------------------------------------------------------
# Locus types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SingularLocus:
    """One accessible singular locus, in the coordinates of its window.

    ``defining`` polynomials cut out the locus; coordinates absent from
    them are free.  ``parametrization`` expresses every window
    coordinate as an exact rational function of the free coordinates
    and t; it satisfies the defining equations identically.
    ``nonvanishing`` lists polynomials that are nonzero on the admissible
    base (always t and t - 1).
    """

    name: str
    label: str
    window: str
    defining: tuple
    parametrization: dict = field(compare=False)
    free: tuple
    nonvanishing: tuple = field(compare=False)

    @property
    def kind(self) -> str:
        """``C`` for codimension-three loci, ``P`` for point loci."""
        return self.label[0]


@dataclass(frozen=True)
class HomogeneousLocus:
    """A locus in the homogeneous position/momentum coordinates.

    Positions are [xi0 : xi1 : xi2]; momenta are taken in the momentum
    frame attached to position patch ``patch`` (0, 1 or 2).  ``xi_eqs``
    are linear forms in xi vanishing on the locus, ``xi_point`` an
    explicit projective position when the locus sits over one point.
    ``zeta_point`` is an explicit projective momentum direction, and
    ``zeta_eqs`` linear forms in the momentum frame that vanish;
    ``xi_neq``/``zeta_neq`` are forms required to be nonzero.
    Every form is a coefficient triple of RatFn in t.
    """

    name: str
    patch: int
    xi_eqs: tuple = ()
    xi_point: tuple | None = None
    xi_neq: tuple = ()
    zeta_eqs: tuple = ()
    zeta_point: tuple | None = None
    zeta_neq: tuple = ()


_LOCI_CACHE: list | None = None


def accessible_loci() -> tuple:
    """The sixty accessible singular loci, ten per momentum window."""
    global _LOCI_CACHE
    if _LOCI_CACHE is None:
        base_units = (parse("t").num, parse("t - 1").num)
        out = []
        for window in WINDOWS:
            chart = get_chart(window)
            for label in C_LABELS + P_LABELS:
                defining = tuple(
                    parse(s).num for s in _CATALOGUE_SRC[window][label]
                )
                param, free = solve_affine_linear(defining, chart.syms)
                for eq in defining:
                    residue = rat(eq).substitute(param)
                    if not residue.is_zero():
                        raise AssertionError(
                            f"parametrization of {locus_name(label, window)} "
                            "does not satisfy its defining equations"
                        )
                out.append(SingularLocus(
                    name=locus_name(label, window),
                    label=label,
                    window=window,
                    defining=defining,
                    parametrization=param,
                    free=free,
                    nonvanishing=base_units,
                ))
        _LOCI_CACHE = out
    return tuple(_LOCI_CACHE)


def locus_by_name(name: str) -> SingularLocus:
    for locus in accessible_loci():
        if locus.name == name:
            return locus
    raise KeyError(f"unknown locus {name!r}")


# ---------------------------------------------------------------------------
# Polar systems and accessibility
# ---------------------------------------------------------------------------


_POLAR_CACHE: dict = {}


def polar_system(window: str) -> dict:
    """The polar data of a momentum window's transported field.

    Returns a dict with the pole symbol, the list of polar rows (each a
    pair ``(sym, numerator)`` where ``numerator`` is the component's
    numerator restricted to the pole divisor — a polynomial whose zero
    set, inside the divisor, is the accessible locus), and the rows that
    are regular along the divisor.
    """
    if window in _POLAR_CACHE:
        return _POLAR_CACHE[window]
    chart = get_chart(window)
    pole = sym(WINDOW_POLE[window])
    fld = transported_field(window)
    zero_pole = {pole: Poly.const(Fraction(0))}
    polar, regular = [], []
    for s in chart.syms:
        comp = fld[s].normalized()
        pole_mult = sum(m for f, m in comp.den if pole in f.symbols())
        if pole_mult == 0:
            regular.append(s)
            continue
        for f, m in comp.den:
            if pole in f.symbols() and (f != RatFn.var(pole).num or m != 1):
                raise AssertionError(
                    f"unexpected pole shape in {window}: {ratfn_to_text(comp)}"
                )
        polar.append((s, comp.num.substitute(zero_pole)))
    out = {"window": window, "pole": pole, "polar": polar, "regular": regular}
    _POLAR_CACHE[window] = out
    return out


def verify_accessible(locus: SingularLocus) -> dict:
    """Check one locus against its window's polar system.

    The locus must lie inside the pole divisor, and every polar
    numerator of the transported field must vanish identically on its
    parametrization.
    """
    system = polar_system(locus.window)
    pole = system["pole"]
    checks = []
    checks.append((
        "pole_coordinate_vanishes",
        locus.parametrization[pole].is_zero(),
    ))
    for s, numerator in system["polar"]:
        value = rat(numerator).substitute(locus.parametrization)
        checks.append((
            f"polar_numerator_vanishes:{name_of(s)}",
            value.normalized().is_zero(),
        ))
    return {
        "name": locus.name,
        "window": locus.window,
        "checks": checks,
        "ok": all(ok for _, ok in checks),
    }


def verify_all_accessible() -> dict:
    """Accessibility of all sixty catalogued loci, plus the counts."""
    loci = accessible_loci()
    reports = [verify_accessible(locus) for locus in loci]
    c_count = sum(1 for l in loci if l.kind == "C")
    p_count = sum(1 for l in loci if l.kind == "P")
    counts_ok = (len(loci), c_count, p_count) == (60, 18, 42)
    return {
        "reports": reports,
        "counts": {"total": len(loci), "C": c_count, "P": p_count},
        "ok": counts_ok and all(r["ok"] for r in reports),
    }


# ---------------------------------------------------------------------------
# Shared helpers for exact disjointness / identification arguments
# ---------------------------------------------------------------------------


def _strip_units(p: Poly) -> Poly:
    """Remove all factors of t and t - 1."""
    for unit in (parse("t").num, parse("t - 1").num):
        while True:
            q = exact_divide(p, unit)
            if q is None:
                break
            p = q
    return p


def unit_on_B(value) -> bool:
    """True when ``value`` is nonzero for every admissible t.

    A rational function of t alone qualifies exactly when its numerator
    is a constant times a power of t times a power of t - 1.  Anything
    involving other symbols does not qualify.
    """
    v = rat(value)
    if v.is_zero():
        return False
    if not v.num.symbols() <= {T}:
        return False
    return _strip_units(v.num).total_degree() == 0


def _t_coefficients(p: Poly) -> list:
    out: list = []
    for mono, coef in p.terms().items():
        deg = mono[0][1] if mono else 0
        while len(out) <= deg:
            out.append(Fraction(0))
        out[deg] += coef
    while out and out[-1] == 0:
        out.pop()
    return out


def _gcd_in_t(polys: list) -> Poly | None:
    """Monic gcd of univariate polynomials in t (None for the empty gcd)."""
    coeff_lists = []
    for p in polys:
        if not p.symbols() <= {T}:
            return None
        c = _t_coefficients(p)
        if c:
            coeff_lists.append(c)
    if not coeff_lists:
        return None

    def mod(a: list, b: list) -> list:
        a = list(a)
        while len(a) >= len(b) and a:
            factor = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, bc in enumerate(b):
                a[shift + i] -= factor * bc
            while a and a[-1] == 0:
                a.pop()
        return a

    g = coeff_lists[0]
    for c in coeff_lists[1:]:
        while c:
            g, c = c, mod(g, c)
    g = [x / g[-1] for x in g]
    terms = {((T, i),) if i else (): c for i, c in enumerate(g) if c != 0}
    return Poly(terms)


def _image_point(point: dict, window_from: str, window_to: str):
    """Map an exact point through a window transition.

    ``point`` maps every coordinate of ``window_from`` to a RatFn in t.
    Returns ``(image, None)`` with ``image`` mapping the coordinates of
    ``window_to``, or ``(None, blocker)`` when a denominator of the
    transition vanishes identically at the point — the image then lies
    outside the target window for every t.
    """
    tr = transition(window_from, window_to)
    image = {}
    for s, expr in tr.items():
        for f, _ in expr.den:
            if rat(f).substitute(point).is_zero():
                return None, f
        image[s] = expr.substitute(point)
    return image, None


def _locus_values_at(image: Mapping, locus: SingularLocus) -> list:
    """Values of a locus's defining polynomials at an exact image point."""
    return [rat(eq).substitute(image) for eq in locus.defining]


def _excluded_for_all_t(values: list) -> tuple:
    """Decide whether defining values separate a point for every t.

    Returns ``(verdict, detail)`` with verdict ``True`` (some value is
    nonzero for every admissible t), ``False`` (all values vanish
    identically), or ``None`` (undecided — flagged by the caller).
    """
    if any(unit_on_B(v) for v in values):
        return True, "unit value"
    nonzero = [v for v in values if not v.is_zero()]
    if not nonzero:
        return False, "all defining values vanish identically"
    g = _gcd_in_t([v.num for v in nonzero])
    if g is None:
        return None, "value involves symbols other than t"
    if _strip_units(g).total_degree() == 0:
        return True, "values have no common admissible zero"
    return None, f"common zero candidates: {g}"


# ---------------------------------------------------------------------------
# The displayed case analysis on the first momentum window
# ---------------------------------------------------------------------------


def _w01_polar_brackets() -> dict:
    """The cleared polar numerators of the first momentum window.

    Multiplying the field by t(t-1) clears the base denominators; the
    numerators of the three polar rows, restricted to the pole divisor
    p1_01 = 0, are returned as polynomials in q1, q2, p2_01, t.
    """
    fld = transported_field("W01")
    q1, q2, p1, p2 = get_chart("W01").syms
    clear = parse("t*(t-1)")
    zero_pole = {p1: Poly.const(Fraction(0))}
    out = {}
    for key, s in (("F1", q1), ("F2", q2), ("G2", p2)):
        comp = (fld[s] * clear).normalized()
        for f, m in comp.den:
            if f != RatFn.var(p1).num or m != 1:
                raise AssertionError("unexpected denominator on W01 row")
        out[key] = comp.num.substitute(zero_pole)
    out["regular_row"] = p1
    return out


def appendixA_case_analysis() -> dict:
    """Re-derive the ten W01 loci from the vanishing equations.

    Follows the displayed case split of the accessible-singularity
    derivation step by step: factor the three cleared polar numerators,
    branch on the vanishing of the shared linear factors, solve each
    branch, and compare the thirteen raw solutions (after merging the
    sub-cases that reassemble larger loci) with the catalogue.
    """
    checks: list = []

    def check(cid: str, ok: bool) -> None:
        checks.append((cid, bool(ok)))

    data = _w01_polar_brackets()
    F1, F2, G2 = data["F1"], data["F2"], data["G2"]
    q1, q2, p1, p2 = get_chart("W01").syms

    # The displayed factored forms of the cleared polar numerators.
    check("F1_display", rat(F1) == parse(
        "(q1 - 1)*(2*q1*(q1 - t) + (q1 + q2)*(q2 - t)*p2_01)"))
    check("F2_display", rat(F2) == parse(
        "(q2 - t)*((q1 - 1)*(q1 + q2) + 2*q2*(q2 - 1)*p2_01)"))
    check("G2_display", rat(G2) == parse(
        "((2*q1^2 - 2*q1*q2 - (t+1)*q1 + 2*q2)"
        " + (2*q1*q2 - 2*q2^2 - 2*t*q1 + (t+1)*q2)*p2_01)*p2_01"))

    # Bracket matrix: rows are the (constant, linear) coefficients in
    # the free momentum of the three brackets.
    a_rows = (
        ("2*q1*(q1 - t)", "(q1 + q2)*(q2 - t)"),
        ("(q1 - 1)*(q1 + q2)", "2*q2*(q2 - 1)"),
        ("2*q1^2 - 2*q1*q2 - (t+1)*q1 + 2*q2",
         "2*q1*q2 - 2*q2^2 - 2*t*q1 + (t+1)*q2"),
    )
    A = [[parse(e) for e in row] for row in a_rows]
    b1 = exact_divide(F1, parse("q1 - 1").num)
    b2 = exact_divide(F2, parse("q2 - t").num)
    b3 = exact_divide(G2, parse("p2_01").num)
    check("brackets_factor", b1 is not None and b2 is not None and b3 is not None)
    for i, bracket in enumerate((b1, b2, b3)):
        br = rat(bracket)
        check(
            f"A_row_{i}",
            br == A[i][0] + A[i][1] * RatFn.var(p2),
        )

    # 2x2 minors of A share the factor q1 - q2; the displayed cubic
    # cofactors X, Y, Z satisfy Y + Z = -3 (t-1) (t q1 - q2).
    X = parse("q1^2*q2 - q1*q2^2 - t*q1^2 - 3*(t-1)*q1*q2 + q2^2 + t*q1 - t*q2")
    Y = parse("2*q1^2*q2 - 2*q1*q2^2 - 2*t*q1^2 - 3*(t-1)*q1*q2"
              " + 2*q2^2 + 2*t*q1 + (t-3)*q2")
    Z = parse("-2*q1^2*q2 + 2*q1*q2^2 + 2*t*q1^2 + 3*(t-1)*q1*q2"
              " - 2*q2^2 - t*(3*t-1)*q1 + 2*t*q2")
    d = parse("q1 - q2")
    check("minor_01", A[0][0]*A[1][1] - A[0][1]*A[1][0] == -(d * X))
    check("minor_02", A[0][0]*A[2][1] - A[0][1]*A[2][0] == -(d * Z))
    check("minor_12", A[1][0]*A[2][1] - A[1][1]*A[2][0] == d * Y)
    check("Y_plus_Z", Y + Z == parse("-3*(t-1)*(t*q1 - q2)"))

    solutions: list = []

    def add_solution(name: str, *eqs: str) -> None:
        solutions.append((name, tuple(parse(e).num for e in eqs)))

    # Case 1: q1 = 1 (F1 vanishes).  The second numerator reduces to
    # 2 q2 (q2 - 1)(q2 - t) p2, the third to
    # -(t - 1 + (2 q2^2 - (t+3) q2 + 2t) p2) p2.
    sub1 = {q1: parse("1").num}
    F2c1, G2c1 = F2.substitute(sub1), G2.substitute(sub1)
    check("case1_F2", rat(F2c1) == 2 * parse("q2*(q2 - 1)*(q2 - t)*p2_01"))
    check("case1_G2", rat(G2c1) == -(
        parse("(t - 1 + (2*q2^2 - (t+3)*q2 + 2*t)*p2_01)*p2_01")))
    # p2 = 0 solves both with q2 free: the C2 family.
    check("case1_p2_zero", rat(
        G2c1.substitute({p2: Poly.const(Fraction(0))})).is_zero())
    add_solution("C2", "q1 - 1", "p1_01", "p2_01")
    # q2 = 0, p2 != 0: p2 = -(t-1)/(2t).
    g = rat(G2c1.substitute({q2: Poly.const(Fraction(0))}))
    check("case1_q2_zero", g == -(parse("(t - 1 + 2*t*p2_01)*p2_01")))
    add_solution("P5", "q1 - 1", "q2", "p1_01", "2*t*p2_01 + t - 1")
    # q2 = 1, p2 != 0: p2 = -1.
    g = rat(G2c1.substitute({q2: Poly.const(Fraction(1))}))
    check("case1_q2_one", g == -(parse("(t - 1)*(1 + p2_01)*p2_01")))
    add_solution("C1sub1", "q1 - 1", "q2 - 1", "p1_01", "p2_01 + 1")
    # q2 = t, p2 != 0: p2 = -1/t.
    g = rat(G2c1.substitute({q2: parse("t").num}))
    check("case1_q2_t", g == -(parse("(t - 1)*(1 + t*p2_01)*p2_01")))
    add_solution("P6", "q1 - 1", "q2 - t", "p1_01", "t*p2_01 + 1")

    # Case 2: q2 = t (F2 vanishes), q1 != 1.  The first numerator
    # reduces to 2 (q1 - 1) q1 (q1 - t); the third to
    # ((2 q1^2 - (3t+1) q1 + 2t) - t(t-1) p2) p2.
    sub2 = {q2: parse("t").num}
    F1c2, G2c2 = F1.substitute(sub2), G2.substitute(sub2)
    check("case2_F1", rat(F1c2) == 2 * parse("(q1 - 1)*q1*(q1 - t)"))
    check("case2_G2", rat(G2c2) == parse(
        "((2*q1^2 - (3*t+1)*q1 + 2*t) - t*(t-1)*p2_01)*p2_01"))
    # q1 = 0: p2 = 0 or p2 = 2/(t-1).
    g = rat(G2c2.substitute({q1: Poly.const(Fraction(0))}))
    check("case2_q1_zero", g == parse("(2*t - t*(t-1)*p2_01)*p2_01"))
    add_solution("P3", "q1", "q2 - t", "p1_01", "p2_01")
    add_solution("P4", "q1", "q2 - t", "p1_01", "(t-1)*p2_01 - 2")
    # q1 = t: p2 = 0 or p2 = -1.
    g = rat(G2c2.substitute({q1: parse("t").num}))
    check("case2_q1_t", g == -(parse("t*(t-1)*(1 + p2_01)*p2_01")))
    add_solution("P1", "q1 - t", "q2 - t", "p1_01", "p2_01")
    add_solution("C1sub2", "q1 - t", "q2 - t", "p1_01", "p2_01 + 1")

    # Case 3: p2 = 0 (G2 vanishes), q1 != 1, q2 != t.  The system
    # reduces to q1 (q1 - t) = q1 + q2 = 0.
    sub3 = {p2: Poly.const(Fraction(0))}
    check("case3_G2", rat(G2.substitute(sub3)).is_zero())
    check("case3_F1", rat(F1.substitute(sub3)) ==
          parse("(q1 - 1)") * 2 * parse("q1*(q1 - t)"))
    check("case3_F2", rat(F2.substitute(sub3)) ==
          parse("(q2 - t)*(q1 - 1)*(q1 + q2)"))
    add_solution("C31", "q1", "q2", "p1_01", "p2_01")
    add_solution("P2", "q1 - t", "q2 + t", "p1_01", "p2_01")

    # Case 4: none of the above vanishes, so the bracket matrix must
    # kill the vector (1, p2): its rank drops to at most one.
    # Sub-case q1 = q2: every row of A becomes proportional to (1, 1).
    sub41 = {q2: Poly({((q1, 1),): Fraction(1)})}
    row_factors = ("2*q1*(q1 - t)", "2*q1*(q1 - 1)", "-(t-1)*q1")
    for i, rf in enumerate(row_factors):
        fct = parse(rf)
        check(
            f"case4_diag_row_{i}",
            rat(A[i][0].num.substitute(sub41)) == fct
            and rat(A[i][1].num.substitute(sub41)) == fct,
        )
    add_solution("C1", "q1 - q2", "p1_01", "p2_01 + 1")
    add_solution("C32", "q1", "q2", "p1_01")
    # Sub-case q1 != q2: the cofactors X, Y, Z vanish; Y + Z forces
    # q2 = t q1, and then X = -t (t-1) q1 (q1+1)^2 picks q1 = -1 out of
    # q1 = 0 (which would fall back to q1 = q2).
    subq = {q2: parse("t*q1").num}
    check("case4_X_at_tq1",
          rat(X.num.substitute(subq)) == -(parse("t*(t-1)*q1*(q1+1)^2")))
    check("case4_Y_at_tq1",
          rat(Y.num.substitute(subq)) == -(parse("t*(t-1)*q1*(q1+1)*(2*q1-1)")))
    check("case4_Z_at_tq1",
          rat(Z.num.substitute(subq)) == parse("t*(t-1)*q1*(q1+1)*(2*q1-1)"))
    # At (q1, q2) = (-1, -t) every row of A is proportional to (1, t),
    # so the kernel condition on (1, p2) forces t p2 + 1 = 0.
    pt = {q1: Poly.const(Fraction(-1)), q2: parse("-t").num}
    a_at = [[rat(A[i][j].num.substitute(pt)) for j in (0, 1)] for i in (0, 1, 2)]
    check("case4_point_matrix",
          a_at[0][0] == parse("2*(t+1)") and a_at[0][1] == parse("2*t*(t+1)")
          and a_at[1][0] == parse("2*(t+1)") and a_at[1][1] == parse("2*t*(t+1)")
          and a_at[2][0] == parse("-3*(t-1)") and a_at[2][1] == parse("-3*t*(t-1)"))
    check("case4_P7_condition", rat(
        (A[2][0] + A[2][1] * RatFn.var(p2)).num.substitute(pt))
        == parse("-3*(t-1)*(1 + t*p2_01)"))
    add_solution("P7", "q1 + 1", "q2 + t", "p1_01", "t*p2_01 + 1")

    check("thirteen_solutions", len(solutions) == 13)

    # Merge: the two point sub-cases lie on C1, and the two C3
    # sub-cases (p2 = 0 and p2 != 0) reassemble C3.
    merged: dict = {}
    chart_syms = get_chart("W01").syms
    c1_def = tuple(parse(e).num for e in _CATALOGUE_SRC["W01"]["C1"])
    for name, eqs in solutions:
        if name in ("C1sub1", "C1sub2"):
            param, _ = solve_affine_linear(eqs, chart_syms)
            inside = all(
                rat(e).substitute(param).is_zero() for e in c1_def
            )
            check(f"{name}_inside_C1", inside)
            continue
        if name == "C31":
            c3 = tuple(parse(e).num for e in _CATALOGUE_SRC["W01"]["C3"])
            check("C31_is_C3_slice", eqs[:3] == c3 and len(eqs) == 4)
            continue
        key = "C3" if name == "C32" else name
        merged[key] = eqs
    check("ten_after_merging", len(merged) == 10)

    # The merged solutions match the catalogue as sets of points.
    for label in C_LABELS + P_LABELS:
        cat = locus_by_name(locus_name(label, "W01"))
        got = merged.get(label)
        if got is None:
            check(f"solution_matches_{label}", False)
            continue
        param, _ = solve_affine_linear(got, chart_syms)
        fwd = all(rat(e).substitute(param).is_zero() for e in cat.defining)
        bwd = all(
            rat(e).substitute(cat.parametrization).is_zero() for e in got
        )
        check(f"solution_matches_{label}", fwd and bwd)

    return {
        "window": "W01",
        "checks": checks,
        "solutions": [name for name, _ in solutions],
        "ok": all(ok for _, ok in checks),
    }


# ---------------------------------------------------------------------------
# The structural template on every momentum window
# ---------------------------------------------------------------------------


def _candidate_linear_forms(window: str) -> list:
    """Degree-one polynomials appearing in a window's catalogue."""
    seen: list = []
    for table in _CATALOGUE_SRC[window].values():
        for s in table:
            p = parse(s).num
            if all(p != q for q in seen):
                seen.append(p)
    return seen


def window_case_tree(window: str) -> dict:
    """Run the structural skeleton of the case analysis on one window.

    The derivation displayed for the first momentum window rests on a
    structural shape of the three cleared polar numerators: the two
    position rows factor as (linear in the positions) x (bracket that is
    affine-linear in the free momentum), the momentum row factors as
    (free momentum) x (bracket), and the three brackets, read as a 3 x 2
    coefficient matrix, have 2 x 2 minors sharing a common linear
    factor whose cofactors combine into a multiple of t - 1.  This
    routine checks that shape on any window and flags (rather than
    fails on) deviations.
    """
    chart = get_chart(window)
    pole = sym(WINDOW_POLE[window])
    momentum = next(
        s for s in chart.syms[2:] if s != pole
    )
    system = polar_system(window)
    flags: list = []
    checks: list = []

    if system["regular"] != [pole]:
        flags.append("pole row is not the only regular row")
    polar_syms = [s for s, _ in system["polar"]]
    expected = [s for s in chart.syms if s != pole]
    if polar_syms != expected:
        flags.append("polar rows are not the three complementary rows")
        return {"window": window, "checks": checks, "flags": flags, "ok": False}

    numerators = {s: n for s, n in system["polar"]}
    F1 = numerators[chart.syms[0]]
    F2 = numerators[chart.syms[1]]
    G = numerators[momentum]
    candidates = _candidate_linear_forms(window)
    momentum_var = RatFn.var(momentum)

    brackets = []
    for key, numerator in (("F1", F1), ("F2", F2)):
        found = None
        for form in candidates:
            if momentum in form.symbols() or pole in form.symbols():
                continue
            quotient = exact_divide(numerator, form)
            if quotient is not None and quotient.degree_in(momentum) == 1:
                found = (form, quotient)
                break
        if found is None:
            flags.append(f"{key} has no catalogued linear factor")
            brackets.append(None)
        else:
            checks.append((f"{key}_factors", True))
            brackets.append(found[1])

    g_bracket = exact_divide(G, Poly({((momentum, 1),): Fraction(1)}))
    if g_bracket is None or g_bracket.degree_in(momentum) != 1:
        flags.append("momentum row does not factor as momentum x bracket")
        brackets.append(None)
    else:
        checks.append(("G_factors", True))
        brackets.append(g_bracket)

    if all(b is not None for b in brackets):
        zero_m = {momentum: Poly.const(Fraction(0))}
        rows = []
        for b in brackets:
            const = b.substitute(zero_m)
            lin = exact_divide(b - const, Poly({((momentum, 1),): Fraction(1)}))
            if lin is not None and momentum in lin.symbols():
                lin = None
            rows.append((const, lin))
        if any(r[1] is None for r in rows):
            flags.append("a bracket is not affine-linear in the momentum")
        else:
            zero_poly = Poly.const(Fraction(0))
            minors = {
                "01": rows[0][0]*rows[1][1] - rows[0][1]*rows[1][0],
                "02": rows[0][0]*rows[2][1] - rows[0][1]*rows[2][0],
                "12": rows[1][0]*rows[2][1] - rows[1][1]*rows[2][0],
            }
            shared = None
            for form in candidates:
                if momentum in form.symbols() or pole in form.symbols():
                    continue
                if all(
                    m == zero_poly or exact_divide(m, form) is not None
                    for m in minors.values()
                ):
                    shared = form
                    break
            if shared is None:
                flags.append("minors share no catalogued linear factor")
            else:
                checks.append(("minors_share_linear_factor", True))
                cof = {
                    k: exact_divide(m, shared)
                    for k, m in minors.items() if m != zero_poly
                }
                pos_set = set(chart.syms[:2])

                def t_coeff_map(p: Poly, deg: int) -> dict:
                    out: dict = {}
                    for mono, coef in p.terms().items():
                        pm = tuple((s, e) for s, e in mono if s in pos_set)
                        if sum(e for _, e in pm) != deg:
                            continue
                        tm = tuple((s, e) for s, e in mono if s not in pos_set)
                        out.setdefault(pm, {})[tm] = coef
                    return {k: Poly(v) for k, v in out.items()}

                def position_degree(p: Poly) -> int:
                    return max(
                        (sum(e for s, e in mono if s in pos_set)
                         for mono in p.terms()),
                        default=0,
                    )

                # The cubic (in the positions) parts of the cofactors
                # must be pairwise proportional over the base, so that
                # combining two cofactors cancels the cubic terms and
                # leaves, after removing base units, a low-degree
                # polynomial; for one pair the remainder is a single
                # affine-linear position form — the line on which the
                # final branch of the case analysis lives.
                keys = sorted(cof)
                proportional = True
                line_found = False
                degenerate = True
                for ii in range(len(keys)):
                    for jj in range(ii + 1, len(keys)):
                        c1, c2 = cof[keys[ii]], cof[keys[jj]]
                        m1 = t_coeff_map(c1, 3)
                        m2 = t_coeff_map(c2, 3)
                        monos = set(m1) | set(m2)
                        for x in monos:
                            for y in monos:
                                lhs = m1.get(x, zero_poly) * m2.get(y, zero_poly)
                                rhs = m1.get(y, zero_poly) * m2.get(x, zero_poly)
                                if lhs != rhs:
                                    proportional = False
                        anchor = next(iter(m1), None) or next(iter(m2), None)
                        if anchor is None:
                            continue
                        combo = (
                            m2.get(anchor, zero_poly) * c1
                            - m1.get(anchor, zero_poly) * c2
                        )
                        if combo == zero_poly:
                            continue
                        stripped = _strip_units(combo)
                        d = position_degree(stripped)
                        if d > 2:
                            degenerate = False
                        if d <= 1:
                            line_found = True
                if not proportional:
                    flags.append("cofactor cubic parts are not proportional")
                else:
                    checks.append(("cofactor_cubics_proportional", True))
                if not degenerate:
                    flags.append("a cofactor combination fails to degenerate")
                else:
                    checks.append(("cofactor_combinations_degenerate", True))
                if not line_found:
                    flags.append("no cofactor combination reduces to a line")
                else:
                    checks.append(("cofactor_combination_gives_line", True))

    ok = all(okc for _, okc in checks) and not flags
    return {"window": window, "checks": checks, "flags": flags, "ok": ok}


def all_window_case_trees() -> dict:
    """The structural template on all six momentum windows."""
    reports = {w: window_case_tree(w) for w in WINDOWS}
    return {
        "reports": reports,
        "flags": {w: r["flags"] for w, r in reports.items() if r["flags"]},
        "ok": all(r["ok"] for r in reports.values()),
    }


# ---------------------------------------------------------------------------
# Identifications between windows
# ---------------------------------------------------------------------------

#: pairs of C-loci that are the same set under the window transitions.
REL_C_PAIRS = (
    ("C1_01", "C1_02"),
    ("C1_11", "C1_12"),
    ("C1_21", "C1_22"),
    ("C2_01", "C2_11"),
    ("C2_02", "C2_22"),
    ("C2_12", "C2_21"),
)

#: chains of P-loci identified under the window transitions; each
#: consecutive pair in a chain is one displayed identification.
REL_P_CHAINS = (
    ("P3_01", "P3_21"),
    ("P3_02", "P3_12"),
    ("P3_11", "P3_22"),
    ("P1_01", "P1_11", "P6_21", "P6_22"),
    ("P2_01", "P2_11", "P7_21", "P7_22"),
    ("P1_02", "P6_11", "P6_12", "P1_22"),
    ("P2_02", "P7_11", "P7_12", "P2_22"),
    ("P4_01", "P4_02", "P5_21", "P5_22"),
    ("P5_01", "P5_02", "P4_11", "P4_12"),
    ("P6_01", "P6_02", "P1_12", "P1_21"),
    ("P7_01", "P7_02", "P2_12", "P2_21"),
    ("P5_11", "P5_12", "P4_21", "P4_22"),
)

#: the reduced representatives after all identifications (the three
#: C1-classes are absorbed into the other components, see
#: :func:`verify_disjoint_components`).
REDUCED_C_NAMES = (
    "C2_01", "C3_01", "C3_02", "C3_11", "C2_12", "C3_12",
    "C3_21", "C2_22", "C3_22",
)
REDUCED_P_NAMES = (
    "P3_01", "P4_01", "P6_01", "P7_01",
    "P3_12", "P4_12", "P6_12", "P7_12",
    "P3_22", "P4_22", "P6_22", "P7_22",
)


def _maps_into(a: SingularLocus, b: SingularLocus) -> tuple:
    """Whether the transition carries every point of ``a`` into ``b``.

    Returns ``(ok, detail)``; a transition denominator vanishing
    identically on ``a`` is reported as a failure with the blocking
    factor (the image would lie outside the target window).
    """
    tr = transition(a.window, b.window)
    image = {}
    for s, expr in tr.items():
        for f, _ in expr.den:
            if rat(f).substitute(a.parametrization).normalized().is_zero():
                return False, f"transition denominator {f} vanishes on {a.name}"
        image[s] = expr.substitute(a.parametrization)
    for eq in b.defining:
        value = rat(eq).substitute(image)
        if not value.normalized().is_zero():
            return False, f"defining value {eq} does not vanish"
    return True, ""


def verify_locus_equalities() -> dict:
    """Check the displayed identifications and derive the reduced lists.

    Every displayed pair is checked in both directions (each locus maps
    into the other under the window transition).  The sixty loci then
    collapse into twelve C-classes and twelve P-classes; dropping the
    three C1-classes (absorbed into the components of the resolved
    singular set) leaves the nine reduced C-representatives and twelve
    reduced P-representatives.
    """
    checks: list = []
    pairs = list(REL_C_PAIRS)
    for chain in REL_P_CHAINS:
        pairs.extend(zip(chain, chain[1:]))
    for left, right in pairs:
        a, b = locus_by_name(left), locus_by_name(right)
        ok_ab, why_ab = _maps_into(a, b)
        ok_ba, why_ba = _maps_into(b, a)
        checks.append({
            "id": f"{left}~{right}",
            "ok": ok_ab and ok_ba,
            "details": "; ".join(w for w in (why_ab, why_ba) if w),
        })

    # union-find over the sixty names
    parent = {l.name: l.name for l in accessible_loci()}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for left, right in pairs:
        parent[find(left)] = find(right)

    classes: dict = {}
    for locus in accessible_loci():
        classes.setdefault(find(locus.name), set()).add(locus.name)
    c_classes = [v for v in classes.values() if next(iter(v))[0] == "C"]
    p_classes = [v for v in classes.values() if next(iter(v))[0] == "P"]

    counts = {
        "C_loci": sum(len(v) for v in c_classes),
        "P_loci": sum(len(v) for v in p_classes),
        "C_classes": len(c_classes),
        "P_classes": len(p_classes),
        "reduced_C": len(REDUCED_C_NAMES),
        "reduced_P": len(REDUCED_P_NAMES),
    }
    counts_ok = (
        counts["C_loci"] == 18 and counts["P_loci"] == 42
        and counts["C_classes"] == 12 and counts["P_classes"] == 12
    )

    # the reduced C-list holds one representative of every class that
    # is not a C1-class; the reduced P-list one of every P-class
    c1_classes = [v for v in c_classes if any(n.startswith("C1") for n in v)]
    other_c = [v for v in c_classes if not any(n.startswith("C1") for n in v)]
    reps_c_ok = (
        len(c1_classes) == 3
        and len(other_c) == 9
        and all(
            sum(1 for n in REDUCED_C_NAMES if n in cls) == 1 for cls in other_c
        )
    )
    reps_p_ok = all(
        sum(1 for n in REDUCED_P_NAMES if n in cls) == 1 for cls in p_classes
    ) and len(p_classes) == 12

    return {
        "checks": checks,
        "counts": counts,
        "ok": (
            all(c["ok"] for c in checks)
            and counts_ok and reps_c_ok and reps_p_ok
        ),
    }


# ---------------------------------------------------------------------------
# The components of the resolved C-locus, projectively
# ---------------------------------------------------------------------------
#
# Positions compactify to [xi0 : xi1 : xi2] (affine patches: base
# positions (q1, q2) = (xi1/xi0, xi2/xi0); first position window
# (xi0/xi1, xi2/xi1); second (xi0/xi2, xi1/xi2)).  The momentum frame
# attached to position patch i is [zeta0 : zeta1 : zeta2]; in window
# Wij the momenta give zeta^(i) with patch-j normalization.

_XI_EMBED = {
    "0": ("1", "q1", "q2"),
    "1": ("q1_1", "1", "q2_1"),
    "2": ("q2_2", "q1_2", "1"),
}


def _window_xi(window: str) -> tuple:
    return tuple(parse(s) for s in _XI_EMBED[window[1]])


def _window_zeta(window: str) -> tuple:
    i, j = window[1], window[2]
    p1 = f"p1_{i}{j}"
    p2 = f"p2_{i}{j}"
    if j == "1":
        return (parse(p1), rat(1), parse(p2))
    return (parse(p2), parse(p1), rat(1))


def _zmatrix(i: int, xi: tuple) -> list:
    """The momentum frame change Z_{i0} evaluated at a position."""
    subs = {XI[0]: xi[0], XI[1]: xi[1], XI[2]: xi[2]}
    return [[rat(e).substitute(subs) for e in row] for row in z_matrix(i)]


def _adj3(m: list) -> list:
    """Adjugate of a 3x3 matrix of RatFn."""
    def co(r, c):
        rs = [x for x in (0, 1, 2) if x != r]
        cs = [x for x in (0, 1, 2) if x != c]
        minor = (m[rs[0]][cs[0]] * m[rs[1]][cs[1]]
                 - m[rs[0]][cs[1]] * m[rs[1]][cs[0]])
        return minor if (r + c) % 2 == 0 else -minor
    return [[co(c, r) for c in (0, 1, 2)] for r in (0, 1, 2)]


def _matvec(m: list, v: tuple) -> tuple:
    return tuple(
        m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2] for r in (0, 1, 2)
    )


def _zeta_to_patch(zeta: tuple, src: int, dst: int, xi: tuple) -> tuple:
    """Carry a momentum frame vector between patches at a position.

    Projective: the result is a nonzero scalar multiple of the true
    image wherever the frame change is invertible.
    """
    v = zeta
    if src == dst:
        return v
    if src != 0:
        v = _matvec(_adj3(_zmatrix(src, xi)), v)
    if dst != 0:
        v = _matvec(_zmatrix(dst, xi), v)
    return v


def _cross(u: tuple, v: tuple) -> tuple:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _proj_equal(u: tuple, v: tuple) -> bool:
    return all(c.normalized().is_zero() for c in _cross(u, v))


def _proj_distinct_all_t(u: tuple, v: tuple) -> bool:
    """Projective points (entries rational in t) differ for every
    admissible t when some cross-product entry is a unit on B."""
    return any(unit_on_B(c) for c in _cross(u, v))


def _dot(form: tuple, v: tuple):
    return form[0] * v[0] + form[1] * v[1] + form[2] * v[2]


#: homogeneous forms of the twelve codimension-three loci that matter
#: for the component decomposition (nine reduced C plus the three C1).
def _hom_forms() -> dict:
    one, zero, tt = rat(1), rat(0), parse("t")
    e = {
        0: (one, zero, zero),
        1: (zero, one, zero),
        2: (zero, zero, one),
    }
    forms = {
        # the three affine-line components
        "C2_01": HomogeneousLocus(
            "C2_01", patch=0, xi_eqs=((one, -one, zero),),
            xi_neq=(e[0],), zeta_point=(zero, one, zero)),
        "C2_12": HomogeneousLocus(
            "C2_12", patch=1, xi_eqs=((zero, one, -one),),
            xi_neq=(e[1],), zeta_point=(zero, zero, one)),
        "C2_22": HomogeneousLocus(
            "C2_22", patch=2, xi_eqs=((tt, zero, -one),),
            xi_neq=(e[2],), zeta_point=(zero, zero, one)),
        # the three C1 loci (absorbed into the components)
        "C1_01": HomogeneousLocus(
            "C1_01", patch=0, xi_eqs=((zero, one, -one),),
            xi_neq=(e[0],), zeta_point=(zero, one, -one)),
        "C1_12": HomogeneousLocus(
            "C1_12", patch=1, xi_eqs=((tt, zero, -one),),
            xi_neq=(e[1],),
            zeta_eqs=((one, zero, zero), (zero, one, tt)),
            zeta_neq=(e[2],)),
        "C1_22": HomogeneousLocus(
            "C1_22", patch=2, xi_eqs=((-one, one, zero),),
            xi_neq=(e[2],),
            zeta_eqs=((one, zero, zero), (zero, one, one)),
            zeta_neq=(e[2],)),
    }
    # the three projective-line components: position pinned at a
    # coordinate point, momentum frame direction on zeta0 = 0
    for i in (0, 1, 2):
        for j, neq in ((1, e[1]), (2, e[2])):
            name = f"C3_{i}{j}"
            forms[name] = HomogeneousLocus(
                name, patch=i, xi_point=e[i],
                zeta_eqs=((one, zero, zero),), zeta_neq=(neq,))
    return forms


#: the six components of the resolved codimension-three locus: three
#: projective lines (pairs of C3 charts) and three affine lines (the
#: C2 classes), each contained in a single window's domain (C2) or in
#: the union of two windows (C3).
_COMPONENTS = (
    {"name": "C3_0", "loci": ("C3_01", "C3_02"), "xi_point": 0},
    {"name": "C3_1", "loci": ("C3_11", "C3_12"), "xi_point": 1},
    {"name": "C3_2", "loci": ("C3_21", "C3_22"), "xi_point": 2},
    {"name": "C2_01", "loci": ("C2_01",), "form": "C2_01"},
    {"name": "C2_12", "loci": ("C2_12",), "form": "C2_12"},
    {"name": "C2_22", "loci": ("C2_22",), "form": "C2_22"},
)

#: which affine loci realize each homogeneous form
_FORM_TO_LOCI = {
    "C2_01": ("C2_01", "C2_11"),
    "C2_12": ("C2_12", "C2_21"),
    "C2_22": ("C2_02", "C2_22"),
    "C1_01": ("C1_01", "C1_02"),
    "C1_12": ("C1_11", "C1_12"),
    "C1_22": ("C1_21", "C1_22"),
    "C3_01": ("C3_01",), "C3_02": ("C3_02",),
    "C3_11": ("C3_11",), "C3_12": ("C3_12",),
    "C3_21": ("C3_21",), "C3_22": ("C3_22",),
}


def _locus_hom_data(locus: SingularLocus) -> tuple:
    """The (xi, zeta, momentum patch) of a locus's parametrization."""
    xi = tuple(
        x.substitute(locus.parametrization) for x in _window_xi(locus.window)
    )
    zeta = tuple(
        z.substitute(locus.parametrization) for z in _window_zeta(locus.window)
    )
    return xi, zeta, int(locus.window[1])


def _check_hom_form(form: HomogeneousLocus, locus: SingularLocus) -> tuple:
    """Verify an affine locus satisfies a homogeneous description."""
    xi, zeta, src = _locus_hom_data(locus)
    problems = []
    for f in form.xi_eqs:
        if not _dot(f, xi).normalized().is_zero():
            problems.append("xi equation fails")
    if form.xi_point is not None and not _proj_equal(xi, form.xi_point):
        problems.append("xi point differs")
    for f in form.xi_neq:
        if _dot(f, xi).normalized().is_zero():
            problems.append("xi inequation vanishes")
    z = _zeta_to_patch(zeta, src, form.patch, xi)
    if all(c.normalized().is_zero() for c in z):
        problems.append("frame change degenerates")
    else:
        for f in form.zeta_eqs:
            if not _dot(f, z).normalized().is_zero():
                problems.append("zeta equation fails")
        if form.zeta_point is not None and not _proj_equal(z, form.zeta_point):
            problems.append("zeta point differs")
        for f in form.zeta_neq:
            if _dot(f, z).normalized().is_zero():
                problems.append("zeta inequation vanishes")
    return not problems, "; ".join(problems)


def _component_windows(comp: dict) -> tuple:
    """The windows whose domains jointly contain a component."""
    return tuple(locus_by_name(n).window for n in comp["loci"])


def _point_vs_component(locus: SingularLocus, comp: dict) -> tuple:
    """Exclude a point locus from a component, window by window.

    The component is covered by the window domains of its affine
    representatives, so the point avoids the component exactly when,
    in each of those windows, it either leaves the window (a transition
    denominator vanishes identically) or violates a defining equation
    of the representative for every admissible t.
    """
    point = locus.parametrization
    details = []
    for rep_name in comp["loci"]:
        rep = locus_by_name(rep_name)
        if rep.window == locus.window:
            values = _locus_values_at(point, rep)
        else:
            image, blocker = _image_point(point, locus.window, rep.window)
            if image is None:
                details.append(f"{rep.window}: outside window ({blocker})")
                continue
            values = _locus_values_at(image, rep)
        verdict, detail = _excluded_for_all_t(
            [v.normalized() for v in values]
        )
        if verdict is True:
            details.append(f"{rep.window}: separated ({detail})")
        elif verdict is False:
            return False, f"{rep.window}: point lies on the component"
        else:
            return None, f"{rep.window}: undecided ({detail})"
    return True, "; ".join(details)


def _component_pair_disjoint(a: dict, b: dict, forms: dict) -> tuple:
    """Disjointness of two components for every admissible t."""
    a_point, b_point = "xi_point" in a, "xi_point" in b
    one, zero = rat(1), rat(0)
    e = {
        0: (one, zero, zero), 1: (zero, one, zero), 2: (zero, zero, one),
    }
    if a_point and b_point:
        ok = _proj_distinct_all_t(e[a["xi_point"]], e[b["xi_point"]])
        return (True, "distinct position points") if ok else (None, "positions")
    if a_point != b_point:
        pt, line = (a, b) if a_point else (b, a)
        form = forms[line["form"]]
        value = _dot(form.xi_eqs[0], e[pt["xi_point"]])
        if unit_on_B(value):
            return True, "position point off the line"
        if value.is_zero():
            ineq = _dot(form.xi_neq[0], e[pt["xi_point"]])
            if ineq.is_zero():
                return True, "intersection excluded by the line's inequation"
            return None, "position point on the admissible line"
        return None, f"line value {ratfn_to_text(value)} is not a unit"
    fa, fb = forms[a["form"]], forms[b["form"]]
    xi = _cross(fa.xi_eqs[0], fb.xi_eqs[0])
    if not any(unit_on_B(c) for c in xi):
        return None, "position intersection is not a single point"
    for form in (fa, fb):
        ineq = _dot(form.xi_neq[0], xi)
        if ineq.is_zero():
            return True, "intersection outside a line's domain"
        if not unit_on_B(ineq):
            return None, "inequation value undecided at the intersection"
    za = _zeta_to_patch(fa.zeta_point, fa.patch, 0, xi)
    zb = _zeta_to_patch(fb.zeta_point, fb.patch, 0, xi)
    if all(c.is_zero() for c in za) or all(c.is_zero() for c in zb):
        return None, "frame change degenerates at the intersection"
    if _proj_distinct_all_t(za, zb):
        return True, "momentum directions differ at the shared position"
    return None, "momentum directions undecided"


#: how each C1 class is absorbed: the generic branch of the named C1
#: locus maps into a C2 component, and the exceptional point (where the
#: transition leaves the window) lies on a C3 component, inside the C1
#: locus's own window.
_C1_ABSORPTION = (
    {"c1": "C1_01", "generic_target": "C2_12", "exceptional_target": "C3_01"},
    {"c1": "C1_12", "generic_target": "C2_22", "exceptional_target": "C3_12"},
    {"c1": "C1_22", "generic_target": "C2_01", "exceptional_target": "C3_22"},
)


def _c1_absorbed(rule: dict) -> tuple:
    """One C1 class is contained in the union of two components."""
    c1 = locus_by_name(rule["c1"])
    target = locus_by_name(rule["generic_target"])
    exceptional = locus_by_name(rule["exceptional_target"])
    if len(c1.free) != 1:
        return False, "C1 locus is not one-dimensional"
    s = c1.free[0]

    tr = transition(c1.window, target.window)
    blockers = []
    image = {}
    for v, expr in tr.items():
        for f, _ in expr.den:
            value = rat(f).substitute(c1.parametrization).normalized()
            if value.is_zero():
                return False, f"transition denominator {f} vanishes identically"
            blockers.append(value)
        image[v] = expr.substitute(c1.parametrization)
    # the generic branch: the image satisfies the target's equations
    for eq in target.defining:
        if not rat(eq).substitute(image).normalized().is_zero():
            return False, "generic branch misses the target component"
    # the branch boundary: every blocking denominator vanishes only at
    # the single exceptional parameter value s = 0
    for value in blockers:
        stripped = _strip_units(value.num)
        if stripped.total_degree() == 0:
            continue
        q = stripped
        while True:
            nxt = exact_divide(q, Poly({((s, 1),): Fraction(1)}))
            if nxt is None:
                break
            q = nxt
        if q.total_degree() != 0:
            return False, f"branch boundary is not s = 0: {value}"
    # the exceptional point lies on the named C3 locus of the same window
    at_zero = {
        v: expr.substitute({s: _ZERO})
        for v, expr in c1.parametrization.items()
    }
    if exceptional.window != c1.window:
        return False, "exceptional target must live in the same window"
    for eq in exceptional.defining:
        if not rat(eq).substitute(at_zero).normalized().is_zero():
            return False, "exceptional point misses its C3 component"
    return True, ""


def verify_disjoint_components() -> dict:
    """The resolved codimension-three locus: six disjoint components.

    Verifies, by exact rational computation for every admissible t:

    * the twelve homogeneous descriptions (nine reduced C plus three
      C1) match the affine parametrizations of their window charts;
    * the six components are mutually disjoint;
    * each C1 class is absorbed: its generic branch maps into a C2
      component and its boundary point lies on a C3 component;
    * the twelve reduced P-loci avoid all six components.
    """
    checks: list = []
    flags: list = []
    forms = _hom_forms()

    for form_name, loci in _FORM_TO_LOCI.items():
        for rep in loci:
            ok, detail = _check_hom_form(forms[form_name], locus_by_name(rep))
            checks.append({
                "id": f"hom_form:{form_name}@{rep}", "ok": ok,
                "details": detail,
            })

    for i in range(len(_COMPONENTS)):
        for j in range(i + 1, len(_COMPONENTS)):
            a, b = _COMPONENTS[i], _COMPONENTS[j]
            ok, detail = _component_pair_disjoint(a, b, forms)
            if ok is None:
                flags.append(f"disjoint:{a['name']}|{b['name']}: {detail}")
                ok = False
            checks.append({
                "id": f"disjoint:{a['name']}|{b['name']}",
                "ok": bool(ok), "details": detail,
            })

    for rule in _C1_ABSORPTION:
        ok, detail = _c1_absorbed(rule)
        checks.append({
            "id": (f"absorbed:{rule['c1']}->"
                   f"{rule['generic_target']}+{rule['exceptional_target']}"),
            "ok": ok, "details": detail,
        })

    for p_name in REDUCED_P_NAMES:
        p = locus_by_name(p_name)
        for comp in _COMPONENTS:
            ok, detail = _point_vs_component(p, comp)
            if ok is None:
                flags.append(f"excluded:{p_name}|{comp['name']}: {detail}")
                ok = False
            checks.append({
                "id": f"excluded:{p_name}|{comp['name']}",
                "ok": bool(ok), "details": detail,
            })

    return {
        "checks": checks,
        "flags": flags,
        "ok": all(c["ok"] for c in checks),
    }


# ---------------------------------------------------------------------------
# Non-accessibility of the position-infinity locus
# ---------------------------------------------------------------------------

#: the generic parameter conditions: none of these may vanish.
GENERICITY = ("a1 - eta", "a3 - eta", "a1 + a3 - eta", "a1 + a2 + a3 - eta")


def verify_nonaccessibility_xi0() -> dict:
    """Positions at infinity are not accessible for generic parameters.

    The locus xi0 = 0 is covered by the two position windows.  In the
    first, the boundary is q1_1 = 0 and the flow satisfies

        d q1_1 / dt |_{q1_1 = 0} = -Q1 / (t (t-1)),
        Q1 = q2_1^2 p2_1 - q2_1 p2_1 + a3 q2_1 + a1 - eta ;

    on Q1 = 0 the flow is tangent, but the derivative of Q1 along the
    flow there equals

        -(a1 + a3 - eta)(a1 + a2 + a3 - eta) q2_1 / (t (q2_1 - 1)),

    nonzero for generic parameters away from q2_1 in {0, 1}; at those
    two values Q1 itself reduces to a1 - eta and a1 + a3 - eta.  The
    mirrored computation in the second position window (boundary
    q2_2 = 0) covers the rest of the locus.  When a1 = eta the boundary
    contains the invariant curve q1_1 = q2_1 = 0 and the flow restricted
    to it is the displayed pair of momentum equations.
    """
    checks: list = []

    def check(cid: str, ok: bool) -> None:
        checks.append((cid, bool(ok)))

    w10 = get_chart("W10")
    q1_1, q2_1, p1_1, p2_1 = w10.syms
    f10 = transported_field("W10")

    Q1 = parse("q2_1^2*p2_1 - q2_1*p2_1 + a3*q2_1 + a1 - eta")
    normal = f10[q1_1].substitute({q1_1: _ZERO})
    check("W10_normal_component", normal.eq_mod_relation(-Q1 / parse("t*(t-1)")))

    # derivative of Q1 along the flow, on q1_1 = 0 and Q1 = 0
    # (eliminating p2_1, which Q1 determines linearly for q2_1 not 0, 1)
    dQ1 = (
        Q1.diff(q2_1) * f10[q2_1] + Q1.diff(p2_1) * f10[p2_1]
    ).substitute({q1_1: _ZERO})
    p2_sol = (parse("eta - a1 - a3*q2_1")) / parse("q2_1^2 - q2_1")
    restricted = dQ1.substitute({p2_1: p2_sol})
    expected = (
        -(parse("(a1 + a3 - eta)*(a1 + a2 + a3 - eta)*q2_1"))
        / parse("t*(q2_1 - 1)")
    )
    check("W10_transversal_derivative", restricted.eq_mod_relation(expected))

    # the two degenerate positions reduce Q1 to genericity combinations
    check("W10_q2_zero", rat(Q1.num.substitute(
        {q2_1: Poly.const(Fraction(0))})) == parse("a1 - eta"))
    check("W10_q2_one", rat(Q1.num.substitute(
        {q2_1: Poly.const(Fraction(1))})) == parse("a1 + a3 - eta"))

    # mirrored window: boundary q2_2 = 0
    w20 = get_chart("W20")
    q1_2, q2_2, p1_2, p2_2 = w20.syms
    f20 = transported_field("W20")
    Q2 = parse("q1_2^2*p1_2 - q1_2*p1_2 + a1*q1_2 + a3 - eta")
    normal2 = f20[q2_2].substitute({q2_2: _ZERO})
    check("W20_normal_component", normal2.eq_mod_relation(-Q2 / parse("t*(t-1)")))
    dQ2 = (
        Q2.diff(q1_2) * f20[q1_2] + Q2.diff(p1_2) * f20[p1_2]
    ).substitute({q2_2: _ZERO})
    p1_sol = (parse("eta - a3 - a1*q1_2")) / parse("q1_2^2 - q1_2")
    restricted2 = dQ2.substitute({p1_2: p1_sol})
    # same nonvanishing product as in the first window; the mirrored
    # orientation flips the overall sign
    expected2 = (
        parse("(a1 + a3 - eta)*(a1 + a2 + a3 - eta)*q1_2")
        / parse("t*(q1_2 - 1)")
    )
    check("W20_transversal_derivative", restricted2.eq_mod_relation(expected2))
    check("W20_q1_zero", rat(Q2.num.substitute(
        {q1_2: Poly.const(Fraction(0))})) == parse("a3 - eta"))
    check("W20_q1_one", rat(Q2.num.substitute(
        {q1_2: Poly.const(Fraction(1))})) == parse("a1 + a3 - eta"))

    # exceptional parameter a1 = eta: q1_1 = q2_1 = 0 is invariant and
    # carries the displayed momentum flow
    curve = {q1_1: _ZERO, q2_1: _ZERO}
    eta_for_a1 = {ALPHA[1]: RatFn.var(ETA)}

    def on_curve(expr: RatFn) -> RatFn:
        return expr.normalized().substitute(eta_for_a1).substitute(curve)

    check("invariant_curve_q1", on_curve(f10[q1_1]).is_zero())
    check("invariant_curve_q2", on_curve(f10[q2_1]).is_zero())
    prefactor = parse("t*(1-t)")
    lhs1 = on_curve(f10[p1_1]) * prefactor
    rhs1 = (
        parse("p1_1^2 + (-(a0 + a1 + a5)*t + a0)*p1_1 + a1*a5*t"
              " + (p1_1 - a5)*t*p2_1")
        .normalized().substitute(eta_for_a1)
    )
    check("invariant_curve_p1_flow", (lhs1 - rhs1).is_zero())
    lhs2 = on_curve(f10[p2_1]) * prefactor
    rhs2 = (
        parse("t*p2_1^2 + (a2*t - (a1 + a2 + a3))*p2_1 + a1*a3"
              " + (p2_1 - a3)*p1_1")
        .normalized().substitute(eta_for_a1)
    )
    check("invariant_curve_p2_flow", (lhs2 - rhs2).is_zero())

    return {
        "genericity": GENERICITY,
        "checks": checks,
        "ok": all(ok for _, ok in checks),
    }
