"""Tests for the accessible-singularity catalogue and its verifications."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from painleve_ivs.charts import get_chart
from painleve_ivs.parsing import parse
from painleve_ivs.poly import Poly
from painleve_ivs.ratfn import RatFn, rat
from painleve_ivs.singularities import (
    C_LABELS,
    P_LABELS,
    REDUCED_C_NAMES,
    REDUCED_P_NAMES,
    WINDOWS,
    SingularLocus,
    accessible_loci,
    all_window_case_trees,
    appendixA_case_analysis,
    locus_by_name,
    polar_system,
    solve_affine_linear,
    unit_on_B,
    verify_accessible,
    verify_all_accessible,
    verify_disjoint_components,
    verify_locus_equalities,
    verify_nonaccessibility_xi0,
)
from painleve_ivs.symbols import ALPHA, ETA, T, name_of


# ---------------------------------------------------------------------------
# catalogue and accessibility
# ---------------------------------------------------------------------------


def test_sixty_loci_with_expected_counts():
    loci = accessible_loci()
    assert len(loci) == 60
    assert sum(1 for l in loci if l.kind == "C") == 18
    assert sum(1 for l in loci if l.kind == "P") == 42
    names = {l.name for l in loci}
    assert len(names) == 60
    for window in WINDOWS:
        for label in C_LABELS + P_LABELS:
            assert f"{label}_{window[1:]}" in names


def test_c_loci_have_one_free_coordinate_and_p_loci_none():
    for locus in accessible_loci():
        assert len(locus.free) == (1 if locus.kind == "C" else 0), locus.name


def test_parametrizations_satisfy_defining_equations():
    for locus in accessible_loci():
        for eq in locus.defining:
            assert rat(eq).substitute(locus.parametrization).is_zero(), locus.name


def test_polar_systems_have_single_regular_row():
    for window in WINDOWS:
        system = polar_system(window)
        chart = get_chart(window)
        assert system["regular"] == [system["pole"]]
        assert [s for s, _ in system["polar"]] == [
            s for s in chart.syms if s != system["pole"]
        ]


def test_all_sixty_loci_are_accessible():
    report = verify_all_accessible()
    assert report["counts"] == {"total": 60, "C": 18, "P": 42}
    for r in report["reports"]:
        assert r["ok"], (r["name"], r["checks"])
    assert report["ok"]


def test_perturbed_locus_is_not_accessible():
    chart = get_chart("W01")
    defining = tuple(parse(s).num for s in ("q1 - 2", "p1_01", "p2_01"))
    param, free = solve_affine_linear(defining, chart.syms)
    fake = SingularLocus(
        name="fake", label="C2", window="W01", defining=defining,
        parametrization=param, free=free,
        nonvanishing=(parse("t").num, parse("t - 1").num),
    )
    assert not verify_accessible(fake)["ok"]


def test_free_momentum_stays_symbolic_on_point_line():
    # the locus over the coordinate origin carries a free momentum: the
    # polar numerators must vanish with that momentum left symbolic
    locus = locus_by_name("C3_01")
    momentum = parse("p2_01").num.symbols().pop()
    assert locus.free == (momentum,)
    assert verify_accessible(locus)["ok"]


@settings(max_examples=25, deadline=None)
@given(
    data=st.data(),
    t_num=st.integers(min_value=-30, max_value=30),
    t_den=st.integers(min_value=1, max_value=7),
)
def test_accessibility_at_random_rational_points(data, t_num, t_den):
    """Independent numeric route: polar numerators vanish at exact
    rational points of every locus, for random admissible t and random
    parameter values."""
    loci = accessible_loci()
    locus = data.draw(st.sampled_from(loci))
    t_val = Fraction(t_num, t_den)
    if t_val in (0, 1):
        t_val = Fraction(7, 2)
    point = {T: t_val, ETA: Fraction(1, 3)}
    for i, a in enumerate(ALPHA):
        point[a] = Fraction(data.draw(st.integers(-5, 5), label=f"a{i}"), 7)
    for s in locus.free:
        point[s] = Fraction(data.draw(st.integers(-9, 9), label=name_of(s)), 2)
    try:
        coords = {
            s: v.evaluate(point) for s, v in locus.parametrization.items()
        }
    except ZeroDivisionError:
        return  # t landed on a pole of the parametrization
    point.update(coords)
    for _, numerator in polar_system(locus.window)["polar"]:
        assert numerator.evaluate(point) == 0


# ---------------------------------------------------------------------------
# the displayed case analysis and the six-window template
# ---------------------------------------------------------------------------


def test_case_analysis_reproduces_the_catalogue():
    report = appendixA_case_analysis()
    failed = [cid for cid, ok in report["checks"] if not ok]
    assert not failed, failed
    assert len(report["solutions"]) == 13
    assert report["ok"]


def test_case_analysis_solution_names():
    report = appendixA_case_analysis()
    assert report["solutions"] == [
        "C2", "P5", "C1sub1", "P6",          # first position value pinned
        "P3", "P4", "P1", "C1sub2",          # second position value pinned
        "C31", "P2",                          # free momentum pinned
        "C1", "C32", "P7",                    # rank-drop branch
    ]


def test_structural_template_flag_free_on_all_windows():
    report = all_window_case_trees()
    assert report["flags"] == {}
    for window, tree in report["reports"].items():
        assert tree["ok"], (window, tree["checks"], tree["flags"])
    assert report["ok"]


# ---------------------------------------------------------------------------
# identifications and the reduced lists
# ---------------------------------------------------------------------------


def test_locus_equalities_and_reduction_counts():
    report = verify_locus_equalities()
    for c in report["checks"]:
        assert c["ok"], (c["id"], c["details"])
    assert len(report["checks"]) == 36
    assert report["counts"] == {
        "C_loci": 18, "P_loci": 42,
        "C_classes": 12, "P_classes": 12,
        "reduced_C": 9, "reduced_P": 12,
    }
    assert report["ok"]


def test_reduced_lists_are_catalogue_members():
    names = {l.name for l in accessible_loci()}
    assert set(REDUCED_C_NAMES) <= names
    assert set(REDUCED_P_NAMES) <= names
    assert len(REDUCED_C_NAMES) == 9
    assert len(REDUCED_P_NAMES) == 12


# ---------------------------------------------------------------------------
# component decomposition
# ---------------------------------------------------------------------------


def test_components_disjoint_with_no_flags():
    report = verify_disjoint_components()
    assert report["flags"] == []
    for c in report["checks"]:
        assert c["ok"], (c["id"], c["details"])
    # 18 homogeneous-form matches + 15 component pairs + 3 absorptions
    # + 12 x 6 point exclusions
    assert len(report["checks"]) == 18 + 15 + 3 + 72
    assert report["ok"]


def test_unit_detection_on_admissible_base():
    assert unit_on_B(parse("t"))
    assert unit_on_B(parse("t - 1"))
    assert unit_on_B(parse("-3*t^2*(t-1)"))
    assert unit_on_B(rat(5))
    assert not unit_on_B(rat(0))
    assert not unit_on_B(parse("t - 2"))
    assert not unit_on_B(parse("t + eta"))
    assert unit_on_B(parse("t") / parse("t - 1"))


# ---------------------------------------------------------------------------
# non-accessibility at position infinity
# ---------------------------------------------------------------------------


def test_position_infinity_not_accessible():
    report = verify_nonaccessibility_xi0()
    failed = [cid for cid, ok in report["checks"] if not ok]
    assert not failed, failed
    assert report["ok"]
    assert report["genericity"] == (
        "a1 - eta", "a3 - eta", "a1 + a3 - eta", "a1 + a2 + a3 - eta",
    )


# ---------------------------------------------------------------------------
# the affine-linear solver
# ---------------------------------------------------------------------------


def test_solver_rejects_inconsistent_systems():
    chart = get_chart("W01")
    defining = (parse("q1").num, parse("q1 - 1").num)
    with pytest.raises(ValueError):
        solve_affine_linear(defining, chart.syms)


def test_solver_rejects_nonlinear_systems():
    chart = get_chart("W01")
    with pytest.raises(ValueError):
        solve_affine_linear((parse("q1^2 - 1").num,), chart.syms)


def test_solver_handles_coupled_rows():
    chart = get_chart("W01")
    defining = tuple(
        parse(s).num for s in ("q1 + q2 - 1", "q1 - q2 - t", "p1_01")
    )
    param, free = solve_affine_linear(defining, chart.syms)
    assert param[parse("q1").num.symbols().pop()] == parse("(1 + t)/2")
    assert param[parse("q2").num.symbols().pop()] == parse("(1 - t)/2")
    assert len(free) == 1
