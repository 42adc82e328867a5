import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sawskel.bounds import (
    RosenfeldInstance,
    burnside_bound,
    burnside_holds,
    burnside_lhs,
    entropy_sandwich,
    growth_series,
    rosenfeld_bound,
    semigroup_bound,
)
from sawskel.errors import NoSolutionError, SpecError
from sawskel.groups import ALL_PRESETS, preset
from sawskel.shift import plain_sft_entropy
from sawskel.walks import count_saps

MU_Z2 = 2.63815853


# -- Rosenfeld ------------------------------------------------------------------

def test_no_polygons_gives_degree_minus_one():
    res = rosenfeld_bound(RosenfeldInstance(4, (0,) * 10, "zero"))
    assert res.beta == 3 and res.certified


def test_s3_rosenfeld_below_exact_value():
    g = preset("s3-star-z3")
    rho = count_saps(g, 6).counts
    res = rosenfeld_bound(RosenfeldInstance(4, tuple(rho), "zero"))
    mu = plain_sft_entropy(g).bound.params["rho"]
    assert res.certified
    assert res.beta <= mu
    assert res.beta >= 0.85 * mu


def test_truncated_tail_is_uncertified():
    rho = count_saps(preset("z2"), 4).counts
    res = rosenfeld_bound(RosenfeldInstance(4, tuple(rho), "none"))
    assert not res.certified
    assert 1 < res.beta < 3


def test_z2_polygons_to_ten_have_no_solution():
    rho = count_saps(preset("z2"), 10).counts
    with pytest.raises(NoSolutionError):
        rosenfeld_bound(RosenfeldInstance(4, tuple(rho), "none"))


def test_geometric_tail():
    rho = (0, 0, 0, 2)
    zero = rosenfeld_bound(RosenfeldInstance(4, rho, "zero")).beta
    geo = rosenfeld_bound(RosenfeldInstance(4, rho, "geometric", tail_c=0.1, tail_lambda=1.2))
    assert geo.certified and geo.beta < zero


def test_rosenfeld_rejects_bad_input():
    with pytest.raises(SpecError):
        RosenfeldInstance(4, (0, -1))
    with pytest.raises(SpecError):
        RosenfeldInstance(4, (0,), tail="weird")
    with pytest.raises(SpecError):
        RosenfeldInstance(1, (0,))


@given(st.lists(st.integers(0, 6), min_size=4, max_size=9), st.integers(3, 8), st.integers(1, 4))
def test_rosenfeld_monotone_in_polygon_mass(rho, n, extra):
    n = min(n, len(rho) - 1)
    base = RosenfeldInstance(4, tuple(rho), "zero")
    more = list(rho)
    more[n] += extra
    try:
        b0 = rosenfeld_bound(base).beta
    except NoSolutionError:
        return
    try:
        b1 = rosenfeld_bound(RosenfeldInstance(4, tuple(more), "zero")).beta
    except NoSolutionError:
        return
    assert b1 <= b0 + 1e-12


def test_rosenfeld_constraint_exact_and_float_agree():
    inst = RosenfeldInstance(4, (0, 0, 0, 2, 0, 0, 2), "zero")
    assert abs(float(inst.constraint(Fraction(5, 2))) - inst.constraint(2.5)) <= 1e-12


# -- Burnside -----------------------------------------------------------------------

@pytest.mark.parametrize("m,n", [(2, 5), (2, 7), (3, 13), (2, 557), (3, 4), (5, 9)])
def test_burnside_gamma_closed(m, n):
    res = burnside_bound(m, n)
    assert res.gamma_closed == pytest.approx((n - 1) / n * (2 * m - 1))
    assert res.gamma_satisfies
    assert res.gamma_below_beta_star
    assert res.beta_star < 2 * m - 1


def test_burnside_2_7_value():
    res = burnside_bound(2, 7)
    assert res.gamma_closed == pytest.approx(18 / 7)
    assert abs(burnside_lhs(res.gamma_closed, 7) - (18 / 7) / ((18 / 7) ** 6 - 1) - 18 / 7) <= 1e-12


def test_burnside_boundary_case_reported_verbatim():
    res = burnside_bound(2, 4)
    assert res.guaranteed == (4 > 3)
    assert res.gamma_satisfies == burnside_holds(res.gamma_closed, 4, 3)


def test_burnside_infeasible():
    res = burnside_bound(2, 2)
    assert res.beta_star is None and not res.gamma_below_beta_star


def test_burnside_rejects_bad_input():
    with pytest.raises(SpecError):
        burnside_bound(1, 5)


@given(st.integers(2, 6), st.integers(4, 60))
def test_burnside_beta_star_is_tight(m, n):
    res = burnside_bound(m, n)
    assert burnside_holds(res.beta_star, n, 2 * m - 1)
    assert not burnside_holds(res.beta_star + 1e-9, n, 2 * m - 1)


# -- semigroups and growth -------------------------------------------------------------

def test_semigroup_examples():
    z2 = preset("z2")
    res = semigroup_bound(z2, ["a", "b"], 12)
    assert res.valid and res.value == pytest.approx(math.log(2))
    res = semigroup_bound(z2, ["a", "A"], 2)
    assert not res.valid and res.value is None
    assert res.witness == z2.word("a A")
    res = semigroup_bound(preset("heisenberg"), ["a", "b", "c"], 10)
    assert res.value == pytest.approx(math.log(3))


def test_growth_series():
    z2 = growth_series(preset("z2"), 8)
    assert list(z2.cumulative) == [2 * n * n + 2 * n + 1 for n in range(9)]
    f2 = growth_series(preset("free(2)"), 8)
    assert list(f2.strict[1:]) == [4 * 3 ** (n - 1) for n in range(1, 9)]
    for gs in (z2, f2):
        assert [gs.cumulative[n] - (gs.cumulative[n - 1] if n else 0) for n in range(9)] == list(gs.strict)
    # sphere sizes are submultiplicative here, so the growth rate stays an estimate
    assert not f2.supermultiplicative and not z2.supermultiplicative
    assert not f2.certified


# -- sandwich -------------------------------------------------------------------------

def test_free_group_bracket_collapses():
    report = entropy_sandwich(preset("free(2)"), 8)
    lo, hi = report.bracket
    assert abs(lo - math.log(3)) <= 1e-9 and abs(hi - math.log(3)) <= 1e-9


def test_z2_bracket_contains_known_value():
    report = entropy_sandwich(preset("z2"), 12, height="linear:1,0")
    lo, hi = report.bracket
    assert lo <= math.log(MU_Z2) <= hi


def test_dihedral_bracket_is_zero():
    lo, hi = entropy_sandwich(preset("dihedral-ab"), 12).bracket
    assert abs(lo) <= 1e-12 and abs(hi) <= 1e-12


@pytest.mark.parametrize("name", ALL_PRESETS)
def test_bracket_is_consistent_everywhere(name):
    report = entropy_sandwich(preset(name), 7, periodic_n=3)
    assert report.consistent()
    for b in report.bounds:
        assert b.role in ("lower", "upper", "exact", "estimate")
        assert b.certified or b.role == "estimate"


def test_estimates_never_enter_bracket():
    report = entropy_sandwich(preset("z2"), 8, semigroup=(["a", "b"], 8), periodic_n=4)
    kinds = {b.kind: b for b in report.bounds}
    assert kinds["semigroup"].role == "estimate" and kinds["periodic"].role == "estimate"
    assert all(b.kind not in ("semigroup", "periodic") for b in report.lowers() + report.uppers())
