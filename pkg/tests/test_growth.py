import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from folnerkit.boundary import FiniteSubset, ball
from folnerkit.groups import DomainError, GroupModel, parse_model
from folnerkit.growth import (
    GrowthBudgetExceeded,
    NeedsLargerRadius,
    ball_volume,
    brute_force_words,
    csc_constant,
    csc_instance_check,
    cumulative_by_recurrence,
    growth_rate_exact,
    phi,
    reduced_word_count,
    sandwich,
    sws_checks,
    table_for,
)
from folnerkit.standard import standard_set_lamp


@pytest.mark.parametrize("spec", ["lamp:2", "lamp:3", "lamp-sws", "bs:2"])
def test_bfs_matches_ball(spec):
    m = parse_model(spec)
    t = ball_volume(m, 4)
    assert list(t.volumes) == [len(ball(m, r)) for r in range(5)]


def test_known_volumes():
    assert list(ball_volume(GroupModel.lamplighter(2), 4).volumes) == [1, 4, 10, 22, 44]


@given(st.integers(2, 5), st.integers(0, 9))
def test_word_counts(d, n):
    W, cum = reduced_word_count(d, n)
    assert W == brute_force_words(d, n)
    assert cum[-1] == sum(W)


def test_recurrence_variant_differs():
    _, cum = reduced_word_count(2, 6)
    rec = cumulative_by_recurrence(2, 6)
    assert rec[:2] == cum[:2]
    # the true cumulative count satisfies the recurrence plus d
    assert all(cum[n] == cum[n - 1] + cum[n - 2] + 2 for n in range(2, 7))
    assert rec[2] != cum[2]


def test_growth_rate():
    r = growth_rate_exact(2)
    assert r["value"] == pytest.approx((1 + math.sqrt(5)) / 2)
    assert growth_rate_exact(3)["rational"] == 2
    with pytest.raises(DomainError):
        growth_rate_exact(1)


def test_csc_constant():
    c = csc_constant(2)
    assert c.constant == pytest.approx(2 * math.log(2) / math.log((1 + math.sqrt(5)) / 2))
    assert abs(c.constant - 2.8808) < 1e-4
    assert abs(c.fol_root_check - c.folner_exponent) < 0.01


def test_sandwich_small():
    rows = sandwich(GroupModel.lamplighter(2), 10)
    assert all(r["holds"] for r in rows)
    assert all(r["holds"] for r in sandwich(GroupModel.sws(), 8))
    with pytest.raises(DomainError):
        sandwich(GroupModel.bs(2), 3)


def test_phi():
    t = ball_volume(GroupModel.lamplighter(2), 4)
    assert [phi(t, lam) for lam in (0, 1, 4, 21)] == [0, 1, 2, 3]
    with pytest.raises(NeedsLargerRadius):
        phi(t, 44)


def test_budget():
    with pytest.raises(GrowthBudgetExceeded) as info:
        ball_volume(GroupModel.lamplighter(3), 30, budget=1000)
    assert info.value.table.volumes[-1] <= 1000


def test_csc_instances():
    for n in (1, 2, 3):
        F = standard_set_lamp(2, n)
        assert csc_instance_check(F)["holds"]
    m = GroupModel.bs(2)
    F = FiniteSubset.of(m, [m.identity])
    r = csc_instance_check(F, table_for(m, 16))
    assert r["holds"] and r["ratio"] == Fraction(1)


def test_sws_ratios():
    r = sws_checks(4)
    assert r["standard_outer_ratio"] == 1  # 4/n at n = 4
    assert r["padded_outer_ratio"] == Fraction(1, 2) and r["padded_is_2_over_n"]
    assert r["sandwich_holds"]
    with pytest.raises(DomainError):
        sws_checks(15)
