"""Closed-form rounding marks: named rules, the power-law family, limits."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seatcalc.signposts import (
    ADAMS,
    DEAN,
    HUNTINGTON_HILL,
    JEFFERSON,
    WEBSTER,
    power_law,
    power_law_mark,
    signpost,
    signpost_table,
)


def test_named_rules_match_their_definitions():
    for f in range(0, 30):
        assert ADAMS.mark(f) == f
        assert JEFFERSON.mark(f) == f + 1
        assert WEBSTER.mark(f) == f + 0.5
        assert HUNTINGTON_HILL.mark(f) == pytest.approx(math.sqrt(f * (f + 1)), abs=1e-12)
        assert DEAN.mark(f) == pytest.approx(f * (f + 1) / (f + 0.5), abs=1e-12)


def test_power_law_identifications_exact():
    # the beta = -inf, -2, 1, +inf members are Adams, HH, Webster, Jefferson
    for f in range(0, 25):
        assert power_law_mark(-math.inf, f) == ADAMS.mark(f)
        assert power_law_mark(-2.0, f) == pytest.approx(HUNTINGTON_HILL.mark(f), abs=1e-12)
        assert power_law_mark(1.0, f) == pytest.approx(WEBSTER.mark(f), abs=1e-12)
        assert power_law_mark(math.inf, f) == JEFFERSON.mark(f)


def test_power_law_special_value_formulas():
    # independent closed forms for beta in {-1, 0, 2}
    for f in range(1, 40):
        assert power_law_mark(-1.0, f) == pytest.approx(
            1.0 / (math.log(f + 1) - math.log(f)), rel=1e-12)
        assert power_law_mark(0.0, f) == pytest.approx(
            (f + 1) ** (f + 1) / (math.e * f ** f), rel=1e-10)
        assert power_law_mark(2.0, f) == pytest.approx(
            math.sqrt(f * (f + 1) + 1.0 / 3.0), rel=1e-12)
    assert power_law_mark(0.0, 0) == pytest.approx(1 / math.e, rel=1e-12)


def test_table_entries():
    assert power_law_mark(1, 0) == pytest.approx(0.50, abs=0.005)
    assert power_law_mark(-2, 1) == pytest.approx(1.41, abs=0.005)
    assert power_law_mark(0, 0) == pytest.approx(0.37, abs=0.005)
    assert power_law_mark(-4, 1) == pytest.approx(1.361, abs=0.001)


def test_zero_mark_for_strongly_negative_beta_at_f0():
    for beta in (-1.0, -1.5, -2.0, -4.0, -math.inf):
        assert power_law_mark(beta, 0) == 0.0


def test_monotone_in_beta():
    betas = [b / 2.0 for b in range(-20, 21)]  # -10..10 step 0.5
    for f in (1, 2, 5, 17, 50):
        marks = [power_law_mark(b, f) for b in betas]
        for lo, hi in zip(marks, marks[1:]):
            assert lo < hi


def test_guard_band_limits():
    # near-zero and near-minus-one betas fall back to the limit formulas
    for f in (0, 1, 7, 23):
        assert power_law_mark(1e-6, f) == pytest.approx(power_law_mark(0.0, f), abs=1e-4)
        assert power_law_mark(-1e-6, f) == pytest.approx(power_law_mark(0.0, f), abs=1e-4)
    for f in (1, 7, 23):
        assert power_law_mark(-1 + 1e-6, f) == pytest.approx(
            power_law_mark(-1.0, f), abs=1e-4)
        assert power_law_mark(-1 - 1e-6, f) == pytest.approx(
            power_law_mark(-1.0, f), abs=1e-4)
    # huge |beta| collapses to the Adams/Jefferson endpoints
    assert power_law_mark(1e12, 3) == 4.0
    assert power_law_mark(-1e12, 3) == 3.0


def test_no_overflow_at_large_f():
    # (f+1)^(f+1) overflows doubles near f = 140; log-space evaluation must not
    r = power_law_mark(0.0, 500)
    assert 500 < r < 501
    r = power_law_mark(-1.0, 10 ** 6)
    assert 10 ** 6 < r < 10 ** 6 + 1


def test_large_f_approaches_half():
    for beta in (-4, -3, -2, -1, 0, 1, 2, 3, 4):
        assert abs(power_law_mark(beta, 50) - 50.5) < 0.01


@given(beta=st.floats(min_value=-10, max_value=10), f=st.integers(min_value=0, max_value=50))
@settings(max_examples=300)
def test_bracketing_property(beta, f):
    r = power_law_mark(beta, f)
    assert f <= r <= f + 1


@given(f=st.integers(min_value=0, max_value=200))
def test_nondecreasing_in_f(f):
    for rule in (ADAMS, DEAN, HUNTINGTON_HILL, WEBSTER, JEFFERSON,
                 power_law(-3.0), power_law(0.5)):
        assert rule.mark(f + 1) >= rule.mark(f)


def test_signpost_table_shapes():
    rows = signpost_table(power_law(1.0), 4)
    assert rows == [(0, 0.5), (1, 1.5), (2, 2.5), (3, 3.5), (4, 4.5)]
    assert [r for _, r in signpost_table(ADAMS, 4)] == [0, 1, 2, 3, 4]
    assert [r for _, r in signpost_table(JEFFERSON, 4)] == [1, 2, 3, 4, 5]


def test_signpost_helper_dispatch():
    assert signpost(WEBSTER, 3) == 3.5
    assert signpost(power_law(-2.0), 2) == pytest.approx(math.sqrt(6), rel=1e-12)


def test_mark_at_ignores_divisor():
    for d in (0.1, 1.0, 10.0):
        assert WEBSTER.mark_at(2, d) == 2.5
        assert power_law(3.0).mark_at(5, d) == power_law(3.0).mark(5)


def test_rule_labels():
    assert str(WEBSTER) == "webster"
    assert str(power_law(2.0)) in ("powerlaw:2", "powerlaw:2.0")
