"""Certified rational enclosures of e^x."""

from fractions import Fraction

import mpmath

from latmin.intervals import (compare_exp, exp_interval, exp_upper,
                              frac_sqrt_bounds)


def test_exp_interval_encloses_truth():
    for x in [Fraction(1), Fraction(-3, 2), Fraction(7, 3), Fraction(5)]:
        lo, hi = exp_interval(x, 80)
        with mpmath.workdps(60):
            truth = mpmath.exp(mpmath.mpf(x.numerator) / x.denominator)
            assert mpmath.mpf(lo.numerator) / lo.denominator <= truth
            assert mpmath.mpf(hi.numerator) / hi.denominator >= truth


def test_compare_exp_signs():
    assert compare_exp(Fraction(2), Fraction(1)) == -1   # 2 < e
    assert compare_exp(Fraction(3), Fraction(1)) == 1    # 3 > e
    assert compare_exp(Fraction(1), Fraction(0)) == 0
    assert compare_exp(Fraction(-5), Fraction(2)) == -1


def test_compare_exp_tight_rational():
    # 2721/1001 < e < 2721/1000 forces several refinement rounds
    assert compare_exp(Fraction(2721, 1001), Fraction(1)) == -1
    assert compare_exp(Fraction(2719, 1000), Fraction(1)) == 1


def test_exp_upper_dominates():
    assert exp_upper(Fraction(0)) == 1
    assert exp_upper(Fraction(1)) > Fraction(271, 100)


def test_frac_sqrt_bounds_bracket():
    for f in [Fraction(2), Fraction(9), Fraction(5, 7)]:
        lo, hi = frac_sqrt_bounds(f)
        assert lo * lo <= f <= hi * hi
        assert hi - lo < Fraction(1, 1 << 60)
