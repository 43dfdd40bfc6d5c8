from __future__ import annotations

import math
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from heightcensus.enclosures import (BallComplex, RealEnclosure, certified_floor, decide_less,
                                     exp_enclosure, log_of_int, pi_enclosure, round_up, sqrt_bounds,
                                     zeta_enclosure)


def test_pi_and_zeta():
    pi = pi_enclosure(128)
    assert pi.width < Fraction(1, 10 ** 30)
    assert abs(float(pi.mid) - math.pi) < 1e-15
    assert pi.lower < Fraction(355, 113) and pi.lower > Fraction(333, 106)
    z2 = zeta_enclosure(2, cutoff=24)
    assert z2.lower <= Fraction(math.pi ** 2 / 6) + Fraction(1, 10 ** 12)
    assert z2.upper >= Fraction(math.pi ** 2 / 6) - Fraction(1, 10 ** 12)
    assert z2.width < Fraction(1, 10 ** 15)


@given(st.fractions(min_value=0, max_value=10 ** 6, max_denominator=1000))
def test_sqrt_bounds(q):
    lo, hi = sqrt_bounds(q)
    assert lo * lo <= q <= hi * hi


@given(st.fractions(min_value=-5, max_value=5, max_denominator=100))
def test_exp_encloses_float(x):
    e = exp_enclosure(x, 96)
    assert abs(float(e.mid) - math.exp(x)) <= 1e-12 * math.exp(x)


def test_log_of_int():
    assert log_of_int(1).is_exact()
    assert abs(float(log_of_int(10).mid) - math.log(10)) < 1e-15


def test_certified_floor_of_e_cubed():
    assert certified_floor(lambda p: exp_enclosure(3, p)) == 20


def test_decide_less_exact_equality():
    one = lambda p: RealEnclosure.exact(1)  # noqa: E731
    assert decide_less(one, one, strict=False) is True
    assert decide_less(one, one, strict=True) is False


@given(st.fractions(min_value=Fraction(1, 10 ** 6), max_value=10 ** 6))
def test_round_up_is_upper(q):
    r = round_up(q, 20)
    assert q <= r <= q * (1 + Fraction(1, 2 ** 18))


@given(st.tuples(st.fractions(-3, 3, max_denominator=64), st.fractions(-3, 3, max_denominator=64)),
       st.tuples(st.fractions(-3, 3, max_denominator=64), st.fractions(-3, 3, max_denominator=64)))
def test_ball_product_contains_exact(a, b):
    x, y = BallComplex.exact(*a, prec=40), BallComplex.exact(*b, prec=40)
    prod = x * y
    re = a[0] * b[0] - a[1] * b[1]
    im = a[0] * b[1] + a[1] * b[0]
    assert prod.contains_point(re, im)
