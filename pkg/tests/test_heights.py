from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from heightcensus.heights import (abs_log_height, check_height_inequalities, cyclotomic, euler_phi,
                                  graeffe, height_le, is_cyclotomic, mahler_measure, poly_length,
                                  unit_circle_root_count, usual_height)
from heightcensus.polynum import (AlgebraicNumber, IntPolynomial, NumberFieldElement,
                                  is_irreducible_over_Z, parse_polynomial)
from heightcensus.rootfind import isolate
from oracles import float_mahler, float_roots

small = st.integers(min_value=-9, max_value=9)


def irreducible_strategy(max_deg: int = 4):
    def ok(c):
        return c[-1] > 0 and c[0] != 0 and math.gcd(*c) == 1 and is_irreducible_over_Z(IntPolynomial(c))
    return st.lists(small, min_size=2, max_size=max_deg + 1).map(tuple).filter(ok)


@given(irreducible_strategy())
def test_root_isolation_matches_numpy(c):
    boxes = isolate(c)
    assert len(boxes) == len(c) - 1
    for r in float_roots(c):
        assert sum(1 for b in boxes if abs(b.to_complex() - r) < 1e-6) == 1
    for i, a in enumerate(boxes):
        for b in boxes[i + 1:]:
            assert a.disjoint(b)


@given(irreducible_strategy())
def test_mahler_measure_matches_numpy(c):
    m = mahler_measure(IntPolynomial(c))
    ref = float_mahler(c)
    assert float(m.lower) - 1e-9 * ref <= ref <= float(m.upper) + 1e-9 * ref


def test_mahler_by_hand():
    assert mahler_measure(parse_polynomial("X - 2")).contains(2)
    # golden ratio: M = (1 + sqrt 5) / 2
    m = mahler_measure(parse_polynomial("X^2 - X - 1"))
    assert abs(float(m.mid) - (1 + 5 ** 0.5) / 2) < 1e-15
    assert mahler_measure(parse_polynomial("3X^2 - 1")).contains(3)


@pytest.mark.parametrize("n", range(1, 16))
def test_cyclotomic_polynomials(n):
    p = cyclotomic(n)
    assert p.degree == euler_phi(n)
    assert is_cyclotomic(p)
    assert unit_circle_root_count(p.coeffs) == p.degree
    assert mahler_measure(p).contains(1)


def test_unit_circle_count_salem_like():
    # Lehmer's polynomial has exactly two real roots off the circle
    lehmer = parse_polynomial("X^10 + X^9 - X^7 - X^6 - X^5 - X^4 - X^3 + X + 1")
    assert unit_circle_root_count(lehmer.coeffs) == 8


def test_graeffe_squares_roots():
    c = (2, -3, 1)  # roots 1, 2
    assert graeffe(c) == (4, -5, 1)  # roots 1, 4


def test_height_le_boundary_cases():
    two = AlgebraicNumber.from_rational(2)
    assert height_le(two, Fraction(7, 10)).at_most  # log 2 < 0.7
    assert height_le(two, Fraction(69, 100)).exceeds
    assert height_le(AlgebraicNumber.from_rational(1), 0).at_most
    assert height_le(AlgebraicNumber.from_rational(Fraction(3, 2)), 1, mode="usual").exceeds


@given(irreducible_strategy(3), st.fractions(0, 3, max_denominator=8))
def test_height_le_against_float(c, N):
    d = len(c) - 1
    h = math.log(float_mahler(c)) / d
    assume(abs(h - N) > 1e-9)
    verdict = height_le(IntPolynomial(c), N)
    assert verdict.at_most == (h <= N)


def test_abs_log_height_rational():
    h = abs_log_height(AlgebraicNumber.from_rational(Fraction(-5, 3)))
    assert abs(float(h.mid) - math.log(5)) < 1e-12


def test_usual_height_and_length():
    p = parse_polynomial("3X^2 - 7X + 1")
    assert usual_height(p) == 7
    assert poly_length(p.coeffs) == 11


def _elements(poly: str, coords):
    alpha = AlgebraicNumber.roots_of(parse_polynomial(poly))[0]
    return [NumberFieldElement(alpha, c) for c in coords]


def test_inequalities_with_equality_cases():
    # h(x^2) = 2 h(x) and h(x + x) against h(x) + h(x) + log 2: both touch equality
    x = _elements("X^2 - X - 1", [(0, 1)])[0]
    report = check_height_inequalities([[x, x], [x, x, x]])
    assert report.all_hold
    assert not report.undecided


def test_inequalities_rational_exact():
    one = AlgebraicNumber.from_rational(1)
    xs = [NumberFieldElement.rational(one, Fraction(2, 3)), NumberFieldElement.rational(one, Fraction(5, 7))]
    report = check_height_inequalities([xs])
    assert report.all_hold
    assert {v.method for v in report.samples[0]} == {"exact-integer"}
