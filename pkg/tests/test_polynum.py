from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from heightcensus.errors import DomainError
from heightcensus.polynum import (AlgebraicNumber, DyadicRational, IntPolynomial, NumberFieldElement,
                                  RatPolynomial, is_irreducible_over_Z, is_two_eisenstein, nf_minpoly,
                                  parse_multivariate, parse_polynomial, parse_rational, q_divmod, q_gcd,
                                  q_mul)
from oracles import has_factor_by_root_subsets

small = st.integers(min_value=-6, max_value=6)
fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def poly_strategy(max_deg: int = 4):
    return st.lists(small, min_size=2, max_size=max_deg + 1).filter(lambda c: c[-1] != 0).map(tuple)


def test_arithmetic_by_hand():
    X = IntPolynomial.X()
    p = (X - IntPolynomial.constant(1)) * (X + IntPolynomial.constant(1))
    assert p.coeffs == (-1, 0, 1)
    assert str(parse_polynomial("3X^2 - 4X + 5")) == "3X^2 - 4X + 5"
    assert parse_polynomial("X^3 - 2")(Fraction(2)) == 6
    assert (X ** 3).derivative().coeffs == (0, 0, 3)


def test_text_roundtrip():
    p = IntPolynomial((5, -4, 0, 3))
    assert IntPolynomial.from_text(p.to_text()) == p


def test_parse_rational_refuses_floats():
    assert parse_rational("-7/3") == Fraction(-7, 3)
    with pytest.raises(DomainError):
        parse_rational("0.5")


def test_parse_multivariate():
    n, terms = parse_multivariate("3X1^2*X2 - X2 + 1/2")
    assert n == 2
    assert terms == {(2, 1): 3, (0, 1): -1, (0, 0): Fraction(1, 2)}


@given(st.lists(fracs, min_size=1, max_size=5), st.lists(fracs, min_size=1, max_size=4))
def test_divmod_identity(a, b):
    assume(b[-1] != 0)
    q, r = q_divmod(a, b)
    back = q_mul(q, b)
    back += [Fraction(0)] * (len(a) - len(back))
    r = list(r) + [Fraction(0)] * (len(a) - len(r))
    assert all(x == y + z for x, y, z in zip(a, back, r))
    nz = [i for i, c in enumerate(r) if c != 0]
    assert not nz or max(nz) < len(b) - 1


@given(poly_strategy(3), poly_strategy(3), poly_strategy(2))
def test_gcd_contains_common_factor(a, b, c):
    g = q_gcd(q_mul(a, c), q_mul(b, c))
    _, rem = q_divmod(g, c)
    assert not any(rem)


@given(poly_strategy(4))
def test_irreducibility_against_root_subsets(c):
    assume(c[0] != 0 and math.gcd(*c) == 1)
    p = IntPolynomial(c)
    assert is_irreducible_over_Z(p) == (not has_factor_by_root_subsets(c))


def test_irreducibility_known_cases():
    assert is_irreducible_over_Z(parse_polynomial("X^4 + 1"))
    assert not is_irreducible_over_Z(parse_polynomial("X^4 + 4"))  # Sophie Germain
    assert not is_irreducible_over_Z(parse_polynomial("4X^2 - 1"))
    assert is_irreducible_over_Z(parse_polynomial("X^3 - 2"))


def test_two_eisenstein():
    assert is_two_eisenstein(parse_polynomial("X^3 + 2X + 2"))
    assert not is_two_eisenstein(parse_polynomial("X^2 + 4"))
    assert not is_two_eisenstein(parse_polynomial("X^2 + 2X + 3"))


@given(st.integers(-10 ** 6, 10 ** 6), st.integers(0, 30))
def test_dyadic_roundtrip(m, e):
    q = Fraction(m, 2 ** e)
    d = DyadicRational.from_fraction(q)
    assert d.to_fraction() == q
    assert d.mantissa % 2 == 1 or d.mantissa == 0


def test_dyadic_refuses_other_denominators():
    with pytest.raises(DomainError):
        DyadicRational.from_fraction(Fraction(1, 3))


def sqrt2() -> AlgebraicNumber:
    return next(a for a in AlgebraicNumber.roots_of(parse_polynomial("X^2 - 2")) if a.ball().re > 0)


def test_number_field_basics():
    a = NumberFieldElement.gen(sqrt2())
    assert (a * a).rational_value() == 2
    assert str(nf_minpoly(a + 1)) == "X^2 - 2X - 1"
    assert (a.inverse() * a).rational_value() == 1


@given(st.lists(fracs, min_size=3, max_size=3))
def test_inverse_in_cubic_field(coords):
    alpha = AlgebraicNumber.roots_of(parse_polynomial("X^3 - X - 1"))[0]
    x = NumberFieldElement(alpha, tuple(coords))
    assume(not x.is_zero())
    assert (x * x.inverse() - 1).is_zero()


@given(st.lists(fracs, min_size=2, max_size=2))
def test_minpoly_annihilates(coords):
    x = NumberFieldElement(sqrt2(), tuple(coords))
    p = nf_minpoly(x)
    acc = NumberFieldElement.rational(x.generator, 0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    assert acc.is_zero()
    assert p.degree == (1 if coords[1] == 0 else 2)


def test_ratpolynomial_evaluation():
    r = RatPolynomial.from_fractions([Fraction(1, 2), 0, Fraction(3, 4)])
    assert r(Fraction(2)) == Fraction(7, 2)
