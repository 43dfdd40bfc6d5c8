from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from heightcensus import faberforge as ff
from heightcensus.enclosures import BallComplex
from heightcensus.errors import DomainError, InfeasibleError
from heightcensus.faberforge import (PhiSpec, SeriesFunction, build_schedule, check_transcendence_witness,
                                     dumps_pk, eval_exact_at_algebraic, eval_truncated, loads_pk,
                                     tail_majorant_checks, verify_sigma_lower_bound)
from heightcensus.polynum import AlgebraicNumber, RatPolynomial, nf_reduce
from oracles import rationals_of_height

HALF = PhiSpec("linear", 2, 2)


@pytest.fixture(scope="module")
def faithful1():
    return SeriesFunction(build_schedule(HALF, 1))


@pytest.fixture(scope="module")
def toy_f():
    return SeriesFunction(build_schedule(HALF, 2, mode=ff.TOY, variant="f"))


@pytest.fixture(scope="module")
def toy_g():
    return SeriesFunction(build_schedule(HALF, 2, mode=ff.TOY, variant="g"))


def test_phi_catalogue():
    assert PhiSpec.parse("x/2", 2).c == 2
    assert PhiSpec.parse("sqrt(x)", 3).name == "sqrt"
    with pytest.raises(DomainError):
        PhiSpec("linear", 2, 1)
    with pytest.raises(DomainError):
        PhiSpec.parse("x^2", 2)
    with pytest.raises(DomainError):
        PhiSpec("sqrt", Fraction(1, 2))


def test_faithful_depth_one(faithful1):
    e = faithful1.schedule.entry(1)
    assert e.N_delta == 3
    assert e.epsilon_delta == len(rationals_of_height(20))  # e^3 = 20.08...
    assert faithful1.schedule.all_conditions_hold
    # c_1 = 1 + [2 (1 + e^3)^511]: check the bit length against a float estimate
    assert abs(e.c_delta.bit_length() - (1 + 511 * math.log2(1 + math.e ** 3))) < 2


def test_faithful_depth_two_is_infeasible():
    with pytest.raises(InfeasibleError):
        build_schedule(HALF, 2)


def test_toy_records_violations():
    s = build_schedule(HALF, 3, mode=ff.TOY)
    assert "(iii) at delta=2" in s.violations
    assert not s.all_conditions_hold


def test_pk_vanishes_on_its_census(toy_f):
    for k in (1, 2):
        pk = toy_f.pk(k)
        for alpha in toy_f.census(k).algebraics():
            assert nf_reduce(alpha, pk).is_zero()


def test_levels_are_nested(toy_f):
    assert all(toy_f.census(2).contains_class(c) for c in toy_f.census(1).classes)


def test_exact_value_inside_truncated_ball(toy_f):
    rng = random.Random(7)
    algs = [a for a in toy_f.census(2).algebraics() if a.ball(64).abs_upper() < 1]
    for alpha in rng.sample(algs, 8):
        exact = eval_exact_at_algebraic(toy_f, alpha).value.to_ball(160)
        z = alpha.ball(160)
        for K in (1, 2, 3):
            assert eval_truncated(toy_f, z, K).contains_ball(exact)


def test_truncation_threshold_enforced(toy_f):
    with pytest.raises(DomainError):
        eval_truncated(toy_f, BallComplex.exact(2), 2)


def test_derivative_at_rational_point(toy_f):
    # the first level is {0, 1, -1}: P_1 = (X (X - 1) (X + 1))^1
    one = AlgebraicNumber.from_rational(Fraction(1, 2))
    t = toy_f.taylor_pk(1, one, 2)
    x = Fraction(1, 2)
    assert t[0].rational_value() == x ** 3 - x
    assert t[1].rational_value() == 3 * x ** 2 - 1
    assert t[2].rational_value() == 3 * x  # P''/2


def test_g_witness_is_dyadic(toy_g):
    for alpha in list(toy_g.census(2).algebraics())[:10]:
        for sigma in (0, 1):
            ev = eval_exact_at_algebraic(toy_g, alpha, sigma)
            assert ev.witness_is_dyadic
            assert ev.M == max(ev.k0, sigma + 1)


def test_uncaptured_point_is_refused(toy_f):
    with pytest.raises(DomainError):
        eval_exact_at_algebraic(toy_f, AlgebraicNumber.from_rational(Fraction(1, 3)))


def test_sigma_lower_bound_depth_one(faithful1):
    r = verify_sigma_lower_bound(faithful1, 1, 1)
    assert r.passed
    assert r.candidates == 93


def test_transcendence_witness(toy_f):
    assert check_transcendence_witness(toy_f, 1).passed


def test_tail_majorants_faithful(faithful1):
    assert all(ok for _, ok in tail_majorant_checks(faithful1))


def test_pk_serialisation_roundtrip(toy_f):
    text = dumps_pk(2, Fraction(3, 8), toy_f.pk(2))
    p = toy_f.pk(2)
    expected = p if isinstance(p, RatPolynomial) else RatPolynomial.from_int(p)
    assert loads_pk(text).coeffs == expected.coeffs
