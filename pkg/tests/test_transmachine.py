from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heightcensus.errors import DomainError, InfeasibleError
from heightcensus.polynum import AlgebraicNumber, NumberFieldElement, parse_polynomial
from heightcensus.transmachine import (FIXED_N, DiskPair, SiegelSolution, c0_of, circle_points, demo_instance,
                                       eval_tensor, gamma_t_of, generate_instance, identity_oracle,
                                       in_closed_disk, joint_degree, liouville_check, monomials,
                                       polynomial_oracle, sandwich_holds, schwarz_check, siegel_bound_ok,
                                       siegel_solve, siegel_T, sigma_count, smallest_T, threshold_report,
                                       verify_zeros)
from instances import liouville_instance, schwarz_instance


def _sqrt2():
    return max(AlgebraicNumber.roots_of(parse_polynomial("X^2 - 2")), key=lambda a: a.ball().re)


def test_c0_and_contraction():
    disk = DiskPair.of(2, 1)
    assert disk.contraction == Fraction(4, 5)
    assert abs(float(disk.c0.mid) - math.log(5 / 4)) < 1e-15
    assert c0_of(Fraction(101, 100), 1).lower > 0
    with pytest.raises(DomainError):
        c0_of(1, 2)


def test_gamma_closed_form():
    # c0 = 6, t = 2: (2 (3*2/6)^2)^(1/1) = 2
    g = gamma_t_of(2, 6)
    assert g.lower <= 2 <= g.upper and g.width < Fraction(1, 10 ** 20)
    # t = 3 takes the maximum over tau = 2, 3
    c0 = Fraction(1, 5)
    ref = max((2 * (3 * tau / 0.2) ** tau) ** (1 / (tau - 1)) for tau in (2, 3))
    assert abs(float(gamma_t_of(3, c0).mid) / ref - 1) < 1e-12


def test_siegel_T_and_sandwich():
    gamma = Fraction(2)
    T = siegel_T(4, 9, gamma, 6, 2)  # [6*2/6 * 16 * 9] = 288
    assert T == 288
    assert sandwich_holds(T, 4, 9, gamma, 2) == (T ** 2 > 2 * 2 * 4 ** 4 * 9 ** 2)
    with pytest.raises(InfeasibleError):
        siegel_T(1, Fraction(1, 100), Fraction(1), Fraction(1, 100), 2)


def test_monomials_lex():
    assert monomials(2, 2) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_siegel_basic_instance():
    sol = siegel_solve(demo_instance("basic"))
    assert sol.vanishing_verified and sol.bound_ok
    assert sol.to_text() in ("X1 - X2", "X2 - X1", "-X1 + X2")
    assert sol.kernel_dimension == 2


def test_siegel_sqrt2():
    sol = siegel_solve(demo_instance("sqrt2"))
    assert sol.to_text() == "X2 - 2"


def test_siegel_infeasible():
    with pytest.raises(InfeasibleError):
        siegel_solve(demo_instance("infeasible"))


@pytest.mark.parametrize("seed", range(4))
def test_siegel_random_instances(seed):
    rng = random.Random(seed)
    inst = generate_instance(rng, 2, 2, Fraction(1, 2), 3)
    assert inst.T ** inst.t > 2 * len(inst.points) * inst.D
    sol = siegel_solve(inst)
    assert any(sol.coeffs)
    for p in inst.points:
        assert eval_tensor(sol.coeffs, inst.T, inst.t, p).is_zero()
    assert SiegelSolution.from_json(sol.to_json()) == sol


def test_siegel_bound_comparison():
    assert siegel_bound_ok(8, 2, 2, 0)
    assert not siegel_bound_ok(9, 2, 2, 0)
    # 2 T^t e^{tTN0} with T=1, t=2, N0=1: 2 e^2 = 14.78
    assert siegel_bound_ok(14, 1, 2, 1) and not siegel_bound_ok(15, 1, 2, 1)
    assert smallest_T(2, 3, 2) == 4


@given(st.integers(2, 64), st.fractions(Fraction(1, 4), 4, max_denominator=16))
def test_circle_points_exact(grid, rho):
    pts = circle_points(rho, grid)
    assert all(x * x + y * y == rho * rho for x, y in pts)


def test_in_closed_disk():
    s2 = _sqrt2()
    assert in_closed_disk(s2, Fraction(3, 2))
    assert not in_closed_disk(s2, Fraction(7, 5))
    i = AlgebraicNumber.roots_of(parse_polynomial("X^2 + 1"))[0]
    assert in_closed_disk(i, 1)  # boundary decided exactly


def test_schwarz_hand_case():
    z = AlgebraicNumber.from_rational(0)
    rep = schwarz_check(parse_polynomial("X"), DiskPair.of(2, 1), [z])
    assert rep.passed
    assert rep.sup_r_upper >= 1 and rep.sup_r_upper - 1 < Fraction(1, 10)
    assert rep.rhs_lower <= Fraction(8, 5)


def test_schwarz_rejects_false_zero():
    with pytest.raises(DomainError):
        verify_zeros(parse_polynomial("X - 1"), [AlgebraicNumber.from_rational(0)])
    with pytest.raises(DomainError):  # z = 0 is a simple zero, not a double one
        verify_zeros(parse_polynomial("X^2 - X"), [AlgebraicNumber.from_rational(0)] * 2)


@pytest.mark.parametrize("seed", range(3))
def test_schwarz_random(seed):
    F, zeros, R, r = schwarz_instance(random.Random(seed))
    assert schwarz_check(F, DiskPair.of(R, r), zeros, grid=128).margin >= 0


def test_liouville_hand_cases():
    one = AlgebraicNumber.from_rational(Fraction(1, 2))
    half = NumberFieldElement.rational(one, Fraction(1, 2))
    eq = liouville_check("3X - 1", [half])
    assert eq.margin.lower == 0 == eq.margin.upper
    r = liouville_check("X - 1", [NumberFieldElement.rational(AlgebraicNumber.from_rational(Fraction(3, 2)),
                                                                Fraction(3, 2))])
    assert r.margin.lower == Fraction(1, 6)
    s2 = NumberFieldElement.gen(_sqrt2())
    assert liouville_check("X^2 - 2", [s2]).kind == "ExactZero"


def test_liouville_weil_form_on_golden_conjugate():
    # gamma = (1 - sqrt 5)/2, P = X + 1: |P(gamma)| = 0.38 while L^{-1} H(gamma)^{-2} = 0.31 with H = e^h
    g = min(AlgebraicNumber.roots_of(parse_polynomial("X^2 - X - 1")), key=lambda a: a.ball().re)
    res = liouville_check("X + 1", [NumberFieldElement.gen(g)])
    assert res.satisfied
    assert abs(float(res.value_abs.mid) - (3 - 5 ** 0.5) / 2) < 1e-12
    assert abs(float(res.bound.mid) - 0.5 / ((1 + 5 ** 0.5) / 2)) < 1e-12


def test_liouville_fixed_N_branch():
    s2 = NumberFieldElement.gen(_sqrt2())
    res = liouville_check("X - 1", [s2], D=1, branch=FIXED_N)
    assert res.satisfied and res.D == 1


@pytest.mark.parametrize("seed", range(40))
def test_liouville_random(seed):
    terms, point, branch = liouville_instance(random.Random(seed))
    res = liouville_check(terms, point, branch=branch)
    assert not res.violated
    assert res.kind in ("ExactZero", "SatisfiesBound", "Tight")


def test_threshold_fixed_D():
    rep = threshold_report(1, 2, 2, Fraction(1446), DiskPair.of(2, 1))
    assert rep.found
    assert rep.threshold == 6
    assert all(not row.holds for row in rep.rows[:-1])


def test_joint_degree():
    s2 = NumberFieldElement.gen(_sqrt2())
    assert joint_degree([s2]) == 2
    assert joint_degree([s2 * s2]) == 1


def test_sigma_counts_by_hand():
    # E_{1,1} in the unit disk: 0, +-1, +-1/2
    assert sigma_count([identity_oracle()], 1, 1, 1).count == 5
    # z^2 adds h(z^2) = 2 h(z) <= 1, leaving 0 and +-1
    assert sigma_count([identity_oracle(), polynomial_oracle([0, 0, 1])], 1, 1, 1).count == 3
