from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from heightcensus.lattice import integer_kernel, lll_reduce, rank, rational_kernel
from oracles import is_lll_reduced

entries = st.integers(min_value=-9, max_value=9)


def _det2(rows):
    return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]


@given(st.lists(st.lists(entries, min_size=4, max_size=4), min_size=2, max_size=4))
def test_lll_output_is_reduced_basis(rows):
    assume(rank(rows) == len(rows))
    red = lll_reduce(rows)
    assert is_lll_reduced(red)
    # same lattice: each side expresses the other with integer coordinates
    for target, basis in ((rows, red), (red, rows)):
        for v in target:
            sol = rational_kernel([list(col) + [-x] for col, x in zip(zip(*basis), v)], len(basis) + 1)
            coeffs = [c / sol[0][-1] for c in sol[0][:-1]]
            assert all(c.denominator == 1 for c in coeffs)


def test_lll_classic_example():
    red = lll_reduce([[1, 1, 1], [-1, 0, 2], [3, 5, 6]])
    assert is_lll_reduced(red)
    assert sorted(sum(x * x for x in v) for v in red)[0] <= 2


def test_lll_rejects_dependent_rows():
    with pytest.raises(ValueError):
        lll_reduce([[1, 2], [2, 4]])


@given(st.lists(st.lists(entries, min_size=5, max_size=5), min_size=1, max_size=3))
def test_integer_kernel_is_saturated(rows):
    n = 5
    kern = integer_kernel(rows, n)
    assert len(kern) == n - rank(rows)
    for v in kern:
        assert all(sum(a * x for a, x in zip(r, v)) == 0 for r in rows)
    if kern:
        assert rank(kern) == len(kern)
    # every small integer kernel vector lies in the integer span of the basis
    for v in itertools.product(range(-2, 3), repeat=n):
        if any(v) and all(sum(a * x for a, x in zip(r, v)) == 0 for r in rows):
            sol = rational_kernel([list(col) + [-x] for col, x in zip(zip(*kern), v)], len(kern) + 1)
            coeffs = [c / sol[0][-1] for c in sol[0][:-1]]
            assert all(c.denominator == 1 for c in coeffs)


def test_integer_kernel_by_hand():
    # 2x - 4y = 0 has kernel generated by (2, 1)
    assert [abs(x) for x in integer_kernel([[2, -4]], 2)[0]] == [2, 1]
    assert integer_kernel([[1, 0], [0, 1]], 2) == []


def test_rational_kernel():
    k = rational_kernel([[Fraction(1), Fraction(2), Fraction(3)]], 3)
    assert len(k) == 2
    assert all(v[0] + 2 * v[1] + 3 * v[2] == 0 for v in k)
