"""Independent reference computations used by the tests.

Each oracle avoids the package code path it checks: floating roots via numpy,
plain coprime-pair loops, and explicit Gram-Schmidt over Fractions.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np


def float_roots(asc: tuple[int, ...]) -> np.ndarray:
    return np.roots(list(reversed(asc)))


def float_mahler(asc: tuple[int, ...]) -> float:
    lead = abs(asc[-1])
    return lead * float(np.prod([max(1.0, abs(r)) for r in float_roots(asc)]))


def has_factor_by_root_subsets(asc: tuple[int, ...]) -> bool:
    """Reducible over Z iff some proper subset of roots gives a factor with integer-rounded coefficients dividing p.

    Only used for degrees up to 4 and small coefficients, where double precision is ample.
    """
    d = len(asc) - 1
    if math.gcd(*asc) > 1 and d >= 1:
        return True
    roots = float_roots(asc)
    lead = asc[-1]
    for m in range(1, d // 2 + 1):
        for sub in itertools.combinations(range(d), m):
            monic = np.poly([roots[i] for i in sub])
            for a in (x for x in range(1, abs(lead) + 1) if lead % x == 0):
                cand = [a * c for c in monic]
                if max(abs(c.imag) for c in cand) > 1e-6:
                    continue
                ints = [round(c.real) for c in cand]
                if max(abs(c.real - i) for c, i in zip(cand, ints)) > 1e-6:
                    continue
                if exact_divides(tuple(reversed(ints)), asc):
                    return True
    return False


def exact_divides(b: tuple[int, ...], a: tuple[int, ...]) -> bool:
    """Long division over Q, ascending coefficients."""
    r = [Fraction(x) for x in a]
    db = len(b) - 1
    while len(r) - 1 >= db and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < db:
            break
        q = r[-1] / b[-1]
        shift = len(r) - 1 - db
        for i, c in enumerate(b):
            r[shift + i] -= q * c
        r.pop()
    return not any(r)


def rationals_of_height(H: int) -> set[Fraction]:
    """All ``a/b`` in lowest terms with ``max(|a|, b) <= H``, by coprime pairs."""
    out = set()
    for b in range(1, H + 1):
        for a in range(-H, H + 1):
            if math.gcd(a, b) == 1:
                out.add(Fraction(a, b))
    return out


def gram_schmidt(rows: list[list[int]]) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
    bstar: list[list[Fraction]] = []
    mu = [[Fraction(0)] * len(rows) for _ in rows]
    for i, b in enumerate(rows):
        v = [Fraction(x) for x in b]
        for j in range(i):
            den = sum(x * x for x in bstar[j])
            mu[i][j] = sum(Fraction(x) * y for x, y in zip(b, bstar[j])) / den
            v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
        bstar.append(v)
    return bstar, mu


def is_lll_reduced(rows: list[list[int]], delta: Fraction = Fraction(3, 4)) -> bool:
    bstar, mu = gram_schmidt(rows)
    norms = [sum(x * x for x in v) for v in bstar]
    for i in range(len(rows)):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for k in range(1, len(rows)):
        if norms[k] < (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            return False
    return True
