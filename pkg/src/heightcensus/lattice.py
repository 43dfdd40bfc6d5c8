"""Exact linear algebra over Q and Z: row reduction, LLL, integer kernels."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = [[Fraction(x) for x in r] for r in rows]
    if not A:
        return [], []
    n = len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def rational_kernel(rows: Sequence[Sequence[Fraction]], n: int) -> list[list[Fraction]]:
    """A basis of ``{x in Q^n : A x = 0}``."""
    R, piv = rref(rows)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def primitive_vector(v: Sequence[Fraction]) -> list[int]:
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return [x // g for x in ints] if g > 1 else ints


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def _round_div(a: int, b: int) -> int:
    """Nearest integer to ``a / b`` for ``b > 0``."""
    return (2 * a + b) // (2 * b)


def lll_reduce(basis: Sequence[Sequence[int]]) -> list[list[int]]:
    """LLL reduction (delta = 3/4) of linearly independent integer rows.

    All-integer variant: the Gram-Schmidt data are kept as the subdeterminants
    ``d_i`` and the integers ``lambda_ij = d_j mu_ij``, so no rational number is
    ever normalised.
    """
    b = [None] + [list(map(int, v)) for v in basis]
    n = len(b) - 1
    if n == 0:
        return []
    d = [1] + [0] * n
    lam = [[0] * (n + 1) for _ in range(n + 1)]

    def redi(k: int, l: int) -> None:
        if 2 * abs(lam[k][l]) > d[l]:
            q = _round_div(lam[k][l], d[l])
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            lam[k][l] -= q * d[l]
            for i in range(1, l):
                lam[k][i] -= q * lam[l][i]

    def swapi(k: int, kmax: int) -> None:
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(1, k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lm = lam[k][k - 1]
        B = (d[k - 2] * d[k] + lm * lm) // d[k - 1]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k] * lam[i][k - 1] - lm * t) // d[k - 1]
            lam[i][k - 1] = (B * t + lm * lam[i][k]) // d[k]
        d[k - 1] = B

    d[1] = _dot(b[1], b[1])
    k, kmax = 2, 1
    while k <= n:
        if k > kmax:
            kmax = k
            for j in range(1, k + 1):
                u = _dot(b[k], b[j])
                for i in range(1, j):
                    u = (d[i] * u - lam[k][i] * lam[j][i]) // d[i - 1]
                if j < k:
                    lam[k][j] = u
                else:
                    if u == 0:
                        raise ValueError("LLL input rows are linearly dependent")
                    d[k] = u
        redi(k, k - 1)
        if 4 * d[k] * d[k - 2] < 3 * d[k - 1] ** 2 - 4 * lam[k][k - 1] ** 2:
            swapi(k, kmax)
            k = max(2, k - 1)
        else:
            for l in range(k - 2, 0, -1):
                redi(k, l)
            k += 1
    return [list(v) for v in b[1:]]


def integer_kernel(rows: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """LLL-reduced basis of the integer kernel ``{x in Z^n : A x = 0}``.

    The dimension comes from exact elimination; the basis from LLL on
    ``[I | W A^T]`` with a weight ``W`` large enough that reduced vectors with
    a zero tail span the whole kernel lattice.
    """
    A = [list(map(int, r)) for r in rows if any(r)]
    dim = n - rank(A)
    if dim == 0:
        return []
    if not A:
        return lll_reduce([[1 if i == j else 0 for j in range(n)] for i in range(n)])
    W = 1 << (n // 2 + 4)
    while True:
        basis = [[1 if i == j else 0 for j in range(n)] + [W * A[r][i] for r in range(len(A))]
                 for i in range(n)]
        red = lll_reduce(basis)
        kern = [v[:n] for v in red if not any(v[n:])]
        if len(kern) == dim:
            return kern
        W <<= n
