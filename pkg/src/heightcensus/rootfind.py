"""Certified isolation of the complex roots of a squarefree integer polynomial.

Approximate roots come from ``numpy.roots`` (or ``mpmath.polyroots`` above
double precision).  They are rounded to Gaussian dyadic rationals
``w_i / 2**s`` and certified exactly with the Weierstrass corrections

    W_i = p(z_i) / (a_d * prod_{j != i} (z_i - z_j)).

Every root of ``p`` lies in the union of the disks ``|z - z_i| <= d |W_i|``
and a connected component made of ``k`` disks holds exactly ``k`` roots, so
pairwise disjoint disks isolate the roots one by one.  Centres on the real
axis stay real after the symmetrisation step below; such a disk holds exactly
one root, it is invariant under conjugation, hence that root is real.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from .enclosures import DEFAULT_PRECISION_CAP, BallComplex, round_up, sqrt_upper
from .errors import CertificationError


def _approximate(coeffs: tuple[int, ...], bits: int) -> list[tuple[Fraction, Fraction]]:
    lead_first = list(reversed(coeffs))
    if bits <= 53:
        roots = np.roots(np.array([float(c) for c in lead_first], dtype=float))
        return [(Fraction(float(z.real)), Fraction(float(z.imag))) for z in roots]
    with mpmath.mp.workprec(bits + 32):
        steps = 100
        while True:
            try:
                roots = mpmath.polyroots([mpmath.mpf(c) for c in lead_first], maxsteps=steps,
                                         extraprec=bits + 32)
                break
            except mpmath.libmp.NoConvergence:
                steps *= 4
                if steps > 100000:
                    raise CertificationError("root approximation did not converge")
        out = []
        for z in roots:
            z = mpmath.mpc(z)
            out.append((_mpf_fraction(z.real), _mpf_fraction(z.imag)))
        return out


def _mpf_fraction(x) -> Fraction:
    p, q = mpmath.libmp.to_rational(x._mpf_)
    return Fraction(int(p), int(q))


def _symmetrize(approx: list[tuple[Fraction, Fraction]], bits: int) -> list[tuple[Fraction, Fraction]]:
    """Snap near-real roots to the axis and make non-real roots exact conjugate pairs."""
    tol = Fraction(1, 1 << max(8, bits // 2))
    pts = []
    for re, im in approx:
        scale = max(Fraction(1), abs(re))
        pts.append((re, Fraction(0)) if abs(im) <= tol * scale else (re, im))
    upper = [p for p in pts if p[1] > 0]
    lower = [p for p in pts if p[1] < 0]
    real = [p for p in pts if p[1] == 0]
    if len(upper) != len(lower):
        return pts
    paired = []
    remaining = list(lower)
    for re, im in upper:
        best = min(range(len(remaining)),
                   key=lambda k: abs(remaining[k][0] - re) + abs(remaining[k][1] + im))
        remaining.pop(best)
        paired.append((re, im))
        paired.append((re, -im))
    return real + paired


def _certify(coeffs: tuple[int, ...], centers: list[tuple[int, int]], s: int) -> list[Fraction] | None:
    """Return squared radii of the Weierstrass disks, or None if two centres coincide."""
    d = len(coeffs) - 1
    lead = coeffs[-1]
    S = 1 << s
    spow = [1]
    for _ in range(d):
        spow.append(spow[-1] * S)
    radii_sq = []
    for i, (x, y) in enumerate(centers):
        # Horner on (x + i y) with homogenising powers of S
        px, py = lead, 0
        for k in range(d - 1, -1, -1):
            px, py = px * x - py * y + coeffs[k] * spow[d - k], px * y + py * x
        if px == 0 and py == 0:
            radii_sq.append(Fraction(0))
            continue
        qx, qy = 1, 0
        for j, (u, v) in enumerate(centers):
            if j == i:
                continue
            dx, dy = x - u, y - v
            if dx == 0 and dy == 0:
                return None
            qx, qy = qx * dx - qy * dy, qx * dy + qy * dx
        num = d * d * (px * px + py * py)
        den = S * S * lead * lead * (qx * qx + qy * qy)
        radii_sq.append(Fraction(num, den))
    return radii_sq


def _disjoint(centers: list[tuple[int, int]], radii: list[Fraction], S: int) -> bool:
    n = len(centers)
    for i in range(n):
        xi, yi = centers[i]
        for j in range(i + 1, n):
            xj, yj = centers[j]
            dist_sq = Fraction((xi - xj) ** 2 + (yi - yj) ** 2, S * S)
            reach = radii[i] + radii[j]
            if dist_sq <= reach * reach:
                return False
    return True


def isolate_at(coeffs: tuple[int, ...], bits: int) -> tuple[BallComplex, ...] | None:
    """One certification attempt at ``bits`` bits; ``None`` when the disks overlap."""
    d = len(coeffs) - 1
    if d < 1:
        raise ValueError("constant polynomial has no roots")
    if d == 1:
        return (BallComplex.exact(Fraction(-coeffs[0], coeffs[1]), 0, bits),)
    approx = _symmetrize(_approximate(coeffs, bits), bits)
    s = bits + 8
    S = 1 << s
    centers = [(round(re * S), round(im * S)) for re, im in approx]
    radii_sq = _certify(coeffs, centers, s)
    if radii_sq is None:
        return None
    radii = [round_up(sqrt_upper(r2, bits + 16), min(bits, 60)) for r2 in radii_sq]
    if not _disjoint(centers, radii, S):
        return None
    balls = [BallComplex(Fraction(x, S), Fraction(y, S), r, bits) for (x, y), r in zip(centers, radii)]
    balls.sort(key=lambda b: (b.re, b.im))
    return tuple(balls)


@lru_cache(maxsize=65536)
def isolate(coeffs: tuple[int, ...], bits: int = 53, cap: int = DEFAULT_PRECISION_CAP) -> tuple[BallComplex, ...]:
    """Certified isolating disks for all roots, escalating precision up to ``cap`` bits.

    ``coeffs`` is ascending and must describe a squarefree polynomial.
    """
    b = bits
    while True:
        balls = isolate_at(coeffs, b)
        if balls is not None:
            return balls
        if b >= cap:
            raise CertificationError(f"root isolation failed at precision cap {cap}",
                                     undecided=[coeffs])
        b = min(2 * b, cap)


def isolate_to_radius(coeffs: tuple[int, ...], radius: Fraction, bits: int = 53,
                      cap: int = DEFAULT_PRECISION_CAP) -> tuple[BallComplex, ...]:
    """Isolation whose disks all have radius at most ``radius``."""
    need = max(bits, 53)
    if radius > 0:
        radius = Fraction(radius)
        need = max(need, radius.denominator.bit_length() - radius.numerator.bit_length() + 16)
    b = min(need, cap)
    while True:
        balls = isolate(coeffs, b, cap)
        if all(x.rad <= radius for x in balls):
            return balls
        if b >= cap:
            raise CertificationError(f"root radius {radius} not reached at precision cap {cap}",
                                     undecided=[coeffs])
        b = min(2 * b, cap)
