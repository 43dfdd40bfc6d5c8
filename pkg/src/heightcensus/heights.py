"""Certified Mahler measures, heights and height-threshold decisions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .enclosures import (
    DEFAULT_PRECISION_CAP,
    BallComplex,
    RealEnclosure,
    ball_polyval,
    certified_floor,
    exp_enclosure,
    log_enclosure,
    log_of_int,
    real_eval,
    sqrt_bounds,
    to_iv,
)
from .errors import CertificationError, DomainError
from .polynum import (
    AlgebraicNumber,
    IntPolynomial,
    NumberFieldElement,
    nf_minpoly,
    q_derivative,
    q_divmod,
)
from .rootfind import isolate

DEFAULT_TARGET = Fraction(1, 1 << 40)


# ---------------------------------------------------------------------------
# roots and Mahler measure


def certified_roots(p: IntPolynomial, precision_bits: int = 53,
                    cap: int = DEFAULT_PRECISION_CAP) -> list[BallComplex]:
    """Pairwise disjoint disks, one per root of the squarefree polynomial ``p``."""
    if p.degree < 1:
        raise DomainError("certified_roots needs degree >= 1")
    if not p.is_squarefree():
        raise DomainError(f"{p} is not squarefree")
    return list(isolate(p.coeffs, max(precision_bits, 53), cap))


def mahler_from_roots(lead: int, roots: Iterable[BallComplex]) -> RealEnclosure:
    lo, hi = Fraction(abs(lead)), Fraction(abs(lead))
    for z in roots:
        lo *= max(Fraction(1), z.abs_lower())
        hi *= max(Fraction(1), z.abs_upper())
    return RealEnclosure(lo, hi)


def _quadratic_mahler(c: Sequence[int], bits: int) -> RealEnclosure:
    cc, b, a = (abs(x) for x in c)
    disc = c[1] * c[1] - 4 * c[0] * c[2]
    if disc < 0:
        return RealEnclosure.exact(max(a, cc))
    lo_s, hi_s = sqrt_bounds(disc, bits)
    lo = max(Fraction(a), Fraction(cc), (b + lo_s) / 2)
    hi = max(Fraction(a), Fraction(cc), (b + hi_s) / 2)
    return RealEnclosure(lo, hi)


def mahler_measure(p: IntPolynomial, target_radius: Fraction = DEFAULT_TARGET,
                   cap: int = DEFAULT_PRECISION_CAP) -> RealEnclosure:
    """Enclosure of ``|a_d| prod max(1, |alpha_i|)`` of width at most ``target_radius``."""
    if p.degree < 1:
        raise DomainError("Mahler measure needs degree >= 1")
    c = p.coeffs
    target = Fraction(target_radius)
    if p.degree == 1:
        return RealEnclosure.exact(max(abs(c[0]), abs(c[1])))
    if p.degree == 2:
        bits = 64
        while True:
            enc = _quadratic_mahler(c, bits)
            if enc.width <= target:
                return enc
            if bits >= cap:
                raise CertificationError("Mahler measure not tight enough at the precision cap")
            bits = min(cap, 2 * bits)
    if not p.is_squarefree():
        raise DomainError(f"{p} is not squarefree")
    bits = 53
    while True:
        enc = mahler_from_roots(c[-1], isolate(c, bits, cap))
        if enc.width <= target:
            return enc
        if bits >= cap:
            raise CertificationError("Mahler measure not tight enough at the precision cap",
                                     undecided=[p])
        bits = min(cap, 2 * bits)


def _minpoly_of(a) -> IntPolynomial:
    if isinstance(a, AlgebraicNumber):
        return a.minpoly
    if isinstance(a, NumberFieldElement):
        return nf_minpoly(a)
    if isinstance(a, IntPolynomial):
        return a.normalized()
    if isinstance(a, (int, Fraction)):
        q = Fraction(a)
        return IntPolynomial((-q.numerator, q.denominator))
    raise TypeError(f"no minimal polynomial for {type(a).__name__}")


def abs_log_height(a, target_radius: Fraction = DEFAULT_TARGET,
                   cap: int = DEFAULT_PRECISION_CAP) -> RealEnclosure:
    """Enclosure of ``h(alpha) = (1/d) log M(alpha)`` of width at most ``target_radius``."""
    p = _minpoly_of(a)
    d = p.degree
    target = Fraction(target_radius)
    if d == 1:
        m = max(abs(p.coeffs[0]), abs(p.coeffs[1]))
        if m == 1:
            return RealEnclosure.exact(0)
        prec = 64
        while True:
            enc = log_of_int(m, prec)
            if enc.width <= target:
                return enc
            if prec >= cap:
                raise CertificationError("height enclosure not tight enough at the precision cap")
            prec = min(cap, 2 * prec)
    if is_kronecker(p):
        return RealEnclosure.exact(0)
    m_target = target
    prec = 64
    while True:
        m_enc = mahler_measure(p, m_target, cap)
        log_m = log_enclosure(m_enc, prec)
        enc = RealEnclosure(log_m.lower / d, log_m.upper / d)
        if enc.width <= target:
            return enc
        if prec >= cap:
            raise CertificationError("height enclosure not tight enough at the precision cap",
                                     undecided=[p])
        m_target /= 16
        prec = min(cap, 2 * prec)


def usual_height(p: IntPolynomial) -> int:
    return max((abs(c) for c in p.coeffs), default=0)


def poly_length(c) -> int:
    """Sum of absolute values of all coefficients of a (possibly multivariate) polynomial."""
    if isinstance(c, IntPolynomial):
        return sum(abs(x) for x in c.coeffs)
    if isinstance(c, dict):
        return sum(poly_length(v) for v in c.values())
    if isinstance(c, (int, Fraction)):
        return abs(c)
    if hasattr(c, "coeffs") and isinstance(c.coeffs, dict):
        return sum(abs(v) for v in c.coeffs.values())
    return sum(poly_length(v) for v in c)


# ---------------------------------------------------------------------------
# roots of unity and the unit circle


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial, by exact division of ``X**n - 1``."""
    num = [-1] + [0] * (n - 1) + [1]
    for k in range(1, n):
        if n % k == 0:
            num, rem = q_divmod(num, cyclotomic(k).coeffs)
            assert not rem
    return IntPolynomial(tuple(int(x) for x in num))


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def is_cyclotomic(p: IntPolynomial) -> bool:
    d = p.degree
    if d < 1 or p.leading != 1 or abs(p.coeffs[0]) != 1:
        return False
    # phi(n) >= sqrt(n / 2), so phi(n) = d forces n <= 2 d^2
    for n in range(1, 2 * d * d + 3):
        if euler_phi(n) == d and cyclotomic(n) == p:
            return True
    return False


def is_kronecker(p: IntPolynomial) -> bool:
    """Minimal polynomial of a number of height zero: X or a cyclotomic polynomial."""
    return p.coeffs == (0, 1) or is_cyclotomic(p)


def _sturm_count(q: Sequence[Fraction], a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots of ``q`` in ``(a, b]``."""
    seq = [list(q), q_derivative(q)]
    while seq[-1]:
        _, r = q_divmod(seq[-2], seq[-1])
        seq.append([-x for x in r])
    seq = [s for s in seq if s]

    def changes(x):
        vals = []
        for s in seq:
            v = sum(Fraction(c) * x ** i for i, c in enumerate(s))
            if v != 0:
                vals.append(v > 0)
        return sum(1 for u, v in zip(vals, vals[1:]) if u != v)

    return changes(a) - changes(b)


@lru_cache(maxsize=1 << 14)
def unit_circle_root_count(coeffs: tuple[int, ...]) -> int:
    """Exact number of roots on ``|z| = 1`` of an irreducible integer polynomial.

    A root on the circle has its conjugate ``1/z`` as a root too, so the
    polynomial is self-reciprocal; writing ``p(z) = z^m q(z + 1/z)`` the roots
    on the circle come in pairs above the roots of ``q`` in ``(-2, 2)``.
    """
    d = len(coeffs) - 1
    if d == 1:
        return 1 if abs(coeffs[0]) == abs(coeffs[1]) else 0
    rev = tuple(reversed(coeffs))
    if rev != coeffs and tuple(-x for x in rev) != coeffs:
        return 0
    if d % 2:
        return 0
    m = d // 2
    # V_0 = 2, V_1 = w, V_{j+1} = w V_j - V_{j-1}  with  z^j + z^-j = V_j(z + 1/z)
    V = [[Fraction(2)], [Fraction(0), Fraction(1)]]
    for _ in range(2, m + 1):
        nxt = [Fraction(0)] + V[-1]
        prev = V[-2] + [Fraction(0)] * (len(nxt) - len(V[-2]))
        V.append([x - y for x, y in zip(nxt, prev)])
    q = [Fraction(0)] * (m + 1)
    q[0] += coeffs[m]
    for j in range(1, m + 1):
        for i, v in enumerate(V[j]):
            q[i] += coeffs[m + j] * v
    return 2 * _sturm_count(q, Fraction(-2), Fraction(2))


def modulus_status(minpoly: IntPolynomial, ball_at: Callable[[int], BallComplex],
                   cap: int = DEFAULT_PRECISION_CAP) -> int:
    """Sign of ``|z| - 1`` for a specific root ``z`` of ``minpoly``, decided exactly.

    ``ball_at(bits)`` returns enclosures of ``z`` that shrink with ``bits``.
    """
    c = minpoly.coeffs
    if len(c) == 2:
        return (abs(c[0]) > abs(c[1])) - (abs(c[0]) < abs(c[1]))
    on_circle = unit_circle_root_count(c)
    bits = 53
    while True:
        z = ball_at(bits)
        if z.abs_lower() > 1:
            return 1
        if z.abs_upper() < 1:
            return -1
        if on_circle:
            roots = isolate(c, bits, cap)
            off = sum(1 for r in roots if r.abs_lower() > 1 or r.abs_upper() < 1)
            if off == len(roots) - on_circle:
                # every root whose disk still meets the circle lies on it; find ours
                hits = [r for r in roots if r.intersects(z) and not (r.abs_lower() > 1 or r.abs_upper() < 1)]
                if hits and len([r for r in roots if r.intersects(z)]) == len(hits):
                    return 0
        if bits >= cap:
            raise CertificationError("position relative to the unit circle undecided", undecided=[minpoly])
        bits = min(cap, 2 * bits)


# ---------------------------------------------------------------------------
# threshold decisions


@dataclass(frozen=True)
class HeightVerdict:
    kind: str  # "AtMost", "Exceeds" or "Undecided"
    precision_bits: int | None = None

    @property
    def at_most(self) -> bool:
        return self.kind == "AtMost"

    @property
    def exceeds(self) -> bool:
        return self.kind == "Exceeds"

    @property
    def undecided(self) -> bool:
        return self.kind == "Undecided"

    def __str__(self) -> str:
        return f"Undecided({self.precision_bits})" if self.undecided else self.kind


AT_MOST = HeightVerdict("AtMost")
EXCEEDS = HeightVerdict("Exceeds")


class HeightThreshold:
    """The bound ``e^{dN}`` on Mahler measures for a fixed degree ``d`` and rational ``N``."""

    def __init__(self, N: Fraction, d: int, cap: int = DEFAULT_PRECISION_CAP):
        self.N = Fraction(N)
        self.d = d
        self.cap = cap
        if self.N < 0:
            raise DomainError("height threshold must be non-negative")
        self._enc: dict[int, RealEnclosure] = {}

    @property
    def exponent(self) -> Fraction:
        return self.d * self.N

    def enclosure(self, bits: int = 128) -> RealEnclosure:
        if bits not in self._enc:
            self._enc[bits] = exp_enclosure(self.exponent, bits)
        return self._enc[bits]

    @property
    def floor(self) -> int:
        return self.floor_of_multiple(1)

    @property
    def floor_sq(self) -> int:
        """``[e^{2dN}]``."""
        return _floor_exp(2 * self.exponent, 1)

    def floor_of_multiple(self, k: int | Fraction) -> int:
        """``[k e^{dN}]`` for a positive rational ``k``."""
        return _floor_exp(self.exponent, Fraction(k))

    def compare(self, enc: RealEnclosure, bits: int = 128) -> int | None:
        """-1 if ``enc`` lies below ``e^{dN}``, +1 above, ``None`` if it straddles."""
        t = self.enclosure(bits)
        if enc.upper < t.lower:
            return -1
        if enc.lower > t.upper:
            return 1
        if self.exponent == 0 and enc.is_exact() and enc.lower == 1:
            return 0
        return None


@lru_cache(maxsize=4096)
def _floor_exp(x: Fraction, k: Fraction) -> int:
    if x == 0:
        return math.floor(k)
    return certified_floor(lambda prec: real_eval(lambda: to_iv(k) * _iv_exp(x), prec))


def _iv_exp(x: Fraction):
    from mpmath import iv

    return iv.exp(to_iv(x))


def decide_mahler_le(c: tuple[int, ...], thr: HeightThreshold) -> HeightVerdict:
    """Decide ``M(p) <= e^{dN}`` for an irreducible primitive ``p`` of degree ``thr.d``."""
    d = len(c) - 1
    if thr.N == 0:
        return AT_MOST if is_kronecker(IntPolynomial(c)) else EXCEEDS
    E = thr.floor  # e^{dN} is irrational here, so integer comparisons are exact
    if d == 1:
        return AT_MOST if max(abs(c[0]), abs(c[1])) <= E else EXCEEDS
    if max(abs(c[0]), abs(c[-1])) > E:
        return EXCEEDS
    if sum(x * x for x in c) <= thr.floor_sq:
        return AT_MOST
    if d == 2:
        return _decide_quadratic(c, thr)
    v = _decide_graeffe(c, thr)
    if v is not None:
        return v
    bits = 53
    while True:
        enc = mahler_from_roots(c[-1], isolate(c, bits, thr.cap))
        cmp = thr.compare(enc, max(128, 2 * bits))
        if cmp is not None:
            return AT_MOST if cmp <= 0 else EXCEEDS
        if bits >= thr.cap:
            return HeightVerdict("Undecided", thr.cap)
        bits = min(thr.cap, 2 * bits)


def graeffe(c: Sequence[int]) -> tuple[int, ...]:
    """Root squaring: the result has roots ``alpha_i**2`` and Mahler measure ``M(p)**2``."""
    even = list(c[0::2])
    odd = list(c[1::2])
    e2 = _int_mul(even, even)
    o2 = [0] + _int_mul(odd, odd)
    n = len(c)
    out = [0] * n
    for i, x in enumerate(e2):
        out[i] += x
    for i, x in enumerate(o2[:n]):
        out[i] -= x
    sign = -1 if (n - 1) % 2 else 1
    return tuple(sign * x for x in out)


def _int_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _decide_graeffe(c: tuple[int, ...], thr: HeightThreshold, steps: int = 6) -> HeightVerdict | None:
    """Exact decision from ``max |q_i| / C(d,i) <= M(q) <= ||q||_2`` on Graeffe iterates.

    After ``k`` steps ``M(q) = M(p)**(2**k)`` is compared with ``e^{2^k d N}``;
    the threshold is transcendental, so integer comparisons with floors are exact.
    """
    d = len(c) - 1
    q = tuple(c)
    x = thr.exponent
    for k in range(1, steps + 1):
        q = graeffe(q)
        x = 2 * x
        if sum(v * v for v in q) <= _floor_exp(2 * x, Fraction(1)):
            return AT_MOST
        if any(abs(v) > _floor_exp(x, Fraction(math.comb(d, i))) for i, v in enumerate(q)):
            return EXCEEDS
    return None


def _decide_quadratic(c: tuple[int, ...], thr: HeightThreshold) -> HeightVerdict:
    disc = c[1] * c[1] - 4 * c[0] * c[2]
    if disc < 0:
        return AT_MOST  # M = max(a, c) already tested
    b = abs(c[1])
    bits = 128
    while True:
        t = thr.enclosure(bits)
        lo, hi = 2 * t.lower - b, 2 * t.upper - b
        # the large root term (b + sqrt(disc)) / 2 against e^{dN}
        if lo >= 0 and disc <= lo * lo:
            return AT_MOST
        if hi < 0 or disc > hi * hi:
            return EXCEEDS
        if bits >= thr.cap:
            return HeightVerdict("Undecided", thr.cap)
        bits = min(thr.cap, 2 * bits)


def height_le(a, threshold, mode: str = "log", cap: int = DEFAULT_PRECISION_CAP) -> HeightVerdict:
    """Decide ``h(alpha) <= N`` (``mode='log'``) or ``usual height <= H`` (``mode='usual'``)."""
    p = _minpoly_of(a)
    if mode == "usual":
        return AT_MOST if usual_height(p) <= int(threshold) else EXCEEDS
    if mode != "log":
        raise DomainError(f"unknown height mode {mode!r}")
    N = Fraction(threshold)
    if N < 0:
        return EXCEEDS
    return decide_mahler_le(p.coeffs, HeightThreshold(N, p.degree, cap))


# ---------------------------------------------------------------------------
# height inequalities


@dataclass(frozen=True)
class InequalityVerdict:
    name: str
    holds: bool | None  # None means undecided
    method: str
    detail: str = ""


@dataclass
class HeightInequalityReport:
    samples: list[list[InequalityVerdict]] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(v.holds for s in self.samples for v in s)

    @property
    def undecided(self) -> list[tuple[int, InequalityVerdict]]:
        return [(i, v) for i, s in enumerate(self.samples) for v in s if v.holds is None]

    @property
    def failures(self) -> list[tuple[int, InequalityVerdict]]:
        return [(i, v) for i, s in enumerate(self.samples) for v in s if v.holds is False]

    def counts(self) -> dict[str, int]:
        flat = [v for s in self.samples for v in s]
        return {"checks": len(flat), "hold": sum(1 for v in flat if v.holds),
                "fail": sum(1 for v in flat if v.holds is False),
                "undecided": sum(1 for v in flat if v.holds is None)}


def _field_degree(x: NumberFieldElement) -> int:
    return x.generator.degree


def _den(x: NumberFieldElement, n: int) -> int:
    """Finite-place contribution ``a_0(x)^{n / deg x}`` to ``M(x)^{n / deg x}``."""
    p = nf_minpoly(x)
    return p.leading ** (n // p.degree)


def _embedded(x: NumberFieldElement):
    """Embedding enclosures of ``x`` indexed consistently with the generator's conjugates."""
    gen = x.generator
    conjs = [None] if gen.degree == 1 else gen.conjugates()

    def at(j: int, bits: int) -> BallComplex:
        if gen.degree == 1:
            return BallComplex.exact(x.coords[0], 0, bits)
        g = conjs[j].ball(bits)
        return ball_polyval(x.coords, BallComplex(g.re, g.im, g.rad, max(g.prec, bits) + 16))

    return at, len(conjs)


def _status(x: NumberFieldElement, j: int, at, cap: int) -> int:
    if x.is_rational():
        v = abs(x.rational_value())
        return (v > 1) - (v < 1)
    return modulus_status(nf_minpoly(x), lambda bits: at(j, bits), cap)


def _embedding_le(left: Callable[[int], BallComplex], factors: Sequence[Callable[[int], BallComplex]],
                  scale: int, equal: Callable[[], bool], cap: int) -> bool | None:
    """Certify ``max(1, |left|) <= scale * prod max(1, |f|)`` at one embedding."""
    bits = 53
    checked_equal = False
    while True:
        lz = left(bits)
        fz = [f(bits) for f in factors]
        ru_lo = Fraction(scale)
        ru_hi = Fraction(scale)
        for z in fz:
            ru_lo *= max(Fraction(1), z.abs_lower())
            ru_hi *= max(Fraction(1), z.abs_upper())
        if max(Fraction(1), lz.abs_upper()) <= ru_lo:
            return True
        if max(Fraction(1), lz.abs_lower()) > ru_hi:
            return False
        if not checked_equal:
            checked_equal = True
            if equal():
                return True
        if bits >= cap:
            return None
        bits = min(cap, 2 * bits)


def _log_le_direct(left: Callable[[int], RealEnclosure], right: Callable[[int], RealEnclosure],
                   attempts: int = 2) -> bool | None:
    prec = 64
    for _ in range(attempts):
        a, b = left(prec), right(prec)
        if a.upper <= b.lower:
            return True
        if a.lower > b.upper:
            return False
        prec *= 2
    return None


def _h(x, prec: int) -> RealEnclosure:
    return abs_log_height(x, Fraction(1, 1 << prec))


def _rational_mh(x: NumberFieldElement) -> int:
    q = x.rational_value()
    return max(abs(q.numerator), q.denominator)


def check_product(xs: Sequence[NumberFieldElement], cap: int = DEFAULT_PRECISION_CAP) -> InequalityVerdict:
    """``h(x_1 ... x_k) <= h(x_1) + ... + h(x_k)``."""
    prod = xs[0]
    for y in xs[1:]:
        prod = prod * y
    name = "product"
    if all(x.is_rational() for x in xs):
        left = _rational_mh(prod)
        right = math.prod(_rational_mh(x) for x in xs)
        return InequalityVerdict(name, left <= right, "exact-integer", f"{left} <= {right}")
    direct = _log_le_direct(lambda p: _h(prod, p), lambda p: _sum_enc([_h(x, p) for x in xs]))
    if direct is not None:
        return InequalityVerdict(name, direct, "enclosure")
    # place by place: finite part exact, each embedding decided by modulus classification
    n = _field_degree(xs[0])
    den_left, den_right = _den(prod, n), math.prod(_den(x, n) for x in xs)
    if den_left > den_right:
        return InequalityVerdict(name, False, "places", "finite part")
    at_prod, count = _embedded(prod)
    ats = [_embedded(x)[0] for x in xs]
    for j in range(count):
        # |s(x_1 ... x_k)| = prod |s(x_i)|, so both sides agree exactly when all
        # factors lie on one side of the unit circle; otherwise the gap is strict
        def equal(j=j):
            statuses = [_status(x, j, at, cap) for x, at in zip(xs, ats)]
            return all(t >= 0 for t in statuses) or all(t <= 0 for t in statuses)

        ok = _embedding_le(lambda b, j=j: at_prod(j, b), [lambda b, at=at, j=j: at(j, b) for at in ats],
                           1, equal, cap)
        if ok is not True:
            return InequalityVerdict(name, ok, "places", f"embedding {j}")
    return InequalityVerdict(name, True, "places")


def check_sum(xs: Sequence[NumberFieldElement], cap: int = DEFAULT_PRECISION_CAP) -> InequalityVerdict:
    """``h(x_1 + ... + x_n) <= h(x_1) + ... + h(x_n) + log n``."""
    n_terms = len(xs)
    total = xs[0]
    for y in xs[1:]:
        total = total + y
    name = "sum"
    if all(x.is_rational() for x in xs):
        left = _rational_mh(total)
        right = n_terms * math.prod(_rational_mh(x) for x in xs)
        return InequalityVerdict(name, left <= right, "exact-integer", f"{left} <= {right}")
    direct = _log_le_direct(lambda p: _h(total, p),
                            lambda p: _sum_enc([_h(x, p) for x in xs] + [log_of_int(n_terms, p + 8)]))
    if direct is not None:
        return InequalityVerdict(name, direct, "enclosure")
    n = _field_degree(xs[0])
    if _den(total, n) > math.prod(_den(x, n) for x in xs):
        return InequalityVerdict(name, False, "places", "finite part")
    at_total, count = _embedded(total)
    ats = [_embedded(x)[0] for x in xs]
    all_equal = all(x.coords == xs[0].coords for x in xs)
    for j in range(count):
        # equality at an embedding forces n = 1 or equal summands on the unit circle
        def equal(j=j):
            return n_terms == 1 or (all_equal and _status(xs[0], j, ats[0], cap) == 0)

        ok = _embedding_le(lambda b, j=j: at_total(j, b), [lambda b, at=at, j=j: at(j, b) for at in ats],
                           n_terms, equal, cap)
        if ok is not True:
            return InequalityVerdict(name, ok, "places", f"embedding {j}")
    return InequalityVerdict(name, True, "places")


def check_sandwich(x: NumberFieldElement, cap: int = DEFAULT_PRECISION_CAP) -> list[InequalityVerdict]:
    """``(1/d) log H - ((d-1)/d) log 2 <= h <= (1/d) log H + (1/2d) log(d+1)``.

    Exponentiated: ``H <= 2^{d-1} M`` and ``M^2 <= (d+1) H^2`` with ``H`` the usual height.
    """
    p = nf_minpoly(x)
    d = p.degree
    H = usual_height(p)
    if d == 1:
        M = max(abs(p.coeffs[0]), abs(p.coeffs[1]))
        return [InequalityVerdict("usual-lower", H <= M, "exact-integer"),
                InequalityVerdict("usual-upper", M * M <= 2 * H * H, "exact-integer")]
    out = []
    for name, ok in (("usual-lower", lambda m: H <= (1 << (d - 1)) * m.lower),
                     ("usual-upper", lambda m: m.upper * m.upper <= (d + 1) * H * H)):
        target = Fraction(1, 1 << 20)
        verdict = None
        while target > Fraction(1, 1 << max(64, cap // 2)):
            m = mahler_measure(p, target, cap)
            if ok(m):
                verdict = InequalityVerdict(name, True, "enclosure")
                break
            target /= 1 << 16
        out.append(verdict or InequalityVerdict(name, None, "enclosure", "undecided at cap"))
    return out


def _sum_enc(encs: Sequence[RealEnclosure]) -> RealEnclosure:
    total = RealEnclosure.exact(0)
    for e in encs:
        total = total + e
    return total


def check_height_inequalities(samples: Iterable[Sequence[NumberFieldElement]],
                              cap: int = DEFAULT_PRECISION_CAP) -> HeightInequalityReport:
    """Per-sample verdicts for the product, sum and usual-height inequalities.

    Each sample is a tuple of elements of one number field.  Comparisons are
    first tried on enclosures; when those straddle (equality is common, for
    example ``h(x^2) = 2 h(x)``) the inequality is certified place by place:
    the finite places through exact leading coefficients and each complex
    embedding through an exact classification of moduli against 1.
    """
    report = HeightInequalityReport()
    for sample in samples:
        xs = list(sample)
        verdicts = []
        if len(xs) >= 2:
            verdicts.append(check_product(xs, cap))
        verdicts.append(check_sum(xs, cap))
        for x in xs:
            verdicts.extend(check_sandwich(x, cap))
        report.samples.append(verdicts)
    return report
