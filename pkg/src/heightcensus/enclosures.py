"""Certified real and complex enclosures.

Two carriers live here:

* :class:`RealEnclosure` -- a closed interval with exact rational endpoints.
  Transcendental constants (``exp``, ``log``, ``pi``) are produced by
  ``mpmath.iv`` at a requested working precision and converted to exact
  rationals endpoint by endpoint, so every downstream comparison is exact.
* :class:`BallComplex` -- a closed disk with a dyadic-rational centre and a
  rational radius.  Arithmetic rounds the centre to ``prec`` significant bits
  and pushes the rounding error into the radius.
"""

from __future__ import annotations

import math
import threading
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from mpmath import iv, libmp

from .errors import CertificationError

Rational = Fraction | int

DEFAULT_START_PREC = 64
DEFAULT_PRECISION_CAP = 4096


def as_fraction(x: Rational | str) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def frac_str(q: Rational) -> str:
    q = as_fraction(q)
    return f"{q.numerator}/{q.denominator}"


def precision_schedule(start: int = DEFAULT_START_PREC, cap: int = DEFAULT_PRECISION_CAP):
    prec = max(start, 2)
    while True:
        yield min(prec, cap)
        if prec >= cap:
            return
        prec *= 2


# ---------------------------------------------------------------------------
# exact square-root bounds


def isqrt_floor(n: int) -> int:
    return math.isqrt(n)


def sqrt_bounds(q: Rational, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Rational ``lo <= sqrt(q) <= hi`` with relative gap about ``2**-bits``."""
    q = as_fraction(q)
    if q < 0:
        raise ValueError("sqrt of a negative rational")
    if q == 0:
        return Fraction(0), Fraction(0)
    n, d = q.numerator, q.denominator
    # sqrt(n/d) = sqrt(n*d)/d
    nd = n * d
    extra = max(0, bits - nd.bit_length() // 2 + 2)
    scaled = nd << (2 * extra)
    s = math.isqrt(scaled)
    lo = Fraction(s, d << extra)
    hi = lo if s * s == scaled else Fraction(s + 1, d << extra)
    return lo, hi


def sqrt_upper(q: Rational, bits: int = 64) -> Fraction:
    return sqrt_bounds(q, bits)[1]


def sqrt_lower(q: Rational, bits: int = 64) -> Fraction:
    return sqrt_bounds(q, bits)[0]


# ---------------------------------------------------------------------------
# real enclosures


@dataclass(frozen=True)
class RealEnclosure:
    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lower", as_fraction(self.lower))
        object.__setattr__(self, "upper", as_fraction(self.upper))
        if self.lower > self.upper:
            raise ValueError(f"empty enclosure [{self.lower}, {self.upper}]")

    @classmethod
    def exact(cls, q: Rational) -> "RealEnclosure":
        q = as_fraction(q)
        return cls(q, q)

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    @property
    def mid(self) -> Fraction:
        return (self.lower + self.upper) / 2

    def is_exact(self) -> bool:
        return self.lower == self.upper

    def contains(self, x: Rational) -> bool:
        return self.lower <= x <= self.upper

    def contains_enclosure(self, other: "RealEnclosure") -> bool:
        return self.lower <= other.lower and other.upper <= self.upper

    def overlaps(self, other: "RealEnclosure") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def __add__(self, other):
        other = _coerce(other)
        return RealEnclosure(self.lower + other.lower, self.upper + other.upper)

    __radd__ = __add__

    def __neg__(self):
        return RealEnclosure(-self.upper, -self.lower)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        products = [self.lower * other.lower, self.lower * other.upper,
                    self.upper * other.lower, self.upper * other.upper]
        return RealEnclosure(min(products), max(products))

    __rmul__ = __mul__

    def __float__(self):
        return float(self.mid)

    def floor_if_decided(self) -> int | None:
        lo, hi = math.floor(self.lower), math.floor(self.upper)
        return lo if lo == hi else None

    def to_json(self) -> dict:
        return {"lo": frac_str(self.lower), "hi": frac_str(self.upper)}

    @classmethod
    def from_json(cls, obj: dict) -> "RealEnclosure":
        return cls(Fraction(obj["lo"]), Fraction(obj["hi"]))

    def __repr__(self):
        if self.is_exact():
            return f"RealEnclosure({self.lower})"
        return f"RealEnclosure([{float(self.lower):.12g}, {float(self.upper):.12g}])"


def _coerce(x) -> RealEnclosure:
    if isinstance(x, RealEnclosure):
        return x
    return RealEnclosure.exact(as_fraction(x))


def _raw_to_fraction(raw) -> Fraction:
    p, q = libmp.to_rational(raw)
    return Fraction(int(p), int(q))


def from_iv(v) -> RealEnclosure:
    """Convert an ``mpmath.iv`` interval to exact rational endpoints."""
    if isinstance(v, (int, Fraction)):
        return RealEnclosure.exact(v)
    a, b = v._mpi_
    if a == libmp.fninf or b == libmp.finf or a == libmp.fnan or b == libmp.fnan:
        raise CertificationError("unbounded interval from interval arithmetic")
    return RealEnclosure(_raw_to_fraction(a), _raw_to_fraction(b))


def to_iv(x):
    """Outward-rounded ``mpmath.iv`` interval containing ``x`` at the current iv precision."""
    if isinstance(x, RealEnclosure):
        lo = iv.mpf(x.lower.numerator) / x.lower.denominator
        if x.is_exact():
            return lo
        hi = iv.mpf(x.upper.numerator) / x.upper.denominator
        return iv.mpf([lo.a, hi.b])
    x = as_fraction(x)
    if x.denominator == 1:
        return iv.mpf(x.numerator)
    return iv.mpf(x.numerator) / x.denominator


_IV_LOCK = threading.RLock()


@contextmanager
def iv_precision(prec: int):
    """Temporarily set the interval context precision (serialized by a lock)."""
    with _IV_LOCK:
        saved = iv.prec
        iv.prec = prec
        try:
            yield
        finally:
            iv.prec = saved


def real_eval(fn: Callable[[], object], prec: int) -> RealEnclosure:
    """Run ``fn`` at ``prec`` bits of interval precision and return its enclosure."""
    with iv_precision(prec):
        return from_iv(fn())


def refine(make: Callable[[int], RealEnclosure], width: Rational | None = None,
           start: int = DEFAULT_START_PREC, cap: int = DEFAULT_PRECISION_CAP,
           accept: Callable[[RealEnclosure], bool] | None = None) -> RealEnclosure:
    """Evaluate ``make(prec)`` along the doubling schedule until accepted.

    Acceptance is ``enc.width <= width`` unless a custom predicate is given.
    """
    if accept is None:
        target = as_fraction(width if width is not None else Fraction(1, 1 << 40))
        accept = lambda enc: enc.width <= target  # noqa: E731
    last = None
    for prec in precision_schedule(start, cap):
        last = make(prec)
        if accept(last):
            return last
    raise CertificationError(f"enclosure not accepted at precision cap {cap} (last {last!r})")


def certified_floor(make: Callable[[int], RealEnclosure], start: int = DEFAULT_START_PREC,
                    extra_cap: int = DEFAULT_PRECISION_CAP) -> int:
    """Exact integer part of a real known through enclosures.

    The working precision starts above the magnitude of the value so huge
    quantities such as ``2 * (1 + e**3) ** 490`` are handled; ``extra_cap``
    bounds the bits spent beyond that magnitude.
    """
    probe = make(start)
    magnitude = max(abs(probe.lower), abs(probe.upper))
    bits = magnitude.numerator.bit_length() - magnitude.denominator.bit_length() + 1
    base = max(start, bits + 32)
    for prec in precision_schedule(base, base + extra_cap):
        enc = make(prec)
        value = enc.floor_if_decided()
        if value is not None:
            return value
    raise CertificationError("integer part undecided at precision cap")


def decide_less(left: Callable[[int], RealEnclosure], right: Callable[[int], RealEnclosure],
                strict: bool = True, start: int = DEFAULT_START_PREC,
                cap: int = DEFAULT_PRECISION_CAP) -> bool | None:
    """Certified ``left < right`` (or ``<=``); ``None`` when still straddling at the cap."""
    for prec in precision_schedule(start, cap):
        a, b = left(prec), right(prec)
        if a.upper < b.lower or (not strict and a.upper <= b.lower):
            return True
        if a.lower > b.upper or (strict and a.lower >= b.upper and a.is_exact() and b.is_exact()):
            return False
        if not strict and a.lower > b.upper:
            return False
        if a.is_exact() and b.is_exact():
            return a.lower < b.lower if strict else a.lower <= b.lower
    return None


# ---------------------------------------------------------------------------
# standard transcendental enclosures


def exp_enclosure(x: Rational | RealEnclosure, prec: int = 128) -> RealEnclosure:
    if not isinstance(x, RealEnclosure) and as_fraction(x) == 0:
        return RealEnclosure.exact(1)
    return real_eval(lambda: iv.exp(to_iv(x)), prec)


def log_enclosure(x: Rational | RealEnclosure, prec: int = 128) -> RealEnclosure:
    enc = _coerce(x)
    if enc.lower <= 0:
        raise ValueError("log of a non-positive enclosure")
    if enc.is_exact() and enc.lower == 1:
        return RealEnclosure.exact(0)
    return real_eval(lambda: iv.log(to_iv(enc)), prec)


def log_of_int(n: int, prec: int = 128) -> RealEnclosure:
    """log of a positive (possibly enormous) integer."""
    if n <= 0:
        raise ValueError("log of a non-positive integer")
    if n == 1:
        return RealEnclosure.exact(0)
    shift = max(0, n.bit_length() - prec - 8)
    lo, hi = n >> shift, (n >> shift) + (1 if (n >> shift) << shift != n else 0)

    def body():
        ln2 = iv.log(iv.mpf(2))
        a = iv.log(iv.mpf(lo)) + shift * ln2
        b = iv.log(iv.mpf(hi)) + shift * ln2
        return iv.mpf([a.a, b.b])

    return real_eval(body, prec)


def pi_enclosure(prec: int = 128) -> RealEnclosure:
    return real_eval(lambda: iv.pi, prec)


def zeta_enclosure(s: int, cutoff: int = 16, em_terms: int = 12) -> RealEnclosure:
    """Certified enclosure of zeta(s) for an integer s >= 2.

    Partial sum up to ``cutoff - 1`` plus the Euler-Maclaurin tail at
    ``cutoff``; for real s the remainder is bounded by the first omitted
    correction term.  Everything is exact rational arithmetic.
    """
    if s < 2:
        raise ValueError("zeta enclosure needs an integer s >= 2")
    N = cutoff
    total = sum(Fraction(1, n ** s) for n in range(1, N))
    total += Fraction(1, (s - 1) * N ** (s - 1)) + Fraction(1, 2 * N ** s)
    rising = Fraction(s)  # s (s+1) ... (s + 2j - 2)
    term = Fraction(0)
    for j in range(1, em_terms + 2):
        if j > 1:
            rising *= (s + 2 * j - 3) * (s + 2 * j - 2)
        term = _bernoulli(2 * j) / math.factorial(2 * j) * rising / Fraction(N ** (s + 2 * j - 1))
        if j <= em_terms:
            total += term
    bound = abs(term)
    return RealEnclosure(total - bound, total + bound)


def _bernoulli(n: int) -> Fraction:
    # Akiyama-Tanigawa, exact; only small even n are requested
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return a[0]


# ---------------------------------------------------------------------------
# complex balls


def _round_rel(q: Fraction, prec: int) -> tuple[Fraction, Fraction]:
    """Round ``q`` to ``prec`` significant bits; return (rounded, |error|)."""
    if q == 0:
        return q, Fraction(0)
    n, d = q.numerator, q.denominator
    e = n.bit_length() - d.bit_length()
    shift = prec - e
    if shift >= 0:
        if d == 1 or (d & (d - 1) == 0 and d.bit_length() - 1 <= shift):
            return q, Fraction(0)
        num = n << shift
        m = (2 * num + d) // (2 * d)
        r = Fraction(m, 1 << shift)
    else:
        den = d << (-shift)
        m = (2 * n + den) // (2 * den)
        r = Fraction(m << (-shift))
    return r, abs(q - r)


def round_up(q: Fraction, bits: int = 30) -> Fraction:
    """Smallest dyadic with ``bits`` significant bits that is >= q (q >= 0)."""
    if q <= 0:
        return Fraction(0)
    n, d = q.numerator, q.denominator
    if d & (d - 1) == 0 and n.bit_length() <= bits:
        return q
    e = n.bit_length() - d.bit_length()
    shift = bits - e
    if shift >= 0:
        m = -((-n << shift) // d)
        return Fraction(m, 1 << shift)
    den = d << (-shift)
    m = -((-n) // den)
    return Fraction(m << (-shift))


@dataclass(frozen=True)
class BallComplex:
    """Closed disk ``{z : |z - (re + i im)| <= rad}``."""

    re: Fraction
    im: Fraction
    rad: Fraction
    prec: int = DEFAULT_START_PREC

    def __post_init__(self):
        if self.rad < 0:
            raise ValueError("negative radius")

    @classmethod
    def exact(cls, re: Rational, im: Rational = 0, prec: int = DEFAULT_START_PREC) -> "BallComplex":
        return cls(as_fraction(re), as_fraction(im), Fraction(0), prec)

    @classmethod
    def from_float_complex(cls, z: complex, rad: Rational = 0, prec: int = 53) -> "BallComplex":
        return cls(Fraction(z.real), Fraction(z.imag), as_fraction(rad), prec)

    @property
    def center(self) -> tuple[Fraction, Fraction]:
        return self.re, self.im

    def is_exact(self) -> bool:
        return self.rad == 0

    def is_real_exact(self) -> bool:
        return self.rad == 0 and self.im == 0

    def _finish(self, re: Fraction, im: Fraction, rad: Fraction, prec: int) -> "BallComplex":
        re, e1 = _round_rel(re, prec)
        im, e2 = _round_rel(im, prec)
        return BallComplex(re, im, round_up(rad + e1 + e2), prec)

    def _lift(self, other) -> "BallComplex":
        if isinstance(other, BallComplex):
            return other
        return BallComplex.exact(as_fraction(other), 0, self.prec)

    def __add__(self, other):
        o = self._lift(other)
        prec = min(self.prec, o.prec)
        return self._finish(self.re + o.re, self.im + o.im, self.rad + o.rad, prec)

    __radd__ = __add__

    def __neg__(self):
        return BallComplex(-self.re, -self.im, self.rad, self.prec)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        prec = min(self.prec, o.prec)
        re = self.re * o.re - self.im * o.im
        im = self.re * o.im + self.im * o.re
        rad = Fraction(0)
        if self.rad or o.rad:
            # |re| + |im| bounds the modulus and avoids a square root
            rad = (abs(self.re) + abs(self.im)) * o.rad + (abs(o.re) + abs(o.im)) * self.rad + self.rad * o.rad
        return self._finish(re, im, rad, prec)

    __rmul__ = __mul__

    def scale(self, q: Rational) -> "BallComplex":
        q = as_fraction(q)
        return self._finish(self.re * q, self.im * q, self.rad * abs(q), self.prec)

    def __pow__(self, k: int) -> "BallComplex":
        if k < 0:
            raise ValueError("negative power of a ball")
        result = BallComplex.exact(1, 0, self.prec)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def abs_mid_upper(self) -> Fraction:
        bits = max(40, self.prec + 8)
        return round_up(sqrt_upper(self.re * self.re + self.im * self.im, bits), bits)

    def abs_upper(self) -> Fraction:
        return self.abs_mid_upper() + self.rad

    def abs_lower(self) -> Fraction:
        lo = sqrt_lower(self.re * self.re + self.im * self.im, max(40, self.prec + 8)) - self.rad
        return max(lo, Fraction(0))

    def contains_point(self, re: Rational, im: Rational = 0) -> bool:
        dx, dy = as_fraction(re) - self.re, as_fraction(im) - self.im
        return dx * dx + dy * dy <= self.rad * self.rad

    def contains_ball(self, other: "BallComplex") -> bool:
        if other.rad > self.rad:
            return False
        dx, dy = other.re - self.re, other.im - self.im
        gap = self.rad - other.rad
        return dx * dx + dy * dy <= gap * gap

    def intersects(self, other: "BallComplex") -> bool:
        dx, dy = other.re - self.re, other.im - self.im
        s = self.rad + other.rad
        return dx * dx + dy * dy <= s * s

    def disjoint(self, other: "BallComplex") -> bool:
        return not self.intersects(other)

    def modulus(self) -> RealEnclosure:
        return RealEnclosure(self.abs_lower(), self.abs_upper())

    def real_part(self) -> RealEnclosure:
        return RealEnclosure(self.re - self.rad, self.re + self.rad)

    def imag_part(self) -> RealEnclosure:
        return RealEnclosure(self.im - self.rad, self.im + self.rad)

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def to_json(self) -> dict:
        return {"re": frac_str(self.re), "im": frac_str(self.im), "rad": frac_str(self.rad),
                "prec": self.prec}

    def __repr__(self):
        return f"BallComplex({self.to_complex():.12g} +/- {float(self.rad):.3g})"


def ball_polyval(coeffs: Iterable[Rational], z: BallComplex) -> BallComplex:
    """Horner evaluation of an ascending-coefficient rational polynomial on a ball."""
    coeffs = list(coeffs)
    acc = BallComplex.exact(0, 0, z.prec)
    for c in reversed(coeffs):
        acc = acc * z + as_fraction(c)
    return acc
