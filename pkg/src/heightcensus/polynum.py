"""Exact polynomial arithmetic over Z and Q, irreducibility, and number fields.

Coefficient sequences are ascending everywhere in code (``coeffs[i]`` is the
coefficient of ``X**i``); the one exception is the line-oriented text format
``d a_0 ... a_d`` which lists the leading coefficient first.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .enclosures import DEFAULT_PRECISION_CAP, BallComplex, RealEnclosure, ball_polyval
from .errors import CertificationError, DomainError
from .rootfind import isolate

# ---------------------------------------------------------------------------
# helpers on raw coefficient lists


def _strip(coeffs: Sequence) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _gcd_all(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, v)
        if g == 1:
            return 1
    return g


def q_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return list(_strip(out))


def q_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Division with remainder over Q for ascending coefficient lists."""
    b = list(_strip(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in _strip(a)]
    db, lb = len(b) - 1, Fraction(b[-1])
    if len(r) - 1 < db:
        return [], r
    q = [Fraction(0)] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] / lb
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] -= c * b[j]
    return list(_strip(q)), list(_strip(r[:db]))


def q_gcd(a: Sequence, b: Sequence) -> list:
    """Monic gcd over Q."""
    a, b = list(_strip(a)), list(_strip(b))
    while b:
        a, b = b, q_divmod(a, b)[1]
    if not a:
        return []
    lead = Fraction(a[-1])
    return [Fraction(x) / lead for x in a]


def q_derivative(a: Sequence) -> list:
    return list(_strip([i * a[i] for i in range(1, len(a))]))


def q_to_primitive_int(a: Sequence[Fraction]) -> tuple[int, ...]:
    """Clear denominators, divide by content, make the leading coefficient positive."""
    a = [Fraction(x) for x in _strip(a)]
    if not a:
        return ()
    den = 1
    for x in a:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in a]
    g = _gcd_all(abs(v) for v in ints)
    ints = [v // g for v in ints]
    if ints[-1] < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def int_eval(coeffs: Sequence[int], x: Fraction) -> Fraction:
    """Exact evaluation of an ascending coefficient list at a rational."""
    x = Fraction(x)
    n, d = x.numerator, x.denominator
    deg = len(coeffs) - 1
    if deg < 0:
        return Fraction(0)
    acc = 0
    dpow = 1
    for c in reversed(coeffs):
        acc = acc * n + c * dpow
        dpow *= d
    # acc = sum c_i n^i d^(deg-i) accumulated with a spare factor d
    return Fraction(acc, dpow // d)


@lru_cache(maxsize=4096)
def divisors(n: int) -> tuple[int, ...]:
    n = abs(n)
    if n == 0:
        return ()
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return tuple(small + large[::-1])


# ---------------------------------------------------------------------------
# integer and rational polynomials


@dataclass(frozen=True, order=False)
class IntPolynomial:
    """Integer polynomial with ascending coefficients; ``()`` is the zero polynomial."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = _strip(int(x) for x in self.coeffs)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def X(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @classmethod
    def from_leading_first(cls, coeffs: Sequence[int]) -> "IntPolynomial":
        return cls(tuple(reversed(list(coeffs))))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def content(self) -> int:
        return _gcd_all(abs(c) for c in self.coeffs)

    @property
    def primitive(self) -> bool:
        return bool(self.coeffs) and self.content == 1

    def leading_first(self) -> tuple[int, ...]:
        return tuple(reversed(self.coeffs))

    def sort_key(self) -> tuple:
        return (self.degree, self.leading_first())

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-x for x in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(tuple(other * x for x in self.coeffs))
        return IntPolynomial(tuple(q_mul(self.coeffs, other.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPolynomial":
        out = IntPolynomial((1,))
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        if isinstance(x, (int, Fraction)):
            return int_eval(self.coeffs, Fraction(x))
        if isinstance(x, BallComplex):
            return ball_polyval(self.coeffs, x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reversed(self) -> "IntPolynomial":
        """Coefficient reversal ``X**d p(1/X)`` (degree drops when p(0) = 0)."""
        return IntPolynomial(tuple(reversed(self.coeffs)))

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(q_derivative(self.coeffs)))

    def is_squarefree(self) -> bool:
        if self.degree <= 1:
            return True
        return len(q_gcd(self.coeffs, q_derivative(self.coeffs))) == 1

    def normalized(self) -> "IntPolynomial":
        """Primitive with positive leading coefficient."""
        return IntPolynomial(q_to_primitive_int(self.coeffs))

    def to_text(self) -> str:
        return " ".join(str(v) for v in (self.degree,) + self.leading_first())

    @classmethod
    def from_text(cls, line: str) -> "IntPolynomial":
        parts = line.split()
        if not parts:
            raise DomainError("empty polynomial line")
        d = int(parts[0])
        vals = [int(v) for v in parts[1:]]
        if len(vals) != d + 1:
            raise DomainError(f"degree {d} needs {d + 1} coefficients, got {len(vals)}")
        p = cls.from_leading_first(vals)
        if p.degree != d:
            raise DomainError(f"leading coefficient of '{line}' is zero")
        return p

    def __str__(self) -> str:
        return format_univariate(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({self})"


def format_univariate(coeffs: Sequence, var: str = "X") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and a == 1:
            body = mono
        else:
            body = f"{a}{mono}" if not isinstance(a, Fraction) or a.denominator == 1 else f"({a}){mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


@dataclass(frozen=True)
class RatPolynomial:
    """Rational polynomial ``numerator / denominator`` in lowest terms."""

    numerator: IntPolynomial
    denominator: int = 1

    def __post_init__(self):
        den = int(self.denominator)
        if den == 0:
            raise DomainError("zero denominator")
        num = self.numerator
        if den < 0:
            num, den = -num, -den
        g = math.gcd(num.content, den) if not num.is_zero() else den
        if g > 1:
            num = IntPolynomial(tuple(c // g for c in num.coeffs))
            den //= g
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @classmethod
    def from_fractions(cls, coeffs: Sequence) -> "RatPolynomial":
        fr = [Fraction(x) for x in coeffs]
        den = 1
        for x in fr:
            den = den * x.denominator // math.gcd(den, x.denominator)
        return cls(IntPolynomial(tuple(int(x * den) for x in fr)), den)

    @classmethod
    def from_int(cls, p: IntPolynomial) -> "RatPolynomial":
        return cls(p, 1)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.denominator) for c in self.numerator.coeffs)

    @property
    def degree(self) -> int:
        return self.numerator.degree

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __add__(self, other) -> "RatPolynomial":
        other = _as_rat(other)
        a = self.numerator * other.denominator
        b = other.numerator * self.denominator
        return RatPolynomial(a + b, self.denominator * other.denominator)

    __radd__ = __add__

    def __neg__(self) -> "RatPolynomial":
        return RatPolynomial(-self.numerator, self.denominator)

    def __sub__(self, other) -> "RatPolynomial":
        return self + (-_as_rat(other))

    def __mul__(self, other) -> "RatPolynomial":
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return RatPolynomial(self.numerator * q.numerator, self.denominator * q.denominator)
        other = _as_rat(other)
        return RatPolynomial(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RatPolynomial":
        return RatPolynomial(self.numerator ** k, self.denominator ** k)

    def __call__(self, x):
        if isinstance(x, (int, Fraction)):
            return int_eval(self.numerator.coeffs, Fraction(x)) / self.denominator
        if isinstance(x, BallComplex):
            return ball_polyval(self.numerator.coeffs, x).scale(Fraction(1, self.denominator))
        raise TypeError("evaluate at a rational or a BallComplex; use nf_reduce for number fields")

    def __str__(self) -> str:
        if self.denominator == 1:
            return str(self.numerator)
        return f"({self.numerator})/{self.denominator}"


def _as_rat(p) -> RatPolynomial:
    if isinstance(p, RatPolynomial):
        return p
    if isinstance(p, IntPolynomial):
        return RatPolynomial(p, 1)
    if isinstance(p, (int, Fraction)):
        return RatPolynomial.from_fractions([p])
    raise TypeError(f"cannot coerce {type(p).__name__} to RatPolynomial")


def content_primitive(p: IntPolynomial) -> tuple[int, IntPolynomial]:
    """Split ``p`` into its positive content and primitive part (sign kept)."""
    if p.is_zero():
        raise DomainError("content of the zero polynomial")
    c = p.content
    return c, IntPolynomial(tuple(x // c for x in p.coeffs))


def poly_derivative(p: RatPolynomial | IntPolynomial, order: int = 1) -> RatPolynomial:
    if order < 0:
        raise DomainError("derivative order must be non-negative")
    p = _as_rat(p)
    coeffs = list(p.numerator.coeffs)
    for _ in range(order):
        coeffs = [i * coeffs[i] for i in range(1, len(coeffs))]
    return RatPolynomial(IntPolynomial(tuple(coeffs)), p.denominator)


# ---------------------------------------------------------------------------
# irreducibility


def is_two_eisenstein(p: IntPolynomial) -> bool:
    """Eisenstein at 2: odd leading coefficient, other coefficients even, 4 not dividing the constant."""
    if p.degree < 1:
        return False
    c = p.coeffs
    return c[-1] % 2 == 1 and all(x % 2 == 0 for x in c[:-1]) and c[0] % 4 != 0


def is_irreducible_over_Z(p: IntPolynomial) -> bool:
    if p.degree < 1:
        raise DomainError("irreducibility needs degree >= 1")
    if not p.primitive:
        raise DomainError("irreducibility test expects a primitive polynomial")
    return irreducible_coeffs(p.coeffs)


@lru_cache(maxsize=1 << 16)
def irreducible_coeffs(c: tuple[int, ...]) -> bool:
    """Irreducibility over Z of a primitive polynomial given by ascending coefficients."""
    d = len(c) - 1
    if d == 1:
        return True
    if c[0] == 0:
        return False
    if d == 2:
        disc = c[1] * c[1] - 4 * c[0] * c[2]
        return disc < 0 or math.isqrt(disc) ** 2 != disc
    if _has_rational_root(c):
        return False
    if d == 3:
        return True
    if len(q_gcd(c, q_derivative(c))) > 1:
        return False
    return not _has_factor_via_roots(c)


def _has_rational_root(c: tuple[int, ...]) -> bool:
    a0, ad = c[0], c[-1]
    for q in divisors(ad):
        for p in divisors(a0):
            if math.gcd(p, q) != 1:
                continue
            for s in (p, -p):
                if int_eval(c, Fraction(s, q)) == 0:
                    return True
    return False


def _integer_in(lo: Fraction, hi: Fraction) -> list[int] | None:
    """Integers inside [lo, hi]; ``None`` when the interval is too wide to be useful."""
    a, b = math.ceil(lo), math.floor(hi)
    if b - a > 1:
        return None
    return list(range(a, b + 1))


def _has_factor_via_roots(c: tuple[int, ...], bits: int = 53,
                          cap: int = DEFAULT_PRECISION_CAP) -> bool:
    """Search every degree split: a factor is ``b * prod_{i in S} (X - alpha_i)`` with ``b | a_d``.

    Certified root disks give enclosures of the candidate's coefficients; a
    subset survives only if every enclosure contains an integer, and survivors
    are confirmed by exact division.
    """
    d = len(c) - 1
    while True:
        roots = isolate(c, bits, cap)
        conj = _conjugate_map(roots)
        undecided = False
        for k in range(2, d // 2 + 1):
            for subset in combinations(range(d), k):
                sset = set(subset)
                if any(conj[i] not in sset for i in subset):
                    continue
                sym = _elementary_symmetric([roots[i] for i in subset])
                for b in divisors(c[-1]):
                    cand = []
                    ok = True
                    for j in range(k + 1):
                        ball = sym[k - j].scale(b * (-1) ** (k - j))
                        if ball.imag_part().lower > 0 or ball.imag_part().upper < 0:
                            ok = False
                            break
                        ints = _integer_in(*_re_bounds(ball))
                        if ints is None:
                            undecided = True
                            ok = False
                            break
                        if len(ints) != 1:
                            ok = False
                            if len(ints) > 1:
                                undecided = True
                            break
                        cand.append(ints[0])
                    if ok and cand[-1] != 0:
                        _, rem = q_divmod(c, cand)
                        if not rem:
                            return True
        if not undecided:
            return False
        if bits >= cap:
            raise CertificationError("irreducibility undecided at precision cap", undecided=[c])
        bits = min(cap, 2 * bits)


def _re_bounds(ball: BallComplex) -> tuple[Fraction, Fraction]:
    enc = ball.real_part()
    return enc.lower, enc.upper


def _conjugate_map(roots: Sequence[BallComplex]) -> list[int]:
    out = []
    for r in roots:
        if r.im == 0:
            out.append(roots.index(r))
            continue
        out.append(next(j for j, s in enumerate(roots) if s.re == r.re and s.im == -r.im))
    return out


def _elementary_symmetric(balls: Sequence[BallComplex]) -> list[BallComplex]:
    """``e_0 .. e_k`` of the given balls (``e_0 = 1``)."""
    prec = max(b.prec for b in balls) + 16
    e = [BallComplex.exact(1, 0, prec)]
    for z in balls:
        new = e + [BallComplex.exact(0, 0, prec)]
        for j in range(len(e), 0, -1):
            new[j] = new[j] + e[j - 1] * z
        e = new
    return e


# ---------------------------------------------------------------------------
# dyadic rationals


@dataclass(frozen=True)
class DyadicRational:
    """``mantissa * 2**exponent`` with an odd mantissa (or the zero value)."""

    mantissa: int
    exponent: int = 0

    def __post_init__(self):
        m, e = int(self.mantissa), int(self.exponent)
        if m == 0:
            e = 0
        else:
            tz = (m & -m).bit_length() - 1
            m >>= tz
            e += tz
        object.__setattr__(self, "mantissa", m)
        object.__setattr__(self, "exponent", e)

    @classmethod
    def from_fraction(cls, q: Fraction | int) -> "DyadicRational":
        q = Fraction(q)
        den = q.denominator
        if den & (den - 1):
            raise DomainError(f"{q} is not a dyadic rational")
        return cls(q.numerator, -(den.bit_length() - 1))

    def to_fraction(self) -> Fraction:
        if self.exponent >= 0:
            return Fraction(self.mantissa << self.exponent)
        return Fraction(self.mantissa, 1 << -self.exponent)

    @property
    def denominator_log2(self) -> int:
        return max(0, -self.exponent)

    def __add__(self, other: "DyadicRational") -> "DyadicRational":
        return DyadicRational.from_fraction(self.to_fraction() + other.to_fraction())

    def __mul__(self, other: "DyadicRational") -> "DyadicRational":
        return DyadicRational(self.mantissa * other.mantissa, self.exponent + other.exponent)

    def __neg__(self) -> "DyadicRational":
        return DyadicRational(-self.mantissa, self.exponent)

    def __str__(self) -> str:
        if self.exponent >= 0:
            return str(self.mantissa << self.exponent)
        return f"{self.mantissa}/2^{-self.exponent}"


# ---------------------------------------------------------------------------
# algebraic numbers and number fields


@dataclass(frozen=True)
class AlgebraicNumber:
    """A root of an irreducible primitive integer polynomial, selected by an isolating disk."""

    minpoly: IntPolynomial
    root_box: BallComplex

    def __post_init__(self):
        p = self.minpoly
        if p.degree < 1 or not p.primitive or p.leading <= 0:
            raise DomainError(f"minimal polynomial {p} must be primitive with positive leading coefficient")

    @classmethod
    def from_rational(cls, q: Fraction | int) -> "AlgebraicNumber":
        q = Fraction(q)
        return cls(IntPolynomial((-q.numerator, q.denominator)), BallComplex.exact(q))

    @classmethod
    def roots_of(cls, p: IntPolynomial, bits: int = 53) -> list["AlgebraicNumber"]:
        """All roots of an irreducible ``p`` (normalised first), in canonical order."""
        p = p.normalized()
        return [cls(p, box) for box in isolate(p.coeffs, bits)]

    @classmethod
    def near(cls, p: IntPolynomial, z: complex, bits: int = 53) -> "AlgebraicNumber":
        """The root of ``p`` closest to the complex approximation ``z``."""
        roots = cls.roots_of(p, bits)
        return min(roots, key=lambda a: abs(a.root_box.to_complex() - z))

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    def is_rational(self) -> bool:
        return self.degree == 1

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise DomainError("not a rational number")
        c = self.minpoly.coeffs
        return Fraction(-c[0], c[1])

    def is_real(self) -> bool:
        """Certified: an isolating disk centred on the axis holds a real root."""
        return self.root_box.im == 0

    def ball(self, bits: int = 53, cap: int = DEFAULT_PRECISION_CAP) -> BallComplex:
        """An enclosure of this root with disks certified at ``bits`` bits or more."""
        if self.is_rational():
            q = self.rational_value()
            return BallComplex.exact(q, 0, bits)
        if self.root_box.prec >= bits:
            return self.root_box
        return self.refine(bits, cap).root_box

    def refine(self, bits: int, cap: int = DEFAULT_PRECISION_CAP) -> "AlgebraicNumber":
        b = max(bits, 53)
        while True:
            boxes = isolate(self.minpoly.coeffs, b, cap)
            inside = [x for x in boxes if self.root_box.contains_ball(x)]
            if len(inside) == 1:
                return AlgebraicNumber(self.minpoly, inside[0])
            hits = [x for x in boxes if self.root_box.intersects(x)]
            if len(hits) == 1:
                # the box holds exactly one root and only this disk can reach it
                return AlgebraicNumber(self.minpoly, hits[0])
            if b >= cap:
                raise CertificationError("could not refine algebraic number", undecided=[self])
            b = min(cap, 2 * b)

    def conjugates(self) -> list["AlgebraicNumber"]:
        return AlgebraicNumber.roots_of(self.minpoly, max(53, self.root_box.prec))

    def sort_key(self) -> tuple:
        return self.minpoly.sort_key() + ((self.root_box.re, self.root_box.im),)

    def to_json(self) -> dict:
        return {"minpoly": self.minpoly.to_text(), "box": self.root_box.to_json()}

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.rational_value())
        z = self.root_box.to_complex()
        return f"root of {self.minpoly} near {z.real:.10g}{z.imag:+.10g}i"


@dataclass(frozen=True)
class NumberFieldElement:
    """Element of Q(alpha) in the power basis ``1, alpha, ..., alpha**(d-1)``."""

    generator: AlgebraicNumber
    coords: tuple[Fraction, ...] = field(default=())

    def __post_init__(self):
        d = self.generator.degree
        c = tuple(Fraction(x) for x in self.coords)
        if len(c) < d:
            c = c + (Fraction(0),) * (d - len(c))
        if len(c) != d:
            raise DomainError(f"expected {d} coordinates, got {len(c)}")
        object.__setattr__(self, "coords", c)

    @classmethod
    def rational(cls, generator: AlgebraicNumber, q: Fraction | int) -> "NumberFieldElement":
        return cls(generator, (Fraction(q),))

    @classmethod
    def gen(cls, generator: AlgebraicNumber) -> "NumberFieldElement":
        if generator.degree == 1:
            return cls(generator, (generator.rational_value(),))
        return cls(generator, (0, 1))

    @property
    def degree(self) -> int:
        return self.generator.degree

    def _same(self, other: "NumberFieldElement") -> None:
        if other.generator.minpoly != self.generator.minpoly:
            raise DomainError("elements of different fields")

    def _lift(self, other) -> "NumberFieldElement":
        if isinstance(other, NumberFieldElement):
            self._same(other)
            return other
        return NumberFieldElement.rational(self.generator, Fraction(other))

    def __add__(self, other) -> "NumberFieldElement":
        o = self._lift(other)
        return NumberFieldElement(self.generator, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self) -> "NumberFieldElement":
        return NumberFieldElement(self.generator, tuple(-a for a in self.coords))

    def __sub__(self, other) -> "NumberFieldElement":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "NumberFieldElement":
        return self._lift(other) - self

    def __mul__(self, other) -> "NumberFieldElement":
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return NumberFieldElement(self.generator, tuple(a * q for a in self.coords))
        o = self._lift(other)
        return _reduce_coeffs(self.generator, q_mul(self.coords, o.coords))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "NumberFieldElement":
        if k < 0:
            return self.inverse() ** (-k)
        out = NumberFieldElement.rational(self.generator, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def inverse(self) -> "NumberFieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        # extended Euclid: s * x + t * minpoly = 1
        a = list(_strip(self.coords))
        b = [Fraction(c) for c in self.generator.minpoly.coeffs]
        s0, s1 = [Fraction(1)], []
        while b:
            q, r = q_divmod(a, b)
            a, b = b, r
            s0, s1 = s1, _q_sub(s0, q_mul(q, s1))
        # a is the (constant) gcd
        inv = [x / a[0] for x in s0]
        return _reduce_coeffs(self.generator, inv)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise DomainError("element is not rational")
        return self.coords[0]

    def to_ball(self, bits: int = 53, cap: int = DEFAULT_PRECISION_CAP) -> BallComplex:
        if self.is_rational():
            return BallComplex.exact(self.coords[0], 0, bits)
        z = self.generator.ball(bits, cap)
        return ball_polyval(self.coords, BallComplex(z.re, z.im, z.rad, max(z.prec, bits) + 16))

    def minpoly(self) -> IntPolynomial:
        return nf_minpoly(self)

    def as_algebraic(self, bits: int = 53, cap: int = DEFAULT_PRECISION_CAP) -> AlgebraicNumber:
        """This element as an :class:`AlgebraicNumber` (minimal polynomial plus isolating disk)."""
        p = nf_minpoly(self)
        if p.degree == 1:
            return AlgebraicNumber(p, BallComplex.exact(Fraction(-p.coeffs[0], p.coeffs[1])))
        b = bits
        while True:
            val = self.to_ball(b, cap)
            boxes = isolate(p.coeffs, b, cap)
            hits = [x for x in boxes if x.intersects(val)]
            if len(hits) == 1:
                return AlgebraicNumber(p, hits[0])
            if b >= cap:
                raise CertificationError("could not locate element among conjugates", undecided=[self])
            b = min(cap, 2 * b)

    def __str__(self) -> str:
        return format_univariate(self.coords, "a")


def _q_sub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return list(_strip([x - y for x, y in zip(a, b)]))


def _reduce_coeffs(generator: AlgebraicNumber, coeffs: Sequence) -> NumberFieldElement:
    _, r = q_divmod(coeffs, generator.minpoly.coeffs)
    return NumberFieldElement(generator, tuple(r))


def nf_reduce(generator: AlgebraicNumber, poly: RatPolynomial | IntPolynomial) -> NumberFieldElement:
    """``poly(alpha)`` as an element of Q(alpha)."""
    poly = _as_rat(poly)
    return _reduce_coeffs(generator, poly.coeffs)


def charpoly(matrix: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    """Characteristic polynomial ``det(X I - A)`` (ascending) by Faddeev-LeVerrier."""
    n = len(matrix)
    A = [[Fraction(x) for x in row] for row in matrix]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M <- A M + c_{n-k+1} I
        AM = [[sum(A[i][l] * M[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            AM[i][i] += coeffs[n - k + 1]
        M = AM
        tr = sum(sum(A[i][l] * M[l][i] for l in range(n)) for i in range(n))
        coeffs[n - k] = -tr / k
    return coeffs


def multiplication_matrix(x: NumberFieldElement) -> list[list[Fraction]]:
    """Matrix of ``y -> x y`` on the power basis (columns are images of basis vectors)."""
    d = x.degree
    cols = []
    v = x
    a = NumberFieldElement.gen(x.generator) if d > 1 else None
    for j in range(d):
        cols.append(v.coords)
        if j + 1 < d:
            v = v * a
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def nf_minpoly(x: NumberFieldElement) -> IntPolynomial:
    """Minimal polynomial over Z (primitive, positive leading coefficient).

    The characteristic polynomial of multiplication by ``x`` on Q(alpha) is a
    power of the minimal polynomial of ``x``, so its squarefree part is that
    minimal polynomial; no numerical factor selection is required.
    """
    if x.is_rational():
        q = x.rational_value()
        return IntPolynomial((-q.numerator, q.denominator))
    chi = charpoly(multiplication_matrix(x))
    g = q_gcd(chi, q_derivative(chi))
    sqf, _ = q_divmod(chi, g)
    return IntPolynomial(q_to_primitive_int(sqf))


# ---------------------------------------------------------------------------
# parsing


_TERM = re.compile(r"([+-]?)([^+-]+)")
_FACTOR = re.compile(r"([A-Za-z])(\d*)(?:\^(\d+))?")
_SUPERSCRIPTS = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹₀₁₂₃₄₅₆₇₈₉", "01234567890123456789")


def parse_multivariate(text: str) -> tuple[int, dict[tuple[int, ...], Fraction]]:
    """Parse sums of monomials such as ``3X1^2*X2 - X2 + 1/2``.

    A bare ``X`` means ``X1``.  Returns ``(number of variables, {exponents: coefficient})``.
    """
    s = text.replace("−", "-").replace("**", "^").replace(" ", "")
    s = re.sub(r"([A-Za-z]\d*)([⁰¹²³⁴⁵⁶⁷⁸⁹]+)", lambda m: f"{m.group(1)}^{m.group(2)}", s)
    s = s.translate(_SUPERSCRIPTS)
    if not s:
        raise DomainError("empty polynomial")
    raw_terms = []
    for sign, body in _TERM.findall(s):
        coef = Fraction(-1 if sign == "-" else 1)
        powers: dict[int, int] = {}
        m = re.match(r"(\d+(?:/\d+)?)\*?", body)
        if m:
            coef *= Fraction(m.group(1))
            body = body[m.end():]
        pos = 0
        while pos < len(body):
            if body[pos] == "*":
                pos += 1
                continue
            f = _FACTOR.match(body, pos)
            if not f:
                raise DomainError(f"cannot parse polynomial term '{body}' in '{text}'")
            idx = int(f.group(2)) if f.group(2) else 1
            if idx < 1:
                raise DomainError("variables are numbered from 1")
            powers[idx] = powers.get(idx, 0) + int(f.group(3) or 1)
            pos = f.end()
        raw_terms.append((coef, powers))
    nvars = max([max(p) for _, p in raw_terms if p] or [1])
    out: dict[tuple[int, ...], Fraction] = {}
    for coef, powers in raw_terms:
        key = tuple(powers.get(i, 0) for i in range(1, nvars + 1))
        out[key] = out.get(key, Fraction(0)) + coef
    return nvars, {k: v for k, v in out.items() if v != 0}


def parse_polynomial(text: str) -> IntPolynomial:
    """Univariate integer polynomial from text like ``3X^2 - 4X + 5``."""
    nvars, terms = parse_multivariate(text)
    if nvars != 1:
        raise DomainError(f"expected a univariate polynomial, got {nvars} variables")
    deg = max((k[0] for k in terms), default=-1)
    coeffs = [Fraction(0)] * (deg + 1)
    for k, v in terms.items():
        coeffs[k[0]] = v
    if any(c.denominator != 1 for c in coeffs):
        raise DomainError("integer coefficients required")
    return IntPolynomial(tuple(int(c) for c in coeffs))


def parse_rational(text: str) -> Fraction:
    """Exact rational from ``p/q`` or an integer string; floats are refused."""
    t = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", t):
        raise DomainError(f"expected an exact rational 'p/q', got '{text}'")
    q = Fraction(t)
    return q
