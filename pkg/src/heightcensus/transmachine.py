"""Quantitative transcendence machinery at desk scale.

The auxiliary-function method behind the existence of entire functions taking
algebraic values on large sets of algebraic points has four checkable parts:

* the constants ``c0 = log((R^2 + r^2) / (2 r R))`` and ``gamma_t`` together
  with the parameters ``T`` and ``u1``;
* an auxiliary polynomial with small integer coefficients vanishing at given
  algebraic points (Siegel's lemma), built here constructively by exact
  linearisation, an integer kernel and lattice reduction;
* the Schwarz contraction ``|F|_r <= |F|_R e^{-c0 s}`` for ``s`` zeros in the
  small disk, checked on exact rational boundary grids with a rigorous slack;
* the Liouville lower bound for nonzero values of integer polynomials at
  algebraic points.

``sigma_count`` counts the algebraic points of a small disk at which a family
of exactly-valued oracles takes algebraic values of bounded degree and height.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from mpmath import iv

from .census import DEFAULT_BUDGET, enumerate_E
from .enclosures import (
    DEFAULT_PRECISION_CAP,
    RealEnclosure,
    as_fraction,
    certified_floor,
    frac_str,
    log_enclosure,
    precision_schedule,
    real_eval,
    round_up,
    sqrt_lower,
    sqrt_upper,
    to_iv,
)
from .errors import CertificationError, DomainError, InfeasibleError
from .heights import abs_log_height, height_le, modulus_status
from .lattice import integer_kernel, rank
from .polynum import (
    AlgebraicNumber,
    IntPolynomial,
    NumberFieldElement,
    RatPolynomial,
    nf_reduce,
    parse_multivariate,
    poly_derivative,
)

DEFAULT_GRID = 256
FIXED_D = "fixed_D"
FIXED_N = "fixed_N"

# ---------------------------------------------------------------------------
# constants


def _ratio(R: Fraction, r: Fraction) -> Fraction:
    return (R * R + r * r) / (2 * r * R)


def c0_of(R, r, prec: int = 128) -> RealEnclosure:
    """Certified enclosure of ``log((R^2 + r^2) / (2 r R))``; positive for ``R > r > 0``."""
    R, r = as_fraction(R), as_fraction(r)
    if not R > r > 0:
        raise DomainError("need R > r > 0")
    enc = log_enclosure(_ratio(R, r), prec)
    if enc.lower <= 0:
        return c0_of(R, r, 2 * prec)
    return enc


@dataclass(frozen=True)
class DiskPair:
    R: Fraction
    r: Fraction
    c0: RealEnclosure

    def __post_init__(self):
        if not self.R > self.r > 0:
            raise DomainError("need R > r > 0")
        if self.c0.lower <= 0:
            raise DomainError("c0 enclosure must be positive")

    @classmethod
    def of(cls, R, r, prec: int = 128) -> "DiskPair":
        R, r = as_fraction(R), as_fraction(r)
        return cls(R, r, c0_of(R, r, prec))

    @property
    def contraction(self) -> Fraction:
        """``e^{-c0} = 2rR / (R^2 + r^2)``, an exact rational."""
        return 1 / _ratio(self.R, self.r)

    def c0_at(self, prec: int) -> RealEnclosure:
        return c0_of(self.R, self.r, prec)

    def to_json(self) -> dict:
        return {"R": frac_str(self.R), "r": frac_str(self.r), "c0": self.c0.to_json(),
                "contraction": frac_str(self.contraction)}


def _c0_maker(c0) -> Callable[[int], RealEnclosure]:
    if isinstance(c0, DiskPair):
        return c0.c0_at
    if isinstance(c0, RealEnclosure):
        return lambda prec: c0
    q = as_fraction(c0)
    return lambda prec: RealEnclosure.exact(q)


def _enc_maker(x) -> Callable[[int], RealEnclosure]:
    if isinstance(x, RealEnclosure):
        return lambda prec: x
    q = as_fraction(x)
    return lambda prec: RealEnclosure.exact(q)


def _gamma_branch(tau: int, c0):
    # (2 (3 tau / c0)^tau)^(1 / (tau - 1))
    return iv.exp((iv.log(iv.mpf(2)) + tau * iv.log(3 * tau / c0)) / (tau - 1))


def gamma_t_of(t: int, c0, prec: int = 128) -> RealEnclosure:
    """``gamma_t = max_{2 <= tau <= t} ((1/2) (c0 / (3 tau))^tau)^{-1/(tau-1)}``."""
    if t < 2:
        raise DomainError("t must be at least 2")
    c0_enc = _c0_maker(c0)(prec)
    branches = [real_eval(lambda tau=tau: _gamma_branch(tau, to_iv(c0_enc)), prec)
                for tau in range(2, t + 1)]
    return RealEnclosure(max(b.lower for b in branches), max(b.upper for b in branches))


def _rpow(x: Fraction, q: Fraction):
    """Interval ``x**q`` for rational ``x > 0``."""
    if x == 1 or q == 0:
        return iv.mpf(1)
    if q.denominator == 1 and q > 0:
        return to_iv(x) ** int(q)
    return iv.exp(iv.log(to_iv(x)) * to_iv(q))


def siegel_T(D: int, N0, gamma, c0, t: int) -> int:
    """``T = [c0 gamma / (3t) D^{2/(t-1)} N0^{1/(t-1)}]``, certified."""
    if t < 2 or D < 1:
        raise DomainError("need t >= 2 and D >= 1")
    N0 = as_fraction(N0)
    if N0 <= 0:
        raise DomainError("N0 must be positive")
    c0m, gm = _c0_maker(c0), _enc_maker(gamma)
    e2, e1 = Fraction(2, t - 1), Fraction(1, t - 1)

    def make(prec: int) -> RealEnclosure:
        c0_enc, g_enc = c0m(prec), gm(prec)
        return real_eval(lambda: to_iv(c0_enc) * to_iv(g_enc) / (3 * t)
                         * _rpow(Fraction(D), e2) * _rpow(N0, e1), prec)

    T = certified_floor(make)
    if T < 1:
        raise InfeasibleError(f"T = {T}: parameters too small for a nonconstant auxiliary polynomial")
    return T


def sandwich_holds(T: int, D: int, N0, gamma, t: int) -> bool:
    """``2 gamma D^{2t/(t-1)} N0^{t/(t-1)} < T^t``, compared exactly after raising to ``t-1``."""
    N0 = as_fraction(N0)
    g = gamma.upper if isinstance(gamma, RealEnclosure) else as_fraction(gamma)
    return Fraction(T) ** (t * (t - 1)) > (2 * g) ** (t - 1) * Fraction(D) ** (2 * t) * N0 ** t


def _max1(x) -> RealEnclosure:
    enc = x if isinstance(x, RealEnclosure) else RealEnclosure.exact(as_fraction(x))
    return RealEnclosure(max(Fraction(1), enc.lower), max(Fraction(1), enc.upper))


def siegel_u1(T: int, N0, t: int, sup_bounds: Sequence = (), prec: int = 128) -> RealEnclosure:
    """``u1 = log(2 T^{2t}) + t N0 T + T sum_i log max(1, |f_i|_R)``."""
    N0 = as_fraction(N0)
    sups = [_max1(s) for s in sup_bounds]
    if len(sups) < t:
        sups += [RealEnclosure.exact(1)] * (t - len(sups))

    def body():
        acc = iv.log(iv.mpf(2 * T ** (2 * t))) + to_iv(t * N0 * T)
        for s in sups:
            if not (s.is_exact() and s.lower == 1):
                acc = acc + T * iv.log(to_iv(s))
        return acc

    return real_eval(body, prec)


# ---------------------------------------------------------------------------
# Siegel's lemma


def monomials(T: int, t: int) -> list[tuple[int, ...]]:
    """Exponent tuples of ``[0, T)^t`` in lexicographic order."""
    return list(itertools.product(range(T), repeat=t))


def _point_field(point: Sequence[NumberFieldElement]) -> AlgebraicNumber:
    gens = {x.generator.minpoly for x in point}
    if len(gens) != 1:
        raise DomainError("all coordinates of a point must share one generator")
    return point[0].generator


@dataclass(frozen=True)
class SiegelInstance:
    t: int
    T: int
    points: tuple[tuple[NumberFieldElement, ...], ...]
    D: int
    N0: Fraction

    def __post_init__(self):
        if self.t < 2 or self.T < 1:
            raise DomainError("need t >= 2 and T >= 1")
        object.__setattr__(self, "N0", as_fraction(self.N0))
        pts = tuple(tuple(p) for p in self.points)
        for p in pts:
            if len(p) != self.t:
                raise DomainError(f"point has {len(p)} coordinates, expected {self.t}")
            if _point_field(p).degree > self.D:
                raise DomainError("point field degree exceeds D")
        object.__setattr__(self, "points", pts)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(_point_field(p).degree for p in self.points)

    @property
    def hypothesis_holds(self) -> bool:
        """More unknowns than equations: ``sum d_k < T^t``."""
        return sum(self.degrees) < self.T ** self.t

    def to_json(self) -> dict:
        return {"t": self.t, "T": self.T, "D": self.D, "N0": frac_str(self.N0),
                "points": [{"generator": p[0].generator.to_json(),
                            "coords": [[frac_str(c) for c in x.coords] for x in p]}
                           for p in self.points]}


def eval_tensor(coeffs: Sequence[int], T: int, t: int, point: Sequence[NumberFieldElement]) -> NumberFieldElement:
    """Nested Horner evaluation of a lexicographically flattened coefficient tensor."""
    x = point[0]
    block = T ** (t - 1)
    acc = NumberFieldElement.rational(x.generator, 0)
    for i in reversed(range(T)):
        chunk = coeffs[i * block:(i + 1) * block]
        if t == 1:
            inner = NumberFieldElement.rational(x.generator, chunk[0])
        else:
            inner = eval_tensor(chunk, T, t - 1, point[1:])
        acc = acc * x + inner
    return acc


@dataclass(frozen=True)
class SiegelSolution:
    t: int
    T: int
    coeffs: tuple[int, ...]
    bound_ok: bool
    max_coeff: int
    kernel_dimension: int
    vanishing_verified: bool

    def coefficient(self, e: Sequence[int]) -> int:
        idx = 0
        for x in e:
            idx = idx * self.T + x
        return self.coeffs[idx]

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        return [(e, c) for e, c in zip(monomials(self.T, self.t), self.coeffs) if c]

    def to_text(self) -> str:
        parts = []
        for e, c in sorted(self.terms(), key=lambda ec: (-sum(ec[0]), [-x for x in ec[0]])):
            mono = "*".join(f"X{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = mono if mono and mag == 1 else (f"{mag}*{mono}" if mono else str(mag))
            parts.append((sign, body))
        if not parts:
            return "0"
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {b}" for s, b in parts[1:])

    def to_json(self) -> dict:
        return {"t": self.t, "T": self.T, "coeffs": [str(c) for c in self.coeffs],
                "polynomial": self.to_text(), "bound_ok": self.bound_ok,
                "max_coeff": str(self.max_coeff), "kernel_dimension": self.kernel_dimension,
                "vanishing_verified": self.vanishing_verified}

    @classmethod
    def from_json(cls, obj: dict) -> "SiegelSolution":
        return cls(int(obj["t"]), int(obj["T"]), tuple(int(c) for c in obj["coeffs"]), bool(obj["bound_ok"]),
                   int(obj["max_coeff"]), int(obj["kernel_dimension"]), bool(obj["vanishing_verified"]))


def siegel_bound_ok(max_coeff: int, T: int, t: int, N0) -> bool:
    """Certified ``max_coeff <= 2 T^t e^{t T N0}``."""
    N0 = as_fraction(N0)
    x = t * T * N0
    ratio = Fraction(max_coeff, 2 * T ** t)
    if x == 0:
        return ratio <= 1
    if ratio <= 1:
        return True
    # e^x is irrational for rational x != 0, so the comparison is strict either way
    for prec in precision_schedule(64, DEFAULT_PRECISION_CAP):
        lg = log_enclosure(ratio, prec)
        if lg.upper < x:
            return True
        if lg.lower > x:
            return False
    raise CertificationError("coefficient bound comparison undecided")


def _linear_rows(inst: SiegelInstance) -> list[list[int]]:
    mons = monomials(inst.T, inst.t)
    rows = []
    for p in inst.points:
        powers = []
        for x in p:
            pw = [NumberFieldElement.rational(x.generator, 1)]
            for _ in range(inst.T - 1):
                pw.append(pw[-1] * x)
            powers.append(pw)
        values = []
        for e in mons:
            v = powers[0][e[0]]
            for i in range(1, inst.t):
                v = v * powers[i][e[i]]
            values.append(v.coords)
        for j in range(len(values[0])):
            row = [vals[j] for vals in values]
            den = 1
            for q in row:
                den = den * q.denominator // math.gcd(den, q.denominator)
            ints = [int(q * den) for q in row]
            if any(ints):
                rows.append(ints)
    return rows


def _selection_key(v: Sequence[int], mons: Sequence[tuple[int, ...]]) -> tuple:
    top = max((sum(e) for e, c in zip(mons, v) if c), default=0)
    return (max(abs(c) for c in v), sum(abs(c) for c in v), top, tuple(-abs(c) for c in v))


def siegel_solve(inst: SiegelInstance) -> SiegelSolution:
    """Small nonzero integer polynomial of degree < T in each variable vanishing at every point.

    Each vanishing condition is split into ``d_k`` rational equations on the
    power-basis coordinates; the integer kernel is LLL-reduced and the vector
    of smallest sup norm is returned.  Vanishing is re-verified exactly.
    """
    mons = monomials(inst.T, inst.t)
    n = len(mons)
    rows = _linear_rows(inst)
    kernel = integer_kernel(rows, n) if rows else integer_kernel([], n)
    if not kernel:
        raise InfeasibleError(
            f"no nonzero auxiliary polynomial: {len(rows)} independent conditions on {n} coefficients "
            f"(sum d_k = {sum(inst.degrees)}, T^t = {n})")
    best = min(kernel, key=lambda v: _selection_key(v, mons))
    lead = next(c for c in reversed(best) if c)
    if lead < 0:
        best = [-c for c in best]
    coeffs = tuple(best)
    for p in inst.points:
        if not eval_tensor(coeffs, inst.T, inst.t, p).is_zero():
            raise CertificationError("auxiliary polynomial does not vanish at an instance point")
    m = max(abs(c) for c in coeffs)
    return SiegelSolution(inst.t, inst.T, coeffs, siegel_bound_ok(m, inst.T, inst.t, inst.N0), m,
                          len(kernel), True)


def smallest_T(t: int, s0: int, D: int) -> int:
    """Least ``T`` with ``T^t > 2 s0 D``."""
    T = 1
    while T ** t <= 2 * s0 * D:
        T += 1
    return T


def generate_instance(rng: random.Random, t: int, D: int, N0, npoints: int,
                      budget: int | None = DEFAULT_BUDGET) -> SiegelInstance:
    """Random instance whose coordinates all have height at most ``N0``.

    Each point is ``(w, +-w^{+-1}, ...)`` for ``w`` drawn from ``E_{D,N0}``, so
    every coordinate shares ``h(w) <= N0``; ``T`` is the least integer with
    ``T^t > 2 s0 D``.
    """
    N0 = as_fraction(N0)
    pool = sorted(enumerate_E(D, N0, budget).algebraics(), key=lambda a: a.sort_key())
    picks = rng.sample(pool, min(npoints, len(pool)))
    points = []
    for w in picks:
        x = NumberFieldElement.gen(w)
        coords = [x]
        for _ in range(t - 1):
            y = x if (x.is_zero() or rng.random() < 0.5) else x.inverse()
            coords.append(-y if rng.random() < 0.5 else y)
        points.append(tuple(coords))
    return SiegelInstance(t, smallest_T(t, len(points), D), tuple(points), D, N0)


def demo_instance(name: str) -> SiegelInstance:
    """Hand-checkable instances: ``basic`` is ``{(0,0), (1,1)}`` with ``T = 2``."""
    if name == "basic":
        pts = []
        for q in (0, 1):
            g = AlgebraicNumber.from_rational(q)
            pts.append((NumberFieldElement.rational(g, q), NumberFieldElement.rational(g, q)))
        return SiegelInstance(2, 2, tuple(pts), 1, Fraction(1))
    if name == "sqrt2":
        g = AlgebraicNumber.roots_of(IntPolynomial((-2, 0, 1)))[-1]
        x = NumberFieldElement.gen(g)
        return SiegelInstance(2, 2, ((x, x * x),), 2, Fraction(1))
    if name == "infeasible":
        g = AlgebraicNumber.from_rational(5)
        return SiegelInstance(2, 1, ((NumberFieldElement.rational(g, 5), NumberFieldElement.rational(g, 7)),),
                              1, Fraction(2))
    raise DomainError(f"unknown demo instance {name!r}")


# ---------------------------------------------------------------------------
# closed disks


def in_closed_disk(alpha: AlgebraicNumber, r, cap: int = DEFAULT_PRECISION_CAP) -> bool:
    """Exact decision of ``|alpha| <= r`` for rational ``r > 0``."""
    r = as_fraction(r)
    if alpha.is_rational():
        return abs(alpha.rational_value()) <= r
    c = alpha.minpoly.coeffs
    d = len(c) - 1
    a, b = r.numerator, r.denominator
    # q(z) = b^d p(r z) has the root alpha / r
    scaled = [ci * a ** i * b ** (d - i) for i, ci in enumerate(c)]
    g = 0
    for x in scaled:
        g = math.gcd(g, x)
    q = IntPolynomial(tuple(x // g for x in scaled))
    inv = 1 / r
    return modulus_status(q, lambda bits: alpha.ball(bits, cap).scale(inv), cap) <= 0


# ---------------------------------------------------------------------------
# Schwarz contraction


@dataclass(frozen=True)
class SchwarzReport:
    R: Fraction
    r: Fraction
    zeros: int
    grid: int
    sup_r_upper: Fraction
    sup_R_lower: Fraction
    contraction: Fraction
    rhs_lower: Fraction
    margin: Fraction

    @property
    def passed(self) -> bool:
        return self.margin >= 0

    def to_json(self) -> dict:
        return {"R": frac_str(self.R), "r": frac_str(self.r), "zeros": self.zeros, "grid": self.grid,
                "sup_r_upper": frac_str(self.sup_r_upper), "sup_R_lower": frac_str(self.sup_R_lower),
                "contraction_power": frac_str(self.contraction), "rhs_lower": frac_str(self.rhs_lower),
                "margin": frac_str(self.margin), "passed": self.passed,
                "approx": {"sup_r_upper": float(self.sup_r_upper), "rhs_lower": float(self.rhs_lower)}}


def _as_ratpoly(F) -> RatPolynomial:
    if isinstance(F, RatPolynomial):
        return F
    if isinstance(F, IntPolynomial):
        return RatPolynomial.from_int(F)
    return RatPolynomial.from_fractions(list(F))


def circle_points(rho: Fraction, grid: int) -> list[tuple[Fraction, Fraction]]:
    """Exact rational points on ``|z| = rho`` ordered by argument in ``(-pi, pi]``.

    ``u = tan(theta / 2)`` is rounded to a dyadic rational, so the points are
    exactly on the circle and roughly equally spaced.
    """
    us = set()
    for j in range(1, grid):
        theta = -math.pi + 2 * math.pi * j / grid
        us.add(Fraction(round(math.tan(theta / 2) * (1 << 20)), 1 << 20))
    pts = []
    for u in sorted(us):
        den = 1 + u * u
        pts.append((rho * (1 - u * u) / den, rho * 2 * u / den))
    pts.append((-rho, Fraction(0)))
    return pts


def _complex_eval(coeffs: Sequence[Fraction], x: Fraction, y: Fraction) -> tuple[Fraction, Fraction]:
    re, im = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        re, im = re * x - im * y + c, re * y + im * x
    return re, im


def _circle_sup(F: RatPolynomial, rho: Fraction, grid: int, bits: int = 64) -> tuple[Fraction, Fraction]:
    """``(lower, upper)`` bounds on ``max_{|z| = rho} |F(z)|``.

    Between grid points ``|F(z) - F(z_j)| <= |z - z_j| sum k |a_k| rho^{k-1}``
    and ``|z - z_j|`` is at most the longest chord between neighbours.
    """
    pts = circle_points(rho, grid)
    best_lo, best_hi = Fraction(0), Fraction(0)
    c = F.coeffs
    for x, y in pts:
        re, im = _complex_eval(c, x, y)
        m2 = re * re + im * im
        best_lo = max(best_lo, sqrt_lower(m2, bits))
        best_hi = max(best_hi, sqrt_upper(m2, bits))
    chord2 = Fraction(0)
    for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1]):
        chord2 = max(chord2, (x1 - x0) ** 2 + (y1 - y0) ** 2)
    lip = sum(k * abs(a) * rho ** (k - 1) for k, a in enumerate(c) if k)
    slack = lip * sqrt_upper(chord2, bits)
    return best_lo, round_up(best_hi + slack, bits)


def _distinct_groups(zeros: Sequence[AlgebraicNumber], bits: int = 128) -> list[tuple[AlgebraicNumber, int]]:
    """Group possibly-equal zeros; a group of size m must be a zero of order >= m."""
    refined = [z if z.is_rational() else z.refine(bits) for z in zeros]
    groups: list[list[AlgebraicNumber]] = []
    for z in refined:
        for g in groups:
            w = g[0]
            if w.minpoly == z.minpoly and (z.is_rational() or w.root_box.intersects(z.root_box)):
                g.append(z)
                break
        else:
            groups.append([z])
    return [(g[0], len(g)) for g in groups]


def verify_zeros(F, zeros: Sequence[AlgebraicNumber]) -> None:
    """Exact check that ``F`` vanishes to the listed multiplicity at every zero."""
    P = _as_ratpoly(F)
    for z, mult in _distinct_groups(zeros):
        for j in range(mult):
            dj = poly_derivative(P, j) if j else P
            if not nf_reduce(z, dj).is_zero():
                raise DomainError(f"claimed zero {z} is not a zero of order {mult}")


def schwarz_check(F, disk: DiskPair, zeros: Sequence[AlgebraicNumber], grid: int = DEFAULT_GRID,
                  cap: int = DEFAULT_PRECISION_CAP) -> SchwarzReport:
    """Check ``|F|_r <= |F|_R e^{-c0 s}`` for ``s`` certified zeros in the closed ``r``-disk."""
    P = _as_ratpoly(F)
    for z in zeros:
        if not in_closed_disk(z, disk.r, cap):
            raise DomainError(f"zero {z} is not in the closed disk of radius {disk.r}")
    verify_zeros(P, zeros)
    _, up_r = _circle_sup(P, disk.r, grid)
    lo_R, _ = _circle_sup(P, disk.R, grid)
    k = disk.contraction ** len(zeros)
    rhs = lo_R * k
    return SchwarzReport(disk.R, disk.r, len(zeros), grid, up_r, lo_R, k, rhs, rhs - up_r)


# ---------------------------------------------------------------------------
# Liouville inequality


@dataclass(frozen=True)
class LiouvilleResult:
    kind: str  # "ExactZero", "SatisfiesBound" or "Tight" (margin encloses 0)
    branch: str
    D: int
    degrees: tuple[int, ...]
    length: int
    value_abs: RealEnclosure | None = None
    bound: RealEnclosure | None = None
    margin: RealEnclosure | None = None

    @property
    def satisfied(self) -> bool:
        """Certified: exact zero or a margin whose lower end is nonnegative."""
        return self.kind == "ExactZero" or (self.margin is not None and self.margin.lower >= 0)

    @property
    def violated(self) -> bool:
        return self.margin is not None and self.margin.upper < 0

    def to_json(self) -> dict:
        out = {"kind": self.kind, "branch": self.branch, "D": self.D, "degrees": list(self.degrees),
               "length": str(self.length)}
        for name in ("value_abs", "bound", "margin"):
            v = getattr(self, name)
            if v is not None:
                out[name] = v.to_json()
        return out


def poly_from_text(text: str) -> tuple[int, dict[tuple[int, ...], int]]:
    """Integer multivariate polynomial ``{exponents: coefficient}`` from text."""
    nvars, terms = parse_multivariate(text)
    if any(v.denominator != 1 for v in terms.values()):
        raise DomainError("integer coefficients required")
    return nvars, {k: int(v) for k, v in terms.items()}


def _eval_terms(terms: dict[tuple[int, ...], int], point: Sequence[NumberFieldElement]) -> NumberFieldElement:
    gen = point[0].generator
    acc = NumberFieldElement.rational(gen, 0)
    cache: dict[tuple[int, int], NumberFieldElement] = {}
    for e, c in sorted(terms.items()):
        v = NumberFieldElement.rational(gen, c)
        for i, k in enumerate(e):
            if k:
                if (i, k) not in cache:
                    cache[(i, k)] = point[i] ** k
                v = v * cache[(i, k)]
        acc = acc + v
    return acc


def _weil_H_power(x: NumberFieldElement, k: int, prec: int, cap: int) -> RealEnclosure:
    """Enclosure of ``e^{-k h(x)}``; exact for rationals."""
    if x.is_rational():
        q = x.rational_value()
        return RealEnclosure.exact(Fraction(1, max(abs(q.numerator), q.denominator) ** k))
    h = abs_log_height(x, Fraction(1, 1 << max(32, prec // 2)), cap)
    return real_eval(lambda: iv.exp(-k * to_iv(h)), prec)


def liouville_check(P, gamma_point: Sequence[NumberFieldElement], D: int | None = None,
                    branch: str = FIXED_D, degrees: Sequence[int] | None = None,
                    cap: int = DEFAULT_PRECISION_CAP) -> LiouvilleResult:
    """``P(gamma) = 0`` exactly, or ``|P(gamma)| >= L(P)^{-(D-1)} prod_r H(gamma_r)^{-D T_r}``.

    ``H = e^h`` is the exponential of the absolute logarithmic height.  In the
    ``fixed_N`` branch the field degree is at most ``D + 1`` and the exponents
    become ``-D`` on the length and ``-(D+1) T_r`` on the heights.
    """
    if isinstance(P, str):
        _, terms = poly_from_text(P)
    else:
        terms = {tuple(k): int(v) for k, v in dict(P).items() if v}
    point = tuple(gamma_point)
    t = len(point)
    if not point:
        raise DomainError("empty point")
    _point_field(point)
    terms = {tuple(e) + (0,) * (t - len(e)): c for e, c in terms.items()}
    if any(len(e) > t for e in terms):
        raise DomainError("polynomial has more variables than the point")
    degs = tuple(degrees) if degrees is not None else tuple(
        max((e[i] for e in terms), default=0) for i in range(t))
    field_deg = point[0].generator.degree
    if D is None:
        D = field_deg if branch == FIXED_D else max(1, field_deg - 1)
    if branch not in (FIXED_D, FIXED_N):
        raise DomainError(f"unknown branch {branch!r}")
    De = D if branch == FIXED_D else D + 1
    if De < field_deg:
        raise DomainError(f"field of degree {field_deg} exceeds the branch bound {De}")
    length = sum(abs(c) for c in terms.values())
    value = _eval_terms(terms, point)
    if value.is_zero():
        return LiouvilleResult("ExactZero", branch, D, degs, length)
    if value.is_rational() and all(x.is_rational() for x in point):
        v = abs(value.rational_value())
        b = Fraction(1, length ** (De - 1))
        for x, T in zip(point, degs):
            q = x.rational_value()
            b /= max(abs(q.numerator), q.denominator) ** (De * T)
        return LiouvilleResult("SatisfiesBound", branch, D, degs, length, RealEnclosure.exact(v),
                               RealEnclosure.exact(b), RealEnclosure.exact(v - b))
    for prec in precision_schedule(64, cap):
        val = value.to_ball(prec, cap).modulus()
        bound = RealEnclosure.exact(Fraction(1, length ** (De - 1)))
        for x, T in zip(point, degs):
            if T:
                bound = bound * _weil_H_power(x, De * T, prec, cap)
        margin = val - bound
        if margin.lower >= 0:
            return LiouvilleResult("SatisfiesBound", branch, D, degs, length, val, bound, margin)
        if margin.upper < 0:
            raise CertificationError("Liouville lower bound violated", undecided=[value])
    # equality cases (monomials at units with one small conjugate) cannot be
    # separated by enclosures; report the straddling margin
    return LiouvilleResult("Tight", branch, D, degs, length, val, bound, margin)


# ---------------------------------------------------------------------------
# threshold inequalities


def a_exponent(t: int) -> Fraction:
    return Fraction(t + 1, t - 1)


def b_exponent(t: int) -> Fraction:
    return Fraction(t, t - 1)


@dataclass(frozen=True)
class ThresholdRow:
    value: int  # N0 (fixed_D) or D (fixed_N)
    T: int
    lhs: RealEnclosure
    rhs: RealEnclosure
    holds: bool | None

    def to_json(self) -> dict:
        return {"value": self.value, "T": self.T, "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json(),
                "holds": self.holds}


@dataclass(frozen=True)
class ThresholdReport:
    direction: str
    t: int
    fixed: int
    gamma: Fraction
    disk: DiskPair
    rows: tuple[ThresholdRow, ...]
    threshold: int | None
    cap: int

    @property
    def found(self) -> bool:
        return self.threshold is not None

    def to_json(self) -> dict:
        return {"direction": self.direction, "t": self.t, "fixed": self.fixed, "gamma": frac_str(self.gamma),
                "disk": self.disk.to_json(), "a": frac_str(a_exponent(self.t)), "b": frac_str(b_exponent(self.t)),
                "threshold": self.threshold, "scan_cap": self.cap, "rows": [r.to_json() for r in self.rows]}


def _threshold_sides(direction: str, D: int, N0: int, t: int, gamma: Fraction, disk: DiskPair,
                     sup_bounds: Sequence, prec: int) -> tuple[int, RealEnclosure, RealEnclosure]:
    T = siegel_T(D, N0, gamma, disk, t)
    u1 = siegel_u1(T, N0, t, sup_bounds, prec)
    c0 = disk.c0_at(prec)
    a, b = a_exponent(t), b_exponent(t)
    log_term = log_enclosure(2 * T ** (2 * t), prec)
    if direction == FIXED_D:
        inner = certified_floor(lambda p: real_eval(
            lambda: to_iv(gamma) * _rpow(Fraction(D), a) * _rpow(Fraction(N0 - 1), b)
            if N0 > 1 else iv.mpf(0), p))
        rhs = u1 + log_term * (D - 1) + RealEnclosure.exact(t * T * N0 * (D - 1) + t * T * N0 * D)
    else:
        inner = certified_floor(lambda p: real_eval(
            lambda: to_iv(gamma) * _rpow(Fraction(D - 1), a) * _rpow(Fraction(N0), b)
            if D > 1 else iv.mpf(0), p))
        rhs = u1 + log_term * D + RealEnclosure.exact(t * N0 * T * (2 * D + 1))
    lhs = c0 * RealEnclosure.exact(inner)
    return T, lhs, rhs


def threshold_report(D: int, N0: int, t: int, gamma, disk: DiskPair, sup_bounds: Sequence = (),
                     direction: str = FIXED_D, scan_cap: int = 200, prec: int = 128) -> ThresholdReport:
    """Smallest ``N0`` (``fixed_D``) or ``D`` (``fixed_N``) on an integer grid satisfying the inequality.

    ``fixed_D``: ``c0 [gamma D^a (N0-1)^b] > u1 + (D-1) log(2T^{2t}) + tTN0(D-1) + tTN0 D``.
    ``fixed_N``: ``c0 [gamma (D-1)^a N0^b] > u1 + D log(2T^{2t}) + tN0T(2D+1)``.
    The scan starts at the given ``N0`` (resp. ``D``) and stops at the first
    success or after ``scan_cap`` values.
    """
    gamma = as_fraction(gamma)
    if direction not in (FIXED_D, FIXED_N):
        raise DomainError(f"unknown direction {direction!r}")
    rows = []
    start = N0 if direction == FIXED_D else D
    threshold = None
    for v in range(start, start + scan_cap):
        d, n = (D, v) if direction == FIXED_D else (v, N0)
        try:
            T, lhs, rhs = _threshold_sides(direction, d, n, t, gamma, disk, sup_bounds, prec)
        except InfeasibleError:
            continue
        holds = True if lhs.lower > rhs.upper else (False if lhs.upper <= rhs.lower else None)
        rows.append(ThresholdRow(v, T, lhs, rhs, holds))
        if holds:
            threshold = v
            break
    return ThresholdReport(direction, t, D if direction == FIXED_D else N0, gamma, disk, tuple(rows),
                           threshold, scan_cap)


# ---------------------------------------------------------------------------
# Sigma counts


Oracle = Callable[[AlgebraicNumber], "NumberFieldElement | None"]


def identity_oracle() -> Oracle:
    return NumberFieldElement.gen


def polynomial_oracle(coeffs: Sequence) -> Oracle:
    """``w -> p(w)`` for a rational polynomial given by ascending coefficients."""
    P = RatPolynomial.from_fractions(list(coeffs))
    return lambda w: nf_reduce(w, P)


def series_oracle(fn, sigma: int = 0) -> Oracle:
    """``w -> f^{(sigma)}(w)`` for a constructed series; ``None`` when ``w`` is not captured."""
    from .faberforge import eval_exact_at_algebraic

    def oracle(w: AlgebraicNumber):
        if fn.first_level(w) is None:
            return None
        return eval_exact_at_algebraic(fn, w, sigma, witness=False).value

    return oracle


def joint_degree(values: Sequence[NumberFieldElement]) -> int:
    """``[Q(x_1, ..., x_t) : Q]`` as the dimension of the subalgebra they generate."""
    gen = values[0].generator
    one = NumberFieldElement.rational(gen, 1)
    basis = [one]
    frontier = [one]
    while frontier:
        new = []
        for b in frontier:
            for x in values:
                y = b * x
                if rank([list(v.coords) for v in basis + [y]]) > len(basis):
                    basis.append(y)
                    new.append(y)
        frontier = new
    return len(basis)


@dataclass(frozen=True)
class SigmaCount:
    D: int
    N: Fraction
    r: Fraction
    count: int
    candidates: int
    uncaptured: int
    members: tuple[AlgebraicNumber, ...] = field(repr=False, default=())

    def to_json(self) -> dict:
        return {"D": self.D, "N": frac_str(self.N), "r": frac_str(self.r), "count": self.count,
                "candidates_in_disk": self.candidates, "uncaptured": self.uncaptured,
                "members": [m.minpoly.to_text() + " @ " + f"{m.root_box.to_complex():.12g}" for m in self.members]}


def sigma_count(oracles: Sequence[Oracle], D: int, N, r, budget: int | None = DEFAULT_BUDGET,
                cap: int = DEFAULT_PRECISION_CAP, jobs: int = 1) -> SigmaCount:
    """Exact size of ``Sigma_{D,N}(f_1, ..., f_t, r)`` over the candidates ``E_{D,N}``.

    Only exactly-valued oracles are supported: each maps ``w`` to an element
    of ``Q(w)``, or to ``None`` when no exact value is available (such ``w``
    are not counted and are reported as uncaptured).
    """
    N, r = as_fraction(N), as_fraction(r)
    if not oracles:
        raise DomainError("at least one oracle is required")
    census = enumerate_E(D, N, budget, cap, jobs)
    members = []
    candidates = uncaptured = 0
    undecided = []
    for w in sorted(census.algebraics(), key=lambda a: a.sort_key()):
        if not in_closed_disk(w, r, cap):
            continue
        candidates += 1
        vals = [o(w) for o in oracles]
        if any(v is None for v in vals):
            uncaptured += 1
            continue
        if joint_degree(vals) > D:
            continue
        ok = True
        for v in vals:
            verdict = height_le(v, N, cap=cap)
            if verdict.undecided:
                undecided.append(w)
                ok = False
                break
            if verdict.exceeds:
                ok = False
                break
        if ok:
            members.append(w)
    if undecided:
        raise CertificationError(f"{len(undecided)} height verdicts undecided", undecided=undecided)
    return SigmaCount(D, N, r, len(members), candidates, uncaptured, tuple(members))


def dumps(obj) -> str:
    """Deterministic JSON for reports."""
    return json.dumps(obj.to_json() if hasattr(obj, "to_json") else obj, sort_keys=True, indent=2)


__all__ = [
    "DiskPair", "SiegelInstance", "SiegelSolution", "SchwarzReport", "LiouvilleResult", "ThresholdReport",
    "SigmaCount", "c0_of", "gamma_t_of", "siegel_T", "siegel_u1", "sandwich_holds", "siegel_solve",
    "siegel_bound_ok", "schwarz_check", "liouville_check", "threshold_report", "sigma_count",
    "in_closed_disk", "joint_degree", "identity_oracle", "polynomial_oracle", "series_oracle",
    "generate_instance", "demo_instance", "smallest_T", "eval_tensor", "monomials", "FIXED_D", "FIXED_N",
]
