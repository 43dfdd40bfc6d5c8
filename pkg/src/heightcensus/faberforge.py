"""Explicit entire transcendental functions built from height-bounded sets.

``f(z) = sum_k a_k P_k(z)`` with ``P_k = prod_{beta in E_{k,N_k}} (X - beta)^k``
maps every algebraic number (and every derivative order) into its own field,
while ``g(z) = sum_k b_k Q_k(z)`` with ``Q_k = prod_beta P_beta^k`` and dyadic
``b_k`` lands in ``Z[1/2, alpha]``.  Both series are driven by a schedule
``(N_k, a_k)``; everything here is exact except the ball evaluation of the
truncated series, whose tail is bounded rigorously.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Callable, Iterable, Sequence

from mpmath import iv

from .census import (
    DEFAULT_BUDGET,
    ECensus,
    certify_bound,
    enumerate_E,
)
from .enclosures import (
    DEFAULT_PRECISION_CAP,
    BallComplex,
    RealEnclosure,
    certified_floor,
    frac_str,
    log_of_int,
    precision_schedule,
    real_eval,
    round_up,
    to_iv,
)
from .errors import CertificationError, DomainError, InfeasibleError
from .heights import height_le, modulus_status
from .polynum import (
    AlgebraicNumber,
    DyadicRational,
    IntPolynomial,
    NumberFieldElement,
    RatPolynomial,
    nf_reduce,
    poly_derivative,
)

FAITHFUL = "paper_faithful"
TOY = "toy"
DEFAULT_TOY_N = (Fraction(1, 4), Fraction(3, 8), Fraction(1, 2))


# ---------------------------------------------------------------------------
# growth functions


@dataclass(frozen=True)
class PhiSpec:
    """A growth function from the closed catalogue ``x/c`` (c > 1), ``sqrt(x)``, ``log(1+x)``.

    For every member ``x - phi(x)`` is nondecreasing on ``[1, oo)``, so
    ``phi(x0) <= x0 - 1`` certifies ``phi(x) <= x - 1`` for all ``x >= x0``;
    ``phi(x)/x`` is nonincreasing as well.
    """

    name: str
    x0: Fraction
    c: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "x0", Fraction(self.x0))
        if self.name not in ("linear", "sqrt", "log1p"):
            raise DomainError(f"unknown growth function {self.name!r}")
        if self.name == "linear":
            if self.c is None or Fraction(self.c) <= 1:
                raise DomainError("x/c needs a rational c > 1")
            object.__setattr__(self, "c", Fraction(self.c))
        if self.x0 < 1:
            raise DomainError("x0 must be at least 1")
        if not self.x0_valid():
            raise DomainError(f"phi({frac_str(self.x0)}) > x0 - 1 for {self.label}")

    @classmethod
    def parse(cls, text: str, x0) -> "PhiSpec":
        t = text.replace(" ", "").lower()
        if t in ("sqrt", "sqrt(x)", "x^(1/2)"):
            return cls("sqrt", Fraction(x0))
        if t in ("log1p", "log(1+x)", "log(x+1)"):
            return cls("log1p", Fraction(x0))
        if t.startswith("x/"):
            c = t[2:].strip("()")
            from .polynum import parse_rational

            return cls("linear", Fraction(x0), parse_rational(c))
        raise DomainError(f"growth function {text!r} is not in the catalogue")

    @property
    def label(self) -> str:
        if self.name == "linear":
            return f"x/{frac_str(self.c) if self.c.denominator != 1 else self.c.numerator}"
        return {"sqrt": "sqrt(x)", "log1p": "log(1+x)"}[self.name]

    def exact(self, x: Fraction) -> Fraction | None:
        """``phi(x)`` when it is rational, else None."""
        x = Fraction(x)
        if self.name == "linear":
            return x / self.c
        if self.name == "sqrt":
            n, d = x.numerator, x.denominator
            rn, rd = math.isqrt(n), math.isqrt(d)
            return Fraction(rn, rd) if rn * rn == n and rd * rd == d else None
        return Fraction(0) if x == 0 else None

    def iv_value(self, x: Fraction):
        xi = to_iv(Fraction(x))
        if self.name == "linear":
            return xi / to_iv(self.c)
        if self.name == "sqrt":
            return iv.sqrt(xi)
        return iv.log(1 + xi)

    def enclosure(self, x: Fraction, prec: int = 128) -> RealEnclosure:
        q = self.exact(x)
        return RealEnclosure.exact(q) if q is not None else real_eval(lambda: self.iv_value(x), prec)

    def x0_valid(self) -> bool:
        x0 = self.x0
        if self.name == "linear":
            return x0 / self.c <= x0 - 1
        if self.name == "sqrt":
            return x0 >= 1 and x0 <= (x0 - 1) ** 2
        # log(1+x0) is irrational for rational x0 > 0, so the comparison is strict
        for prec in precision_schedule(64, DEFAULT_PRECISION_CAP):
            e = real_eval(lambda: iv.log(1 + to_iv(x0)), prec)
            if e.upper <= x0 - 1:
                return True
            if e.lower > x0 - 1:
                return False
        raise CertificationError("x0 precondition undecided")

    def to_json(self) -> dict:
        return {"phi": self.label, "x0": frac_str(self.x0)}


# ---------------------------------------------------------------------------
# schedule


@dataclass(frozen=True)
class ScheduleEntry:
    """One level ``delta`` of a schedule; ``a_delta = 1 / c_delta``."""

    index: int
    N_delta: Fraction
    epsilon_delta: int
    c_delta: int
    b_delta: Fraction
    conditions: tuple[tuple[str, bool], ...] = ()

    @property
    def a_delta(self) -> Fraction:
        return Fraction(1, self.c_delta)

    @property
    def dyadic_exponent(self) -> int | None:
        """``m`` when ``c_delta = 2**m``."""
        c = self.c_delta
        return c.bit_length() - 1 if c & (c - 1) == 0 else None

    def condition(self, label: str) -> bool | None:
        return dict(self.conditions).get(label)

    def to_json(self) -> dict:
        return {"index": self.index, "N": frac_str(self.N_delta), "epsilon": str(self.epsilon_delta),
                "c": str(self.c_delta), "c_bits": self.c_delta.bit_length(), "a": frac_str(self.a_delta),
                "b": frac_str(self.b_delta), "conditions": dict(self.conditions)}


@dataclass(frozen=True)
class Schedule:
    phi: PhiSpec
    variant: str
    mode: str
    entries: tuple[ScheduleEntry, ...]

    @property
    def depth(self) -> int:
        return len(self.entries)

    @property
    def violations(self) -> list[str]:
        return [f"{label} at delta={e.index}" for e in self.entries for label, ok in e.conditions if not ok]

    @property
    def all_conditions_hold(self) -> bool:
        return not self.violations

    def entry(self, k: int) -> ScheduleEntry:
        return self.entries[k - 1]

    def to_json(self) -> dict:
        return {"variant": self.variant, "mode": self.mode, **self.phi.to_json(),
                "depth": self.depth, "entries": [e.to_json() for e in self.entries],
                "violations": self.violations}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _power_term(delta: int, N: Fraction, eps: int) -> Callable[[int], RealEnclosure]:
    """``(delta + e^{delta N})^{delta eps}``."""
    if N == 0:
        v = Fraction(delta + 1) ** (delta * eps)
        return lambda prec: RealEnclosure.exact(v)
    return lambda prec: real_eval(lambda: (delta + iv.exp(delta * to_iv(N))) ** (delta * eps), prec)


def _magnitude_bits(enc: RealEnclosure) -> int:
    m = max(abs(enc.lower), abs(enc.upper), Fraction(1))
    return m.numerator.bit_length() - m.denominator.bit_length() + 1


def _scaled(make: Callable[[int], RealEnclosure]) -> Callable[[int], RealEnclosure]:
    """Shift the working precision past the magnitude so huge values keep relative accuracy."""
    base = _magnitude_bits(make(64))
    return lambda prec: make(prec + base)


def ceil_log2(q: Fraction) -> int:
    """Smallest integer ``m`` with ``2**m >= q`` for a positive rational ``q``."""
    q = Fraction(q)
    m = q.numerator.bit_length() - q.denominator.bit_length()
    while Fraction(2) ** m < q:
        m += 1
    while Fraction(2) ** (m - 1) >= q:
        m -= 1
    return m


def f_coefficient(delta: int, N: Fraction, eps: int, cap: int = DEFAULT_PRECISION_CAP) -> int:
    """``c_delta = 1 + [2^delta (delta + e^{delta N})^{delta eps}]``."""
    term = _power_term(delta, N, eps)
    if N == 0:
        return 1 + math.floor(2 ** delta * term(0).lower)
    return 1 + certified_floor(lambda prec: term(prec) * RealEnclosure.exact(2 ** delta), extra_cap=cap)


def g_exponent(delta: int, N: Fraction, eps: int, classes: Sequence[tuple[int, ...]],
               cap: int = DEFAULT_PRECISION_CAP) -> int:
    """Smallest ``m`` with ``2^{-m} <= 2^{-delta}(delta + e^{delta N})^{-delta eps}`` and
    ``2^{-m} sup_{|z| <= delta} |Q_delta(z)| <= 2^{-delta}``.

    The supremum is bounded by ``prod_p L_delta(p)^{delta deg p}`` with
    ``L_delta(p) = sum |p_i| delta^i``.
    """
    if N == 0:
        m_ii = delta + ceil_log2(Fraction(delta + 1) ** (delta * eps))
    else:
        # log2 of a transcendental number is irrational: its integer part is decidable
        fl = certified_floor(lambda prec: real_eval(
            lambda: delta * eps * iv.log(delta + iv.exp(delta * to_iv(N))) / iv.log(2), prec), extra_cap=cap)
        m_ii = delta + fl + 1
    sup = 1
    for c in classes:
        sup *= sum(abs(x) * delta ** i for i, x in enumerate(c)) ** (delta * (len(c) - 1))
    return max(m_ii, delta + ceil_log2(Fraction(sup)))


def _cond_i(delta: int, N: Fraction, eps: int, c: int, b: Fraction, cap: int) -> bool:
    """``|a| <= b (delta + e^{delta N})^{-delta eps}`` with ``a = 1/c``, i.e. ``term / b <= c``."""
    term = _power_term(delta, N, eps)
    make = _scaled(lambda prec: term(prec) * RealEnclosure.exact(1 / b))
    for prec in precision_schedule(64, cap):
        e = make(prec)
        if e.upper <= c:
            return True
        if e.lower > c:
            return False
    raise CertificationError(f"condition (i) undecided at delta={delta}")


def _cond_ii_rhs(prev: Sequence[ScheduleEntry]) -> Callable[[int], RealEnclosure]:
    """``2(log(delta-1) + sum h(a_k) + (delta-1)^2 eps_{delta-1}(log 2 + 1 + N_{delta-1}))``."""
    dm1 = len(prev)
    last = prev[-1]

    def make(prec: int) -> RealEnclosure:
        s = sum((log_of_int(e.c_delta, prec) for e in prev), RealEnclosure.exact(0))
        tail = real_eval(lambda: dm1 ** 2 * last.epsilon_delta * (iv.log(2) + 1 + to_iv(last.N_delta)), prec)
        return (log_of_int(dm1, prec) + s + tail) * RealEnclosure.exact(2)

    return make


def _decide(left: Callable[[int], RealEnclosure], right: Callable[[int], RealEnclosure],
            cap: int, what: str) -> bool:
    """Certified ``left >= right``."""
    for prec in precision_schedule(64, cap):
        a, b = left(prec), right(prec)
        if a.lower >= b.upper:
            return True
        if a.upper < b.lower:
            return False
    raise CertificationError(f"{what} undecided at precision cap {cap}")


def _cond_iii(phi: PhiSpec, N: Fraction, K: int, cap: int) -> bool:
    """``N / phi(N) >= K``, i.e. ``N >= K phi(N)``."""
    q = phi.exact(N)
    if q is not None:
        return N >= K * q
    if phi.name == "sqrt":
        return N * N >= K * K * N
    return _decide(lambda p: RealEnclosure.exact(N), lambda p: phi.enclosure(N, p) * RealEnclosure.exact(K),
                   cap, "condition (iii)")


def _smallest_iii(phi: PhiSpec, K: int, start: int, cap: int) -> int:
    """Smallest integer ``N >= start`` with ``N / phi(N) >= K``."""
    if phi.name == "linear":
        if phi.c >= K:
            return start
        raise InfeasibleError(f"condition (iii): N/phi(N) = {frac_str(phi.c)} < {K} for every N")
    if phi.name == "sqrt":
        return max(start, K * K)
    lo, hi = start, max(start, 1)
    while not _cond_iii(phi, Fraction(hi), K, cap):
        lo, hi = hi, 2 * hi
    if _cond_iii(phi, Fraction(lo), K, cap):
        return lo
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _cond_iii(phi, Fraction(mid), K, cap):
            hi = mid
        else:
            lo = mid
    return hi


def _entry(delta: int, N: Fraction, variant: str, phi: PhiSpec, prev: Sequence[ScheduleEntry],
           budget, cap: int, jobs: int, cache_dir) -> ScheduleEntry:
    census = enumerate_E(delta, N, budget, cap, jobs, cache_dir)
    eps = census.count
    b = Fraction(1, 2 ** delta)
    if variant == "f":
        c = f_coefficient(delta, N, eps, cap)
    else:
        c = 2 ** g_exponent(delta, N, eps, census.classes, cap)
    conds = [("x0", N >= phi.x0), ("(i)", _cond_i(delta, N, eps, c, b, cap))]
    if delta >= 2:
        K = 2 * (delta - 1) ** 2 * prev[-1].epsilon_delta
        conds.append(("(ii)", _decide(lambda p: RealEnclosure.exact(N), _cond_ii_rhs(prev), cap, "condition (ii)")))
        conds.append(("(iii)", _cond_iii(phi, N, K, cap)))
    return ScheduleEntry(delta, N, eps, c, b, tuple(conds))


def build_schedule(phi: PhiSpec, depth: int, mode: str = FAITHFUL, variant: str = "f",
                   N_values: Sequence | None = None, budget: int | None = DEFAULT_BUDGET,
                   cap: int = DEFAULT_PRECISION_CAP, jobs: int = 1, cache_dir=None) -> Schedule:
    """Build the schedule level by level.

    Faithful mode takes ``N_1 = [x0] + 1`` and then the smallest integer
    ``N_delta`` meeting conditions (ii) and (iii); it raises
    :class:`InfeasibleError` when no such integer exists and
    :class:`BudgetExceeded` when the census at that level is out of budget.
    Toy mode takes the given ``N_values`` and records which conditions fail.
    """
    if depth < 1:
        raise DomainError("depth must be at least 1")
    if variant not in ("f", "g"):
        raise DomainError("variant must be 'f' or 'g'")
    entries: list[ScheduleEntry] = []
    if mode == TOY:
        Ns = [Fraction(x) for x in (N_values if N_values is not None else DEFAULT_TOY_N)]
        if len(Ns) < depth:
            raise DomainError(f"toy schedule needs {depth} values of N, got {len(Ns)}")
        Ns = Ns[:depth]
        if any(n < 0 for n in Ns) or any(b < a for a, b in zip(Ns, Ns[1:])):
            raise DomainError("toy N values must be nonnegative and nondecreasing")
        for delta, N in enumerate(Ns, start=1):
            entries.append(_entry(delta, N, variant, phi, entries, budget, cap, jobs, cache_dir))
    elif mode == FAITHFUL:
        for delta in range(1, depth + 1):
            if delta == 1:
                N = Fraction(math.floor(phi.x0) + 1)
            else:
                floor_ii = certified_floor(_cond_ii_rhs(entries), extra_cap=cap)
                K = 2 * (delta - 1) ** 2 * entries[-1].epsilon_delta
                start = max(floor_ii + 1, math.ceil(phi.x0), int(entries[-1].N_delta))
                N = Fraction(_smallest_iii(phi, K, start, cap))
            entries.append(_entry(delta, N, variant, phi, entries, budget, cap, jobs, cache_dir))
    else:
        raise DomainError(f"unknown schedule mode {mode!r}")
    return Schedule(phi, variant, mode, tuple(entries))


# ---------------------------------------------------------------------------
# the polynomials P_k and Q_k


def _product(polys: Sequence[IntPolynomial]) -> IntPolynomial:
    """Balanced product tree."""
    if not polys:
        return IntPolynomial.constant(1)
    items = list(polys)
    while len(items) > 1:
        items = [items[i] * items[i + 1] if i + 1 < len(items) else items[i] for i in range(0, len(items), 2)]
    return items[0]


def build_pk(k: int, N, variant: str = "f", budget: int | None = DEFAULT_BUDGET,
             cap: int = DEFAULT_PRECISION_CAP, census: ECensus | None = None) -> RatPolynomial | IntPolynomial:
    """``P_k`` (monic, rational) for variant f, ``Q_k`` (integer) for variant g.

    Both are products of minimal polynomials, so rationality is structural and
    no root is ever multiplied out.
    """
    census = census or enumerate_E(k, Fraction(N), budget, cap)
    if variant == "f":
        num = _product([IntPolynomial(c) ** k for c in census.classes])
        den = reduce(lambda x, y: x * y, (c[-1] ** k for c in census.classes), 1)
        return RatPolynomial(num, den)
    return _product([IntPolynomial(c) ** (k * (len(c) - 1)) for c in census.classes])


class SeriesFunction:
    """``f = sum a_k P_k`` or ``g = sum b_k Q_k`` over a built schedule prefix."""

    def __init__(self, schedule: Schedule, budget: int | None = DEFAULT_BUDGET,
                 cap: int = DEFAULT_PRECISION_CAP):
        self.schedule = schedule
        self.variant = schedule.variant
        self.cap = cap
        self._budget = budget
        self._census: dict[int, ECensus] = {}
        self.pk_cache: dict[int, RatPolynomial | IntPolynomial] = {}
        self._balls: dict[tuple[int, BallComplex], BallComplex] = {}

    @property
    def depth(self) -> int:
        return self.schedule.depth

    def coefficient(self, k: int) -> Fraction:
        return self.schedule.entry(k).a_delta

    def census(self, k: int) -> ECensus:
        if k not in self._census:
            e = self.schedule.entry(k)
            self._census[k] = enumerate_E(k, e.N_delta, self._budget, self.cap)
        return self._census[k]

    def pk(self, k: int):
        if k not in self.pk_cache:
            self.pk_cache[k] = build_pk(k, self.schedule.entry(k).N_delta, self.variant,
                                        self._budget, self.cap, self.census(k))
        return self.pk_cache[k]

    def _factor_power(self, c: tuple[int, ...], k: int) -> int:
        return k if self.variant == "f" else k * (len(c) - 1)

    def contains(self, k: int, alpha: AlgebraicNumber) -> bool:
        """Exact membership ``alpha in E_{k,N_k}``."""
        return alpha.degree <= k and self.census(k).contains_class(alpha.minpoly.coeffs)

    def first_level(self, alpha: AlgebraicNumber) -> int | None:
        """``k_0``: levels are nested, so the first capturing level is the minimum."""
        for k in range(1, self.depth + 1):
            if self.contains(k, alpha):
                return k
        return None

    # -- exact Taylor data at an algebraic point

    def taylor_pk(self, k: int, alpha: AlgebraicNumber, order: int) -> list[NumberFieldElement]:
        """``P_k^{(j)}(alpha) / j!`` for ``j <= order`` (``Q_k`` for variant g)."""
        one = NumberFieldElement.rational(alpha, 1)
        x = NumberFieldElement.gen(alpha)
        out = [one] + [one * 0] * order
        for c in self.census(k).classes:
            series = _taylor_of(c, x, order)
            if self.variant == "f":
                series = [s * Fraction(1, c[-1]) for s in series]
            out = _series_mul(out, _series_pow(series, self._factor_power(c, k), order), order)
        return out

    def derivative_at(self, k: int, alpha: AlgebraicNumber, sigma: int) -> NumberFieldElement:
        return self.taylor_pk(k, alpha, sigma)[sigma] * math.factorial(sigma)

    # -- ball evaluation

    def pk_ball(self, k: int, z: BallComplex) -> BallComplex:
        key = (k, z)
        if key not in self._balls:
            if len(self._balls) > 512:
                self._balls.clear()
            self._balls[key] = self._pk_ball(k, z)
        return self._balls[key]

    def _pk_ball(self, k: int, z: BallComplex) -> BallComplex:
        # classes sharing an exponent are multiplied first, then raised once
        groups: dict[int, BallComplex] = {}
        powers = [BallComplex.exact(1, 0, z.prec), z]
        for c in self.census(k).classes:
            while len(powers) < len(c):
                powers.append(powers[-1] * z)
            v = _ball_poly(c, powers)
            if self.variant == "f":
                v = v.scale(Fraction(1, c[-1]))
            e = self._factor_power(c, k)
            groups[e] = groups[e] * v if e in groups else v
        out = BallComplex.exact(1, 0, z.prec)
        for e, v in sorted(groups.items()):
            out = out * (v ** e)
        return out


def _taylor_of(c: Sequence[int], x: NumberFieldElement, order: int) -> list[NumberFieldElement]:
    """Coefficients of ``p(x + t)`` up to ``t^order``, by Horner in ``t``."""
    zero = x * 0
    series = [zero + c[-1]] + [zero] * order
    for coef in reversed(c[:-1]):
        shifted = [zero] + series[:order]
        series = [s * x + t for s, t in zip(series, shifted)]
        series[0] = series[0] + coef
    return series


def _series_mul(a: list, b: list, order: int) -> list:
    out = [a[0] * 0 for _ in range(order + 1)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j in range(order + 1 - i):
            if not b[j].is_zero():
                out[i + j] = out[i + j] + x * b[j]
    return out


def _series_pow(a: list, n: int, order: int) -> list:
    out = [a[0] * 0 + 1] + [a[0] * 0] * order
    base = a
    while n:
        if n & 1:
            out = _series_mul(out, base, order)
        n >>= 1
        if n:
            base = _series_mul(base, base, order)
    return out


def _ball_poly(c: Sequence[int], powers: Sequence[BallComplex]) -> BallComplex:
    """``sum c_i z^i`` from precomputed balls of ``z^i``; integer scaling is exact."""
    re = sum((x * p.re for x, p in zip(c, powers)), Fraction(0))
    im = sum((x * p.im for x, p in zip(c, powers)), Fraction(0))
    rad = sum((abs(x) * p.rad for x, p in zip(c, powers)), Fraction(0))
    return BallComplex(re, im, rad, powers[0].prec)


# ---------------------------------------------------------------------------
# evaluation


def _tail(fn: SeriesFunction, m: int) -> Fraction:
    """``sum_{k > m} b_k`` for the default majorants ``b_k = 2^{-k}``."""
    return Fraction(1, 2 ** m)


def eval_truncated(fn: SeriesFunction, z: BallComplex, K: int) -> BallComplex:
    """``sum_{k <= K} a_k P_k(z)`` plus a rigorous tail radius.

    Terms past the built depth are covered by the tail bound as well, so the
    partial sum stops at ``min(K, depth)``.
    """
    threshold = math.floor(z.abs_upper()) + 1
    if K < threshold:
        raise DomainError(f"truncation K={K} below the validity threshold {threshold} for |z|")
    m = min(K, fn.depth)
    total = BallComplex.exact(0, 0, z.prec)
    for k in range(1, m + 1):
        total = total + fn.pk_ball(k, z).scale(fn.coefficient(k))
    return BallComplex(total.re, total.im, total.rad + _tail(fn, m), total.prec)


@dataclass(frozen=True)
class ExactValue:
    """``f^{(sigma)}(alpha)`` in ``Q(alpha)``; for variant g also a dyadic witness polynomial."""

    alpha: AlgebraicNumber
    sigma: int
    k0: int
    M: int
    value: NumberFieldElement
    witness: tuple[DyadicRational, ...] | None = None

    @property
    def witness_is_dyadic(self) -> bool:
        return self.witness is not None and all(isinstance(w, DyadicRational) for w in self.witness)

    def to_json(self) -> dict:
        out = {"alpha_minpoly": str(self.alpha.minpoly), "alpha_box": self.alpha.root_box.to_json(),
               "sigma": self.sigma, "k0": self.k0, "M": self.M,
               "coords": [frac_str(c) for c in self.value.coords]}
        if self.witness is not None:
            nz = [(i, w) for i, w in enumerate(self.witness) if w.mantissa]
            out["witness_degree"] = len(self.witness) - 1
            out["witness_max_denominator_exponent"] = max((-w.exponent for _, w in nz), default=0)
        return out


def eval_exact_at_algebraic(fn: SeriesFunction, alpha: AlgebraicNumber, sigma: int = 0,
                            witness: bool | None = None) -> ExactValue:
    """``f^{(sigma)}(alpha) = sum_{k < M} a_k P_k^{(sigma)}(alpha)``, ``M = max(k_0, sigma + 1)``."""
    if sigma < 0:
        raise DomainError("sigma must be nonnegative")
    k0 = fn.first_level(alpha)
    if k0 is None:
        raise DomainError(f"alpha (minimal polynomial {alpha.minpoly}) is not captured within depth {fn.depth}")
    M = max(k0, sigma + 1)
    if M - 1 > fn.depth:
        raise DomainError(f"sigma={sigma} needs levels up to {M - 1}, schedule depth is {fn.depth}")
    value = NumberFieldElement.rational(alpha, 0)
    for k in range(1, M):
        value = value + fn.derivative_at(k, alpha, sigma) * fn.coefficient(k)
    wit = None
    if witness if witness is not None else fn.variant == "g":
        wit = g_witness(fn, sigma, M)
        check = nf_reduce(alpha, RatPolynomial.from_fractions([w.to_fraction() for w in wit]))
        if check != value:
            raise CertificationError("dyadic witness disagrees with the exact value")
    return ExactValue(alpha, sigma, k0, M, value, wit)


def g_witness(fn: SeriesFunction, sigma: int, M: int) -> tuple[DyadicRational, ...]:
    """Coefficients of ``sum_{k < M} b_k Q_k^{(sigma)}``, each in ``Z[1/2]``."""
    if fn.variant != "g":
        raise DomainError("dyadic witnesses exist for variant g only")
    acc: list[Fraction] = [Fraction(0)]
    for k in range(1, M):
        d = poly_derivative(fn.pk(k), sigma)
        coeffs = [c * fn.coefficient(k) for c in d.coeffs]
        if len(coeffs) > len(acc):
            acc += [Fraction(0)] * (len(coeffs) - len(acc))
        for i, c in enumerate(coeffs):
            acc[i] += c
    return tuple(DyadicRational.from_fraction(c) for c in acc)


# ---------------------------------------------------------------------------
# checks


@dataclass(frozen=True)
class SigmaReport:
    D: int
    d_index: int
    N_d: Fraction
    phi_N: RealEnclosure
    census_N: Fraction
    candidates: int
    height_failures: tuple[str, ...]
    bound_check: object

    @property
    def passed(self) -> bool:
        return not self.height_failures and self.bound_check.passed

    def to_json(self) -> dict:
        return {"D": self.D, "d": self.d_index, "N_d": frac_str(self.N_d),
                "phi_N_d": self.phi_N.to_json(), "census_N": frac_str(self.census_N),
                "candidates": self.candidates, "height_failures": list(self.height_failures),
                "bound": self.bound_check.to_json(), "passed": self.passed}


def _rational_below(enc: RealEnclosure, bits: int = 32) -> Fraction:
    """A dyadic rational at most ``enc.lower`` (exact values are kept)."""
    if enc.is_exact():
        return enc.lower
    return Fraction(math.floor(enc.lower * 2 ** bits), 2 ** bits)


def in_closed_unit_disk(alpha: AlgebraicNumber, cap: int = DEFAULT_PRECISION_CAP) -> bool:
    if alpha.is_rational():
        return abs(alpha.rational_value()) <= 1
    return modulus_status(alpha.minpoly, lambda bits: alpha.ball(bits, cap), cap) <= 0


def verify_sigma_lower_bound(fn: SeriesFunction, D: int, d_index: int,
                             budget: int | None = DEFAULT_BUDGET,
                             cap: int = DEFAULT_PRECISION_CAP) -> SigmaReport:
    """Every ``alpha in E_{D, phi(N_d)+1}`` in the closed unit disk has ``h(f(alpha)) <= N_d``.

    The count is compared with ``e^{D(D+1) phi(N_d)} / 2``.  When ``phi(N_d)+1``
    is irrational a rational value just below it is used, which only shrinks
    the candidate set.
    """
    if not 1 <= D <= d_index <= fn.depth:
        raise DomainError("need 1 <= D <= d <= depth")
    N_d = fn.schedule.entry(d_index).N_delta
    phi = fn.schedule.phi
    phi_N = phi.enclosure(N_d, 128)
    q = _rational_below(phi_N + RealEnclosure.exact(1))
    census = enumerate_E(D, q, budget, cap)
    count = 0
    failures = []
    for alpha in census.algebraics():
        if not in_closed_unit_disk(alpha, cap):
            continue
        count += 1
        val = eval_exact_at_algebraic(fn, alpha, 0, witness=False).value
        v = height_le(val, N_d, cap=cap)
        if v.undecided:
            raise CertificationError(f"height of f at {alpha.minpoly} undecided", undecided=[alpha])
        if not v.at_most:
            failures.append(str(alpha.minpoly))
    k = D * (D + 1)
    check = certify_bound("e^(D(D+1)phi(N_d))/2", "lower", False,
                          lambda prec: real_eval(lambda: iv.exp(k * phi.iv_value(N_d)) / 2, prec), count, cap)
    return SigmaReport(D, d_index, N_d, phi_N, q, count, tuple(failures), check)


@dataclass(frozen=True)
class WitnessReport:
    degrees: tuple[int, ...]
    degrees_increase: bool
    z0_outside: str | None
    outside_nonzero: bool | None
    z0_inside: str | None
    inside_zero: bool | None

    @property
    def passed(self) -> bool:
        return self.degrees_increase and self.outside_nonzero is not False and self.inside_zero is not False

    def to_json(self) -> dict:
        return {"degrees": list(self.degrees), "degrees_increase": self.degrees_increase,
                "z0_outside": self.z0_outside, "outside_nonzero": self.outside_nonzero,
                "z0_inside": self.z0_inside, "inside_zero": self.inside_zero, "passed": self.passed}


def check_transcendence_witness(fn: SeriesFunction, K: int) -> WitnessReport:
    """Degrees ``k eps_k`` increase, ``P_K(z0) != 0`` for a fresh ``z0`` of level ``K+1``."""
    if fn.depth < 2 or not 1 <= K < fn.depth:
        raise DomainError("need depth >= 2 and 1 <= K < depth")
    degs = []
    for k in range(1, fn.depth + 1):
        cs = fn.census(k).classes
        degs.append(sum(fn._factor_power(c, k) * (len(c) - 1) for c in cs))
    increasing = all(a < b for a, b in zip(degs, degs[1:]))
    fresh = [c for c in fn.census(K + 1).classes if not fn.census(K).contains_class(c)]
    fresh.sort(key=lambda c: (len(c), tuple(reversed(c))))
    out_label = out_ok = None
    if fresh:
        z0 = AlgebraicNumber.roots_of(IntPolynomial(fresh[0]))[0]
        out_label = str(z0.minpoly)
        out_ok = not fn.derivative_at(K, z0, 0).is_zero()
    inside = fn.census(K).classes
    in_label = in_ok = None
    if inside:
        z1 = AlgebraicNumber.roots_of(IntPolynomial(inside[0]))[0]
        in_label = str(z1.minpoly)
        in_ok = fn.derivative_at(K, z1, 0).is_zero()
    return WitnessReport(tuple(degs), increasing, out_label, out_ok, in_label, in_ok)


def tail_majorant_checks(fn: SeriesFunction, cap: int = DEFAULT_PRECISION_CAP) -> list[tuple[int, bool]]:
    """``|a_k| sup_{|z| <= k} |P_k| <= b_k`` on every built level, via ``prod (k + |beta|)``."""
    out = []
    for k in range(1, fn.depth + 1):
        entry = fn.schedule.entry(k)
        bound = Fraction(1)
        for c in fn.census(k).classes:
            roots = AlgebraicNumber.roots_of(IntPolynomial(c))
            prod = Fraction(1)
            for r in roots:
                prod = round_up(prod * (k + r.root_box.abs_upper()), 64)
            factor = prod if fn.variant == "f" else c[-1] * prod
            bound = round_up(bound * round_up(factor ** fn._factor_power(c, k), 64), 64)
        out.append((k, entry.a_delta * bound <= entry.b_delta))
    return out


def dumps_pk(k: int, N: Fraction, poly: RatPolynomial | IntPolynomial) -> str:
    """``P_k`` in the cache line format with a denominator header extension."""
    rp = poly if isinstance(poly, RatPolynomial) else RatPolynomial(poly, 1)
    body = rp.numerator.to_text() + "\n"
    import hashlib

    digest = hashlib.sha256(body.encode()).hexdigest()
    return (f"HEIGHTCENSUS v1 Pk d={k} N={frac_str(N)} den={rp.denominator}\n"
            f"count=1 sha256={digest}\n{body}")


def loads_pk(text: str) -> RatPolynomial:
    import hashlib

    from .errors import CacheFormatError

    lines = text.split("\n")
    head = lines[0].split()
    if len(head) != 6 or head[0] != "HEIGHTCENSUS" or head[2] != "Pk" or not head[5].startswith("den="):
        raise CacheFormatError("not a P_k file")
    meta = dict(kv.split("=", 1) for kv in lines[1].split())
    body = "\n".join(lines[2:])
    if hashlib.sha256(body.encode()).hexdigest() != meta.get("sha256"):
        raise CacheFormatError("checksum mismatch")
    return RatPolynomial(IntPolynomial.from_text(lines[2]), int(head[5][4:]))
