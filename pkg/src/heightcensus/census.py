"""Exhaustive enumeration of bounded-degree, bounded-height algebraic numbers.

Sets handled here (all counts exact):

* ``P(d, H)``   primitive irreducible degree-d polynomials, positive leading
  coefficient, coefficients bounded by ``H``;
* ``A(d, H)``   their roots (exact degree d), ``A_{<=D}(H)`` the union over d <= D;
* ``Eis(D, H)`` the 2-Eisenstein subfamily with coprime top two coefficients;
* ``E(D, N)``   algebraic numbers of degree <= D and absolute log height <= N.

Every count is paired with the corresponding published bounds, compared with
certified enclosures.
"""

from __future__ import annotations

import hashlib
import itertools
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np
from mpmath import iv

from .enclosures import (
    DEFAULT_PRECISION_CAP,
    RealEnclosure,
    frac_str,
    precision_schedule,
    real_eval,
    to_iv,
    zeta_enclosure,
)
from .errors import BudgetExceeded, CacheFormatError, CertificationError, DomainError
from .heights import (
    HeightThreshold,
    _decide_quadratic,
    decide_mahler_le,
    modulus_status,
)
from .polynum import AlgebraicNumber, IntPolynomial, irreducible_coeffs, is_two_eisenstein
from .rootfind import isolate

DEFAULT_BUDGET = 4_000_000


# ---------------------------------------------------------------------------
# tables of certified comparisons


@dataclass(frozen=True)
class BoundCheck:
    """One comparison ``bound < count`` (lower side) or ``count <= bound`` (upper side)."""

    label: str
    side: str
    strict: bool
    bound: RealEnclosure
    count: int
    passed: bool

    def to_json(self) -> dict:
        return {"label": self.label, "side": self.side, "strict": self.strict,
                "bound": self.bound.to_json(), "bound_approx": float(self.bound.mid),
                "count": str(self.count), "passed": self.passed}


@dataclass(frozen=True)
class CensusTable:
    kind: str
    degree: int
    H: int | None
    N: Fraction | None
    count: int
    checks: tuple[BoundCheck, ...] = ()
    extra: tuple[tuple[str, object], ...] = ()

    @property
    def verdict(self) -> str:
        return "pass" if all(c.passed for c in self.checks) else "fail"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    @property
    def paper_lower(self) -> RealEnclosure | None:
        return next((c.bound for c in self.checks if c.side == "lower"), None)

    @property
    def paper_upper(self) -> RealEnclosure | None:
        return next((c.bound for c in self.checks if c.side == "upper"), None)

    def extra_dict(self) -> dict:
        return dict(self.extra)

    def param_str(self) -> str:
        return f"H={self.H}" if self.H is not None else f"N={frac_str(self.N)}"

    def to_json(self) -> dict:
        return {"kind": self.kind, "degree": self.degree,
                "H": self.H, "N": None if self.N is None else frac_str(self.N),
                "count": str(self.count), "verdict": self.verdict,
                "checks": [c.to_json() for c in self.checks],
                "extra": {k: (str(v) if isinstance(v, (int, Fraction)) else v) for k, v in self.extra}}


def certify_bound(label: str, side: str, strict: bool, bound: Callable[[int], RealEnclosure],
                  count: int, cap: int = DEFAULT_PRECISION_CAP) -> BoundCheck:
    """Decide the comparison of an exact count against a real bound known by enclosures."""
    enc = None
    for prec in precision_schedule(64, cap):
        enc = bound(prec)
        if side == "lower":
            if enc.upper < count or (not strict and enc.upper <= count):
                return BoundCheck(label, side, strict, enc, count, True)
            if enc.lower > count or (strict and enc.lower >= count):
                return BoundCheck(label, side, strict, enc, count, False)
        else:
            if count < enc.lower or (not strict and count <= enc.lower):
                return BoundCheck(label, side, strict, enc, count, True)
            if count > enc.upper or (strict and count >= enc.upper):
                return BoundCheck(label, side, strict, enc, count, False)
    raise CertificationError(f"bound '{label}' undecided at precision cap {cap}", undecided=[label])


def _exact(q) -> Callable[[int], RealEnclosure]:
    return lambda prec: RealEnclosure.exact(q)


def _iv_bound(fn: Callable[[], object]) -> Callable[[int], RealEnclosure]:
    return lambda prec: real_eval(fn, prec)


# ---------------------------------------------------------------------------
# budget guard


def _check_budget(estimate: int, budget: int | None, what: str) -> None:
    if budget is not None and estimate > budget:
        raise BudgetExceeded(f"{what}: candidate space {estimate} exceeds budget {budget}",
                             estimate, budget)


def estimate_P(d: int, H: int) -> int:
    return H * (2 * H + 1) ** d


def estimate_A(D: int, H: int) -> int:
    """The crude candidate-space size ``D H (2H+1)^D``."""
    return D * H * (2 * H + 1) ** D


@lru_cache(maxsize=256)
def coefficient_box(d: int, N: Fraction) -> tuple[int, ...]:
    """Ascending bounds ``[C(d,i) e^{dN}]`` on ``|a_i|`` for members of degree d.

    From ``|a_i| <= C(d,i) M(alpha)`` and ``M(alpha) <= e^{dN}``.  Since
    ``C(d,i) <= 2^{d-1}`` this box lies inside the usual-height ceiling
    ``2^{d-1} e^{dN}``.
    """
    thr = HeightThreshold(N, d)
    return tuple(thr.floor_of_multiple(math.comb(d, i)) for i in range(d + 1))


def estimate_E_degree(d: int, N: Fraction) -> int:
    box = coefficient_box(d, Fraction(N))
    size = box[-1]
    for b in box[:-1]:
        size *= 2 * b + 1
    return size


def estimate_E(D: int, N: Fraction) -> int:
    return sum(estimate_E_degree(d, Fraction(N)) for d in range(1, D + 1))


# ---------------------------------------------------------------------------
# enumeration of P(d, H)


def _gcd_ok(c: Sequence[int]) -> bool:
    g = 0
    for x in c:
        g = math.gcd(g, x)
        if g == 1:
            return True
    return g == 1


def _scan_P_slice(d: int, H: int, lead: int) -> list[tuple[int, ...]]:
    out = []
    rng = range(-H, H + 1)
    for rest in itertools.product(rng, repeat=d):
        c = tuple(reversed((lead,) + rest))  # rest is listed from a_{d-1} down to a_0
        if not _gcd_ok(c):
            continue
        if d > 1 and c[0] == 0:
            continue
        if irreducible_coeffs(c):
            out.append(c)
    return out


def _map_slices(fn, args: list[tuple], jobs: int) -> list:
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, *zip(*args)))
    return [fn(*a) for a in args]


def enumerate_P(d: int, H: int, budget: int | None = DEFAULT_BUDGET, jobs: int = 1) -> Iterator[IntPolynomial]:
    """Members of ``P(d, H)`` in lexicographic order of the leading-first coefficient tuple."""
    yield from (IntPolynomial(c) for c in P_coeffs(d, H, budget, jobs))


@lru_cache(maxsize=64)
def _P_cached(d: int, H: int) -> tuple[tuple[int, ...], ...]:
    slices = [_scan_P_slice(d, H, lead) for lead in range(1, H + 1)]
    return _sorted_classes(c for s in slices for c in s)


def P_coeffs(d: int, H: int, budget: int | None = DEFAULT_BUDGET, jobs: int = 1) -> tuple[tuple[int, ...], ...]:
    if d < 1 or H < 1:
        raise DomainError("enumerate_P needs d >= 1 and H >= 1")
    _check_budget(estimate_P(d, H), budget, f"P({d},{H})")
    if jobs > 1:
        slices = _map_slices(_scan_P_slice, [(d, H, lead) for lead in range(1, H + 1)], jobs)
        return _sorted_classes(c for s in slices for c in s)
    return _P_cached(d, H)


def _sorted_classes(cs: Iterable[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(set(cs), key=lambda c: (len(c) - 1, tuple(reversed(c)))))


def enumerate_algebraics(d: int, H: int, budget: int | None = DEFAULT_BUDGET,
                         jobs: int = 1) -> list[AlgebraicNumber]:
    """All roots of all members of ``P(d, H)``, each with its isolating disk."""
    out = []
    for c in P_coeffs(d, H, budget, jobs):
        p = IntPolynomial(c)
        out.extend(AlgebraicNumber(p, box) for box in isolate(c))
    return out


# ---------------------------------------------------------------------------
# A(D, H) and the Eisenstein family


def count_A(D: int, H: int, budget: int | None = DEFAULT_BUDGET, jobs: int = 1,
            cap: int = DEFAULT_PRECISION_CAP) -> CensusTable:
    """``card A_{<=D}(H)`` with the upper bound ``D H (2H+1)^D`` and the degree-D lower bounds."""
    if D < 1 or H < 1:
        raise DomainError("count_A needs D >= 1 and H >= 1")
    _check_budget(estimate_A(D, H), budget, f"A({D},{H})")
    per_degree = {d: len(P_coeffs(d, H, None, jobs)) for d in range(1, D + 1)}
    exact = {d: d * n for d, n in per_degree.items()}
    total = sum(exact.values())
    checks = [certify_bound("D H (2H+1)^D", "upper", False, _exact(D * H * (2 * H + 1) ** D), total, cap)]
    if D == 1:
        checks.append(certify_bound("(H-1)^2", "lower", True, _exact((H - 1) ** 2), exact[1], cap))
    elif H >= 2:
        checks.append(certify_bound("(D/8)(H-2)^(D+1)", "lower", True,
                                    _exact(Fraction(D, 8) * (H - 2) ** (D + 1)), exact[D], cap))
    extra = tuple((f"card_P_{d}", n) for d, n in per_degree.items()) + \
        tuple((f"card_A_exact_{d}", n) for d, n in exact.items())
    return CensusTable("A_cum", D, H, None, total, tuple(checks), extra)


def count_A_exact(d: int, H: int, budget: int | None = DEFAULT_BUDGET, jobs: int = 1) -> int:
    return d * len(P_coeffs(d, H, budget, jobs))


def c_H(H: int) -> int:
    """Pairs ``1 <= a_0 <= H``, ``|a_1| <= H``, ``a_1`` even, ``gcd(a_0, a_1) = 1``."""
    return sum(1 for a0 in range(1, H + 1) for a1 in range(-H, H + 1)
               if a1 % 2 == 0 and math.gcd(a0, a1) == 1)


def eisenstein_formula(D: int, H: int) -> int:
    return c_H(H) * (2 * (H // 2) + 1) ** (D - 2) * (2 * ((H + 2) // 4))


def eisenstein_coeffs(D: int, H: int) -> list[tuple[int, ...]]:
    """Members of the 2-Eisenstein family (ascending coefficients), in lexicographic order."""
    evens = [a for a in range(-H, H + 1) if a % 2 == 0]
    consts = [a for a in evens if a % 4 != 0]
    out = []
    for lead in range(1, H + 1, 2):
        for a1 in evens:
            if math.gcd(lead, a1) != 1:
                continue
            for mid in itertools.product(evens, repeat=D - 2):
                for a_d in consts:
                    out.append(tuple(reversed((lead, a1) + mid + (a_d,))))
    return list(_sorted_classes(out))


def count_eisenstein(D: int, H: int, budget: int | None = DEFAULT_BUDGET,
                     cap: int = DEFAULT_PRECISION_CAP) -> CensusTable:
    if D < 2 or H < 2:
        raise DomainError("the Eisenstein family needs D >= 2 and H >= 2")
    _check_budget(estimate_P(D, H), budget, f"Eis({D},{H})")
    members = eisenstein_coeffs(D, H)
    all_eisenstein = all(is_two_eisenstein(IntPolynomial(c)) for c in members)
    all_irreducible = all(irreducible_coeffs(c) for c in members)
    in_P = all(c[-1] >= 1 and max(abs(x) for x in c) <= H and _gcd_ok(c) for c in members)
    n = len(members)
    formula = eisenstein_formula(D, H)
    cH = c_H(H)
    checks = (
        certify_bound("c_H (2[H/2]+1)^(D-2) 2[(H+2)/4]", "lower", False, _exact(formula), n, cap),
        certify_bound("c_H (2[H/2]+1)^(D-2) 2[(H+2)/4]", "upper", False, _exact(formula), n, cap),
        certify_bound("(c_H/2)(H-2)^(D-1)", "lower", True, _exact(Fraction(cH, 2) * (H - 2) ** (D - 1)), n, cap),
    )
    structural = BoundCheck("members are 2-Eisenstein, irreducible and in P(D,H)", "lower", False,
                            RealEnclosure.exact(0), n, all_eisenstein and all_irreducible and in_P)
    extra = (("c_H", cH), ("formula", formula))
    return CensusTable("Eis", D, H, None, n, checks + (structural,), extra)


# ---------------------------------------------------------------------------
# E(D, N)


@dataclass(frozen=True)
class ECensus:
    """The classes (minimal polynomials) making up ``E_{D,N}``."""

    D: int
    N: Fraction
    classes: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return sum(len(c) - 1 for c in self.classes)

    def degree_classes(self, d: int) -> tuple[tuple[int, ...], ...]:
        return tuple(c for c in self.classes if len(c) - 1 == d)

    def count_degree(self, d: int) -> int:
        return d * sum(1 for c in self.classes if len(c) - 1 == d)

    def polynomials(self) -> list[IntPolynomial]:
        return [IntPolynomial(c) for c in self.classes]

    def algebraics(self, bits: int = 53) -> Iterator[AlgebraicNumber]:
        for c in self.classes:
            p = IntPolynomial(c)
            for box in isolate(c, bits):
                yield AlgebraicNumber(p, box)

    def contains_class(self, c: Sequence[int]) -> bool:
        return tuple(c) in self._class_set()

    def _class_set(self) -> frozenset:
        cached = self.__dict__.get("_set")
        if cached is None:
            cached = frozenset(self.classes)
            object.__setattr__(self, "_set", cached)
        return cached


def _scan_E_generic(d: int, N: Fraction, lead: int, cap: int) -> list[tuple[int, ...]]:
    box = coefficient_box(d, N)
    thr = HeightThreshold(N, d, cap)
    ranges = [range(-box[i], box[i] + 1) for i in range(d - 1, -1, -1)]
    out = []
    for rest in itertools.product(*ranges):
        c = tuple(reversed((lead,) + rest))
        if d > 1 and c[0] == 0:
            continue
        if not _gcd_ok(c) or not irreducible_coeffs(c):
            continue
        v = decide_mahler_le(c, thr)
        if v.undecided:
            raise CertificationError(f"height of {IntPolynomial(c)} undecided at cap {cap}", undecided=[c])
        if v.at_most:
            out.append(c)
    return out


# Float comparisons below are exact decisions: operands are integers below 2**40
# and a correctly rounded square root, so the relative error is under 2**-50,
# far inside the 1e-9 margin; anything within the margin goes to exact arithmetic.
_MARGIN = 1e-9


def _scan_E_quadratic(N: Fraction, lead: int, cap: int) -> list[tuple[int, ...]]:
    box = coefficient_box(2, N)
    thr = HeightThreshold(N, 2, cap)
    if thr.N == 0:
        return _scan_E_generic(2, N, lead, cap)
    E = thr.floor
    E_float = float(thr.enclosure(128).mid)
    B, C = box[1], box[0]
    b = np.arange(-B, B + 1, dtype=np.int64)[:, None]
    c = np.arange(-C, C + 1, dtype=np.int64)[None, :]
    a = np.int64(lead)
    bb, cc = np.broadcast_arrays(b, c)
    mask = (cc != 0) & (np.gcd(np.gcd(bb, cc), a) == 1)
    mask &= np.maximum(np.abs(cc), a) <= E
    disc = bb * bb - 4 * a * cc
    pos = np.maximum(disc, 0)
    s = np.floor(np.sqrt(pos.astype(np.float64))).astype(np.int64)
    s = np.where(s * s > pos, s - 1, s)
    s = np.where((s + 1) * (s + 1) <= pos, s + 1, s)
    complex_roots = disc < 0
    mask &= complex_roots | (s * s != disc)
    x = (np.abs(bb).astype(np.float64) + np.sqrt(pos.astype(np.float64))) / 2
    accept = complex_roots | (x < E_float * (1 - _MARGIN))
    unsure = ~complex_roots & ~accept & (x <= E_float * (1 + _MARGIN))
    out = []
    for i, j in zip(*np.nonzero(mask & (accept | unsure))):
        coeffs = (int(cc[i, j]), int(bb[i, j]), lead)
        if unsure[i, j]:
            v = _decide_quadratic(coeffs, thr)
            if v.undecided:
                raise CertificationError("quadratic height undecided", undecided=[coeffs])
            if not v.at_most:
                continue
        out.append(coeffs)
    return out


def _scan_E_slice(d: int, N: Fraction, lead: int, cap: int) -> list[tuple[int, ...]]:
    if d == 2:
        return _scan_E_quadratic(N, lead, cap)
    return _scan_E_generic(d, N, lead, cap)


_E_MEMO: dict[tuple[int, Fraction], tuple[tuple[int, ...], ...]] = {}


def _E_degree_classes(d: int, N: Fraction, cap: int, jobs: int) -> tuple[tuple[int, ...], ...]:
    key = (d, N)
    if key not in _E_MEMO:
        leads = range(1, coefficient_box(d, N)[-1] + 1)
        slices = _map_slices(_scan_E_slice, [(d, N, lead, cap) for lead in leads], jobs)
        _E_MEMO[key] = _sorted_classes(c for s in slices for c in s)
    return _E_MEMO[key]


def enumerate_E(D: int, N, budget: int | None = DEFAULT_BUDGET, cap: int = DEFAULT_PRECISION_CAP,
                jobs: int = 1, cache_dir: str | os.PathLike | None = None) -> ECensus:
    """``E_{D,N}`` as its minimal polynomials; ``.count`` is ``epsilon_{D,N}``.

    Any candidate whose height comparison stays undecided at the precision cap
    aborts the run with a :class:`CertificationError` listing it.
    """
    N = Fraction(N)
    if D < 1:
        raise DomainError("enumerate_E needs D >= 1")
    if N < 0:
        return ECensus(D, N, ())
    _check_budget(estimate_E(D, N), budget, f"E({D},{frac_str(N)})")
    path = None
    if cache_dir is not None:
        path = Path(cache_dir) / cache_filename("E", D, N=N)
        if path.exists():
            loaded = cache_load(path, "E", D, N=N)
            return ECensus(D, N, tuple(p.coeffs for p in loaded))
    classes = []
    for d in range(1, D + 1):
        classes.extend(_E_degree_classes(d, N, cap, jobs))
    census = ECensus(D, N, _sorted_classes(classes))
    if path is not None:
        cache_save(path, "E", D, census.polynomials(), N=N)
    return census


def brute_force_E1(N_floor: int) -> int:
    """Independent count of rationals ``a/b`` in lowest terms with ``max(|a|, |b|) <= N_floor``."""
    seen = set()
    for b in range(1, N_floor + 1):
        for a in range(-N_floor, N_floor + 1):
            q = Fraction(a, b)
            seen.add(q)
    return len(seen)


def verify_lemma1(D: int, N, budget: int | None = DEFAULT_BUDGET, cap: int = DEFAULT_PRECISION_CAP,
                  jobs: int = 1, cache_dir=None) -> CensusTable:
    """``e^{D(D+1)(N-1)} < epsilon_{D,N} <= e^{D(D+1)(N+1)}``."""
    N = Fraction(N)
    census = enumerate_E(D, N, budget, cap, jobs, cache_dir)
    n = census.count
    k = D * (D + 1)
    checks = (
        certify_bound("e^(D(D+1)(N-1))", "lower", True, _iv_bound(lambda: iv.exp(k * (to_iv(N) - 1))), n, cap),
        certify_bound("e^(D(D+1)(N+1))", "upper", False, _iv_bound(lambda: iv.exp(k * (to_iv(N) + 1))), n, cap),
    )
    extra = tuple((f"card_exact_degree_{d}", census.count_degree(d)) for d in range(1, D + 1))
    return CensusTable("E", D, None, N, n, checks, extra)


# ---------------------------------------------------------------------------
# unit disk


def _roots_in_closed_disk(c: tuple[int, ...], cap: int) -> int:
    d = len(c) - 1
    if d == 1:
        return 1 if abs(c[0]) <= abs(c[1]) else 0
    if d == 2:
        cc, b, a = c
        if b * b - 4 * a * cc < 0:
            return 2 if abs(cc) <= abs(a) else 0  # |root|^2 = c / a
        # irrational real roots: neither is +-1
        p1, pm1 = a + b + cc, a - b + cc
        if (p1 > 0) != (pm1 > 0):
            return 1
        if p1 > 0 and abs(b) < 2 * a:
            return 2
        return 0
    p = IntPolynomial(c)
    inside = 0
    for box in isolate(c, 53, cap):
        alpha = AlgebraicNumber(p, box)
        if modulus_status(p, lambda bits, a=alpha: a.ball(bits, cap), cap) <= 0:
            inside += 1
    return inside


@dataclass(frozen=True)
class HalfDiskReport:
    D: int
    N: Fraction
    inside: int
    total: int
    inversion_closed: bool

    @property
    def passed(self) -> bool:
        return 2 * self.inside >= self.total

    def to_json(self) -> dict:
        return {"D": self.D, "N": frac_str(self.N), "inside": self.inside, "total": self.total,
                "inversion_closed": self.inversion_closed, "passed": self.passed}


def inverse_class(c: Sequence[int]) -> tuple[int, ...] | None:
    """Minimal polynomial of ``1/alpha`` (coefficient reversal, sign normalised); None for alpha = 0."""
    if c[0] == 0:
        return None
    rev = tuple(reversed(c))
    return rev if rev[-1] > 0 else tuple(-x for x in rev)


def verify_half_disk(D: int, N, budget: int | None = DEFAULT_BUDGET, cap: int = DEFAULT_PRECISION_CAP,
                     jobs: int = 1, cache_dir=None) -> HalfDiskReport:
    """At least half of ``E_{D,N}`` lies in the closed unit disk (exact count)."""
    N = Fraction(N)
    census = enumerate_E(D, N, budget, cap, jobs, cache_dir)
    inside = sum(_roots_in_closed_disk(c, cap) for c in census.classes)
    closed = all(census.contains_class(inv) for c in census.classes
                 if (inv := inverse_class(c)) is not None)
    return HalfDiskReport(D, N, inside, census.count, closed)


# ---------------------------------------------------------------------------
# exact degree and reference constants


def loher_c3(d: int) -> Callable[[int], RealEnclosure]:
    """``c_3(d) = 2^{-d-2} (d+1)^{-(d+1)/2}``."""
    def enc(prec: int) -> RealEnclosure:
        if (d + 1) % 2 == 0:
            return RealEnclosure.exact(Fraction(1, 2 ** (d + 2) * (d + 1) ** ((d + 1) // 2)))
        return real_eval(lambda: iv.mpf(1) / (2 ** (d + 2) * iv.sqrt(iv.mpf(d + 1)) ** (d + 1)), prec)
    return enc


def mv_gamma(d: int) -> Fraction:
    """``gamma(d) = 2^{d+1} (d+1)^delta prod_{k=1}^{delta} (2k)^{d-2k} / (2k+1)^{d+1-2k}``, exact."""
    delta = (d - 1) // 2
    g = Fraction(2 ** (d + 1) * (d + 1) ** delta)
    for k in range(1, delta + 1):
        g *= Fraction((2 * k) ** (d - 2 * k), (2 * k + 1) ** (d + 1 - 2 * k))
    return g


def mv_c4(d: int, cutoff: int = 24) -> RealEnclosure:
    """``c_4(d) = d gamma(d) / (2 zeta(d+1))`` with a certified zeta enclosure."""
    z = zeta_enclosure(d + 1, cutoff=cutoff)
    num = d * mv_gamma(d)
    return RealEnclosure(num / (2 * z.upper), num / (2 * z.lower))


def schanuel_constant(prec: int = 128) -> RealEnclosure:
    """``12 / pi^2``."""
    return real_eval(lambda: 12 / iv.pi ** 2, prec)


def schmidt_constant() -> RealEnclosure:
    """``8 / zeta(3)``."""
    z = zeta_enclosure(3, cutoff=24)
    return RealEnclosure(8 / z.upper, 8 / z.lower)


@dataclass(frozen=True)
class AsymptoticConstants:
    schanuel: RealEnclosure
    schmidt2: RealEnclosure
    loher_c3: Callable[[int], RealEnclosure]
    mv_gamma: Callable[[int], Fraction]
    mv_c4: Callable[[int], RealEnclosure]

    def to_json(self, degrees: Iterable[int] = (1, 2, 3)) -> dict:
        return {"schanuel": self.schanuel.to_json(), "schmidt2": self.schmidt2.to_json(),
                "loher_c3": {d: self.loher_c3(d)(128).to_json() for d in degrees},
                "mv_gamma": {d: frac_str(self.mv_gamma(d)) for d in degrees},
                "mv_c4": {d: self.mv_c4(d).to_json() for d in degrees}}


def asymptotic_constants(prec: int = 128) -> AsymptoticConstants:
    return AsymptoticConstants(schanuel_constant(prec), schmidt_constant(), loher_c3, mv_gamma, mv_c4)


def loher_applies(d: int, N: Fraction, cap: int = DEFAULT_PRECISION_CAP) -> bool:
    """Certified test of ``N >= (1/d) log 2``, i.e. ``e^{dN} >= 2``."""
    N = Fraction(N)
    if d * N == 0:
        return False
    for prec in precision_schedule(64, cap):
        enc = real_eval(lambda: iv.exp(d * to_iv(N)), prec)
        if enc.lower >= 2:
            return True
        if enc.upper < 2:
            return False
    raise CertificationError("Loher precondition undecided")


def verify_exact_degree_bounds(d: int, N, budget: int | None = DEFAULT_BUDGET,
                               cap: int = DEFAULT_PRECISION_CAP, jobs: int = 1,
                               cache_dir=None) -> CensusTable:
    """Count the degree-exactly-d part of ``E_{d,N}`` against the two-sided bounds and Loher's."""
    N = Fraction(N)
    census = enumerate_E(d, N, budget, cap, jobs, cache_dir)
    n = census.count_degree(d)
    k = d * (d + 1)
    Ni = lambda: to_iv(N)  # noqa: E731
    if d == 1:
        checks = [
            certify_bound("(e^N-1)^2", "lower", True, _iv_bound(lambda: (iv.exp(Ni()) - 1) ** 2), n, cap),
            certify_bound("2e^(2N)+e^N", "upper", False,
                          _iv_bound(lambda: 2 * iv.exp(2 * Ni()) + iv.exp(Ni())), n, cap),
        ]
    else:
        checks = [
            certify_bound("c_1(d,N) e^(d(d+1)N)", "lower", True,
                          _iv_bound(lambda: (iv.exp(-k) - iv.exp(-2 * d * Ni() + d * d - d)) * iv.exp(k * Ni())),
                          n, cap),
            certify_bound("c_2(d,N) e^(d(d+1)N)", "upper", True,
                          _iv_bound(lambda: (1 - iv.exp(-2 * d * (Ni() + d))) * iv.exp(k) * iv.exp(k * Ni())),
                          n, cap),
        ]
    checks.append(certify_bound("2^(2d^2+14d+11) e^(d(d+1)N)", "upper", False,
                                _iv_bound(lambda: iv.mpf(2) ** (2 * d * d + 14 * d + 11) * iv.exp(k * Ni())),
                                n, cap))
    applies = loher_applies(d, N, cap)
    if applies:
        c3 = loher_c3(d)
        checks.append(certify_bound("c_3(d) e^(d(d+1)N)", "lower", False,
                                    lambda prec: c3(prec) * real_eval(lambda: iv.exp(k * Ni()), prec), n, cap))
    extra = (("loher_applicable", applies),)
    return CensusTable("E_exact", d, None, N, n, tuple(checks), extra)


# ---------------------------------------------------------------------------
# cache files


CACHE_VERSION = "v1"


def cache_filename(kind: str, d: int, H: int | None = None, N: Fraction | None = None) -> str:
    param = f"H{H}" if H is not None else f"N{Fraction(N).numerator}_{Fraction(N).denominator}"
    return f"{kind}_d{d}_{param}.txt"


def _header(kind: str, d: int, H: int | None, N: Fraction | None) -> str:
    param = f"H={H}" if H is not None else f"N={frac_str(N)}"
    return f"HEIGHTCENSUS {CACHE_VERSION} {kind} d={d} {param}"


def cache_save(path: str | os.PathLike, kind: str, d: int, polys: Iterable[IntPolynomial],
               H: int | None = None, N: Fraction | None = None) -> Path:
    """Write a cache file (header, checksum line, sorted polynomial lines)."""
    polys = sorted(set(polys), key=lambda p: p.sort_key())
    body = "".join(p.to_text() + "\n" for p in polys)
    digest = hashlib.sha256(body.encode()).hexdigest()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(f"{_header(kind, d, H, N)}\ncount={len(polys)} sha256={digest}\n{body}")
    tmp.replace(path)
    return path


def cache_load(path: str | os.PathLike, kind: str | None = None, d: int | None = None,
               H: int | None = None, N: Fraction | None = None,
               sample_fraction: float = 0.01) -> list[IntPolynomial]:
    """Read and validate a cache file.

    Checks the header, the checksum, strict sortedness and, on a deterministic
    1% sample (at least one line), irreducibility.
    """
    text = Path(path).read_text()
    lines = text.split("\n")
    if len(lines) < 2:
        raise CacheFormatError("truncated cache file")
    head = lines[0].split()
    if len(head) != 5 or head[0] != "HEIGHTCENSUS":
        raise CacheFormatError("not a cache file")
    if head[1] != CACHE_VERSION:
        raise CacheFormatError(f"unsupported cache version {head[1]}")
    if kind is not None and d is not None and lines[0] != _header(kind, d, H, Fraction(N) if N is not None else None):
        raise CacheFormatError(f"cache header mismatch: {lines[0]!r}")
    meta = dict(kv.split("=", 1) for kv in lines[1].split())
    body = "\n".join(lines[2:])
    if hashlib.sha256(body.encode()).hexdigest() != meta.get("sha256"):
        raise CacheFormatError("checksum mismatch")
    rows = [ln for ln in lines[2:] if ln]
    if int(meta.get("count", -1)) != len(rows):
        raise CacheFormatError("count mismatch")
    polys = [IntPolynomial.from_text(ln) for ln in rows]
    keys = [p.sort_key() for p in polys]
    if any(k1 >= k2 for k1, k2 in zip(keys, keys[1:])):
        raise CacheFormatError("cache body is not strictly sorted")
    rng = random.Random(meta["sha256"])
    k = max(1, int(len(polys) * sample_fraction)) if polys else 0
    for p in rng.sample(polys, k):
        if not irreducible_coeffs(p.coeffs):
            raise CacheFormatError(f"cached polynomial {p} is reducible")
    return polys
