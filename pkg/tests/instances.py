"""Seeded random instance families shared by the unit and acceptance tests."""

from __future__ import annotations

import random
from fractions import Fraction

from heightcensus.polynum import AlgebraicNumber, IntPolynomial, NumberFieldElement, parse_polynomial

FIELDS = ("X - 1", "X^2 - 2", "X^2 - X - 1", "X^2 + 1", "X^2 + X + 1", "2X^2 - 3",
          "X^3 + X + 1", "X^3 - 2", "X^3 - X - 1", "3X^3 - X + 1")


def _field(rng: random.Random) -> AlgebraicNumber:
    roots = AlgebraicNumber.roots_of(parse_polynomial(rng.choice(FIELDS)))
    return rng.choice(roots)


def _element(rng: random.Random, gen: AlgebraicNumber) -> NumberFieldElement:
    if rng.random() < 0.25 and gen.degree > 1:
        # powers of the generator give units and equality-prone cases
        return NumberFieldElement.gen(gen) ** rng.randint(1, 3) * rng.choice((1, -1))
    coords = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(gen.degree)]
    if not any(coords):
        coords[0] = Fraction(1)
    return NumberFieldElement(gen, tuple(coords))


def liouville_instance(rng: random.Random) -> tuple[dict, tuple[NumberFieldElement, ...], str]:
    gen = _field(rng)
    t = rng.choice((1, 2))
    point = tuple(_element(rng, gen) for _ in range(t))
    terms: dict[tuple[int, ...], int] = {}
    for _ in range(rng.randint(1, 4)):
        e = tuple(rng.randint(0, 2) for _ in range(t))
        terms[e] = terms.get(e, 0) + rng.choice((-1, 1)) * rng.randint(1, 5)
    terms = {e: c for e, c in terms.items() if c} or {(1,) + (0,) * (t - 1): 1}
    branch = "fixed_N" if gen.degree > 1 and rng.random() < 0.3 else "fixed_D"
    return terms, point, branch


# zeros live in the closed unit disk; R = 2 unless drawn otherwise
ZERO_FACTORS = ("X", "X - 1", "X + 1", "2X - 1", "X^2 + 1", "X^2 - X + 1", "2X^2 + 1", "X^2 + X + 1",
                "3X^2 - 1", "X^3 + X + 1", "2X + 1", "X^2 - 2X + 2")


def schwarz_instance(rng: random.Random):
    """``F`` as a product of factors; returns ``(F, zeros, R, r)`` with zeros in the closed ``r``-disk."""
    from heightcensus.transmachine import in_closed_disk

    r = Fraction(1)
    R = rng.choice((Fraction(3, 2), Fraction(2), Fraction(3)))
    F = IntPolynomial.constant(rng.randint(1, 3))
    zeros = []
    for _ in range(rng.randint(1, 3)):
        p = parse_polynomial(rng.choice(ZERO_FACTORS))
        k = rng.choice((1, 1, 2))
        F = F * p ** k
        for z in AlgebraicNumber.roots_of(p):
            if in_closed_disk(z, r):
                zeros.extend([z] * k)
    if rng.random() < 0.5:
        F = F * parse_polynomial(rng.choice(("X - 3", "X^2 + 5", "X + 2")))  # zero-free in the r-disk
    return F, zeros, R, r
