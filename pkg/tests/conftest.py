"""Shared helpers: deterministic random scalars and reference constants."""

from __future__ import annotations

import random
from fractions import Fraction

from romikcf.exact import QuadSurd, Scalar, parse_scalar, scalar_isqrt_floor
from romikcf.rcf import RcfExpansion, evaluate

# The purely periodic point with repeating block 6,2,1,2,4,1,1; the
# golden-ratio quotient below agrees with it to ~1.9e-8 and shares its
# first eight partial quotients, but is a different quadratic irrational.
X_PERIODIC = parse_scalar("(sqrt(72901)-227)/274")
X_GOLDEN_LABEL = parse_scalar("(250*sqrt(5)-250)/1969")
SQRT2_OVER_2 = parse_scalar("sqrt(2)/2")
GOLDEN = parse_scalar("(sqrt(5)-1)/2")


def random_rational(rng: random.Random, max_den: int = 500) -> Fraction:
    q = rng.randint(2, max_den)
    return Fraction(rng.randint(1, q - 1), q)


def random_surd(rng: random.Random, max_digit: int = 6) -> QuadSurd:
    """Random quadratic irrational in (0,1) built from a random periodic
    continued fraction (guaranteed irrational)."""
    pre = tuple(rng.randint(1, max_digit) for _ in range(rng.randint(0, 3)))
    period = tuple(rng.randint(1, max_digit) for _ in range(rng.randint(1, 5)))
    value = evaluate(RcfExpansion(0, pre, period))
    assert isinstance(value, QuadSurd)
    return value


def random_unit_scalar(rng: random.Random) -> Scalar:
    return random_surd(rng) if rng.random() < 0.5 else random_rational(rng)


def first_two_partial_quotients(x: Scalar) -> tuple[int, int | None]:
    """(a1, a2) of x in (0,1), a2 = None when the expansion stops."""
    inv = 1 / x if isinstance(x, QuadSurd) else 1 / Fraction(x)
    a1 = scalar_isqrt_floor(inv)
    rem = inv - a1
    if rem == 0:
        return a1, None
    inv2 = 1 / rem
    return a1, scalar_isqrt_floor(inv2)
