"""The three-branch interval map, its digit functions and inverse branches."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .errors import OutOfDomain
from .exact import Mobius, QuadSurd, Scalar, compare, scalar_to_json

ZERO = Fraction(0)
ONE = Fraction(1)
THIRD = Fraction(1, 3)
HALF = Fraction(1, 2)


class Branch(Enum):
    LEFT = "left"
    MIDDLE = "middle"
    RIGHT = "right"


# Forward branches as integer Moebius matrices:
#   left x/(1-2x), middle 1/x-2, right 2-1/x.
STEP_MATRIX = {
    Branch.LEFT: Mobius(1, 0, -2, 1),
    Branch.MIDDLE: Mobius(-2, 1, 1, 0),
    Branch.RIGHT: Mobius(2, -1, 1, 0),
}

# Inverse branches: y/(1+2y) into [0,1/3], 1/(2+y) into [1/3,1/2],
# 1/(2-y) into [1/2,1].
INVERSE_MATRIX = {
    Branch.LEFT: Mobius(1, 0, 2, 1),
    Branch.MIDDLE: Mobius(0, 1, 1, 2),
    Branch.RIGHT: Mobius(0, 1, -1, 2),
}


@dataclass(frozen=True)
class DigitPair:
    """One (delta, epsilon) symbol; the pair (-1, -1) cannot occur."""

    delta: int
    epsilon: int

    def __post_init__(self):
        if self.delta not in (-1, 1) or self.epsilon not in (-1, 1):
            raise ValueError("delta and epsilon must be +-1")
        if self.delta == -1 and self.epsilon == -1:
            raise ValueError("the pair (-1, -1) does not occur")

    @property
    def branch(self) -> Branch:
        if self.delta == -1:
            return Branch.LEFT
        return Branch.MIDDLE if self.epsilon == 1 else Branch.RIGHT

    @classmethod
    def from_branch(cls, b: Branch) -> DigitPair:
        if b is Branch.LEFT:
            return cls(-1, 1)
        return cls(1, 1) if b is Branch.MIDDLE else cls(1, -1)


def _check_domain(x: Scalar) -> None:
    if compare(x, ZERO) < 0 or compare(x, ONE) > 0:
        raise OutOfDomain(f"{x} is outside [0, 1]")


def classify(x: Scalar) -> Branch:
    """Branch of x: left on [0,1/3), middle on [1/3,1/2), right on [1/2,1]."""
    _check_domain(x)
    if compare(x, THIRD) < 0:
        return Branch.LEFT
    return Branch.MIDDLE if compare(x, HALF) < 0 else Branch.RIGHT


def digit_pair(x: Scalar) -> DigitPair:
    """The (delta, epsilon) symbol of x."""
    return DigitPair.from_branch(classify(x))


def romik_step(x: Scalar) -> Scalar:
    """One application of the interval map, exact."""
    return STEP_MATRIX[classify(x)].apply(x)


def farey_step(x: Scalar) -> Scalar:
    """The tent map x/(1-x) on [0,1/2], (1-x)/x on [1/2,1], exact."""
    _check_domain(x)
    if compare(x, HALF) < 0:
        return Mobius(1, 0, -1, 1).apply(x)
    return Mobius(-1, 1, 1, 0).apply(x)


def inverse_branch(b: Branch, y: Scalar) -> Scalar:
    """The inverse of branch b applied to y in [0,1]."""
    _check_domain(y)
    return INVERSE_MATRIX[b].apply(y)


@dataclass(frozen=True)
class OrbitRecord:
    """A computed orbit prefix with its termination/periodicity data."""

    points: tuple[Scalar, ...]
    terminal: Optional[str] = None  # "zero" | "one" | None
    preperiod: Optional[int] = None
    period: Optional[int] = None
    truncated: bool = False

    def to_json(self) -> dict:
        return {
            "points": [scalar_to_json(p) for p in self.points],
            "terminal": self.terminal,
            "preperiod": self.preperiod,
            "period": self.period,
            "truncated": self.truncated,
        }


def romik_orbit(x: Scalar, max_steps: int = 10_000) -> OrbitRecord:
    """Orbit of x: rationals run until {0,1}, surds until a state repeats.

    Rational orbits are finite because denominators strictly decrease;
    surd orbits are eventually periodic, detected by hashing the canonical
    coefficient tuple of each iterate.
    """
    _check_domain(x)
    points: list[Scalar] = [x]
    if isinstance(x, QuadSurd):
        seen = {x: 0}
        for _ in range(max_steps):
            y = romik_step(points[-1])
            if y in seen:
                k = seen[y]
                return OrbitRecord(
                    tuple(points), preperiod=k, period=len(points) - k
                )
            seen[y] = len(points)
            points.append(y)
        return OrbitRecord(tuple(points), truncated=True)
    for _ in range(max_steps):
        last = points[-1]
        if last == 0:
            return OrbitRecord(tuple(points), terminal="zero")
        if last == 1:
            return OrbitRecord(tuple(points), terminal="one")
        points.append(romik_step(last))
    return OrbitRecord(tuple(points), truncated=True)
