"""Planar extension of the interval map with its exactly-verifiable measure.

The density 1/(x+y-2xy)^2 integrates over a rectangle to the log of a
rational cross-ratio in K(x,y) = x+y-2xy, which turns measure invariance
into an identity of rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from .errors import CapExceeded, NoReturn, OutOfDomain, SeamPoint, SingularRect
from .exact import Scalar, compare, scalar_to_json
from .maps import (
    HALF,
    INVERSE_MATRIX,
    ONE,
    STEP_MATRIX,
    THIRD,
    ZERO,
    Branch,
    classify,
    romik_step,
)


@dataclass(frozen=True)
class PlanarPoint:
    x: Scalar
    y: Scalar

    def to_json(self) -> dict:
        return {"x": scalar_to_json(self.x), "y": scalar_to_json(self.y)}


def _check_unit(v: Scalar, name: str) -> None:
    if compare(v, ZERO) < 0 or compare(v, ONE) > 0:
        raise OutOfDomain(f"{name} = {v} outside [0, 1]")


def natext_step(p: PlanarPoint) -> PlanarPoint:
    """Planar map: x follows its branch, y the matching inverse branch."""
    _check_unit(p.x, "x")
    _check_unit(p.y, "y")
    b = classify(p.x)
    return PlanarPoint(STEP_MATRIX[b].apply(p.x), INVERSE_MATRIX[b].apply(p.y))


def natext_inverse(p: PlanarPoint) -> PlanarPoint:
    """Inverse planar map, branch read off the y coordinate.

    Raises SeamPoint on the measure-zero set where two branch preimages
    coexist: y in {1/3, 1/2}, and the two lines (x=1, y<1/3),
    (x=0, 1/3<y<1/2) whose preimage lands on an x-branch boundary.
    """
    _check_unit(p.x, "x")
    _check_unit(p.y, "y")
    if compare(p.y, THIRD) == 0 or compare(p.y, HALF) == 0:
        raise SeamPoint(f"y = {p.y} lies on an image seam")
    b = classify(p.y)
    if b is Branch.LEFT and compare(p.x, ONE) == 0:
        raise SeamPoint("preimage of (1, y) lands on the x = 1/3 boundary")
    if b is Branch.MIDDLE and compare(p.x, ZERO) == 0:
        raise SeamPoint("preimage of (0, y) lands on the x = 1/2 boundary")
    return PlanarPoint(INVERSE_MATRIX[b].apply(p.x), STEP_MATRIX[b].apply(p.y))


@dataclass(frozen=True)
class RationalRect:
    x1: Fraction
    x2: Fraction
    y1: Fraction
    y2: Fraction

    def __post_init__(self):
        for v in (self.x1, self.x2, self.y1, self.y2):
            if not 0 <= v <= 1:
                raise OutOfDomain(f"rectangle corner {v} outside [0, 1]")
        if not (self.x1 < self.x2 and self.y1 < self.y2):
            raise OutOfDomain("rectangle must be nondegenerate")

    def to_json(self) -> dict:
        return {"x1": str(self.x1), "x2": str(self.x2), "y1": str(self.y1), "y2": str(self.y2)}


def _kernel(x: Fraction, y: Fraction) -> Fraction:
    return x + y - 2 * x * y


def rect_log_argument(r: RationalRect) -> Fraction:
    """The rational Q(r) with measure(r) = log Q(r).

    Q = [K(x2,y1) K(x1,y2)] / [K(x1,y1) K(x2,y2)] for K(x,y) = x+y-2xy;
    the denominator factors vanish exactly when the rectangle touches the
    density's poles at (0,0) or (1,1).
    """
    den = _kernel(r.x1, r.y1) * _kernel(r.x2, r.y2)
    if den == 0:
        raise SingularRect(f"{r.to_json()} touches a density pole")
    return Fraction(_kernel(r.x2, r.y1) * _kernel(r.x1, r.y2), den)


@dataclass(frozen=True)
class MeasureResult:
    log_argument: Fraction
    value: float


def rect_measure(r: RationalRect) -> MeasureResult:
    q = rect_log_argument(r)
    return MeasureResult(q, math.log(q))


_BRANCH_OF_INTERVAL = (
    (Branch.LEFT, Fraction(0), THIRD),
    (Branch.MIDDLE, THIRD, HALF),
    (Branch.RIGHT, HALF, Fraction(1)),
)


def branch_of_rect(r: RationalRect) -> Branch:
    for b, lo, hi in _BRANCH_OF_INTERVAL:
        if lo <= r.x1 and r.x2 <= hi:
            return b
    raise OutOfDomain(f"x-range [{r.x1}, {r.x2}] spans more than one branch")


def image_rect(r: RationalRect) -> RationalRect:
    """Exact image rectangle; both coordinate maps are monotone on a branch."""
    b = branch_of_rect(r)
    fx = STEP_MATRIX[b].apply
    fy = INVERSE_MATRIX[b].apply
    xs = sorted([fx(r.x1), fx(r.x2)])
    ys = sorted([fy(r.y1), fy(r.y2)])
    return RationalRect(xs[0], xs[1], ys[0], ys[1])


@dataclass(frozen=True)
class InvarianceRecord:
    rect: RationalRect
    image: RationalRect
    log_argument: Fraction
    image_log_argument: Fraction
    equal: bool

    def to_json(self) -> dict:
        return {
            "rect": self.rect.to_json(),
            "image_rect": self.image.to_json(),
            "log_argument": str(self.log_argument),
            "equal": self.equal,
        }


def verify_invariance(r: RationalRect) -> InvarianceRecord:
    """Assert measure(r) = measure(image of r) as an identity of rationals."""
    img = image_rect(r)
    q1 = rect_log_argument(r)
    q2 = rect_log_argument(img)
    return InvarianceRecord(r, img, q1, q2, q1 == q2)


@dataclass(frozen=True)
class MarginalRecord:
    x1: Fraction
    x2: Fraction
    log_argument: Fraction
    closed_form: Fraction
    equal: bool


def marginal_density_check(x1: Fraction, x2: Fraction) -> MarginalRecord:
    """Full-height rectangles integrate the 1/(x(1-x)) marginal exactly."""
    x1, x2 = Fraction(x1), Fraction(x2)
    if not 0 < x1 <= x2 < 1:
        raise OutOfDomain("interval must sit inside (0, 1)")
    closed = Fraction(x2 * (1 - x1), x1 * (1 - x2))
    if x1 == x2:
        return MarginalRecord(x1, x2, Fraction(1), closed, closed == 1)
    q = rect_log_argument(RationalRect(x1, x2, Fraction(0), Fraction(1)))
    return MarginalRecord(x1, x2, q, closed, q == closed)


def in_region_o(p: PlanarPoint) -> bool:
    return compare(p.y, HALF) <= 0


def induced_step_O(p: PlanarPoint, cap: int = 100_000) -> tuple[PlanarPoint, int]:
    """First return to [0,1] x [0,1/2] under the planar map."""
    if not in_region_o(p):
        raise OutOfDomain(f"{p} is not in the inducing region")
    q = p
    for n in range(1, cap + 1):
        q = natext_step(q)
        if in_region_o(q):
            return q, n
    raise CapExceeded(f"no return within {cap} steps from {p}")


def oocf_jump(x: Scalar, cap: int = 100_000) -> Scalar:
    """One accelerated step: iterate to the first orbit point in [0,1/2],
    then apply the map once more."""
    _check_unit(x, "x")
    y = x
    for _ in range(cap):
        if compare(y, ONE) == 0:
            raise NoReturn("the orbit is absorbed at the fixed point 1")
        if compare(y, HALF) <= 0:
            return romik_step(y)
        y = romik_step(y)
    raise CapExceeded(f"orbit of {x} stayed above 1/2 for {cap} steps")
