"""Orbit statistics: occupation-ratio experiments and the direct
skipped-convergent census comparing the two convergent families."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import DegenerateOrbit, OutOfDomain
from .exact import QuadSurd, Scalar, compare
from .expansion import convergents as romik_convergents
from .expansion import romik_digits
from .rcf import rcf_convergents, rcf_expand_surd

PRECISION_ENV = "ROMIK_PRECISION_BITS"
DEFAULT_PRECISION_BITS = 128

Interval = Optional[tuple[Fraction, Fraction]]


def precision_bits() -> int:
    try:
        return int(os.environ.get(PRECISION_ENV, DEFAULT_PRECISION_BITS))
    except ValueError:
        return DEFAULT_PRECISION_BITS


@dataclass(frozen=True)
class RatioExperiment:
    seed: Optional[int]
    iterations: int
    f_set: Interval
    g_set: Interval
    counts_f: int
    counts_g: int

    @property
    def ratio(self) -> float:
        if self.counts_g == 0:
            return math.nan
        return self.counts_f / self.counts_g

    def csv_row(self) -> str:
        return f"{self.seed},{self.iterations},{self.counts_f},{self.counts_g},{self.ratio!r}"


CSV_HEADER = "seed,n,counts_f,counts_g,ratio"


def experiments_to_csv(experiments: Sequence[RatioExperiment]) -> str:
    return "\n".join([CSV_HEADER] + [e.csv_row() for e in experiments]) + "\n"


def _dd_parts(v) -> tuple[float, float]:
    fr = Fraction(v)
    hi = float(fr)
    return hi, float(fr - Fraction(hi))


def _interval_parts(s: Interval) -> tuple[bool, float, float, float, float]:
    if s is None or s[0] >= s[1]:
        return False, 0.0, 0.0, 0.0, 0.0
    a1, a2 = _dd_parts(s[0])
    b1, b2 = _dd_parts(s[1])
    return True, a1, a2, b1, b2


def sample_x0(seed: int) -> tuple[float, float]:
    """Deterministic uniform starting point as a normalized (hi, lo) pair."""
    rng = np.random.default_rng(seed)
    u = rng.random()
    while u == 0.0:
        u = rng.random()
    w = rng.random() * 2.0 ** -54
    s = u + w
    return s, w - (s - u)


def _orbit_counts_mpmath(x0, n: int, f_set: Interval, g_set: Interval, bits: int):
    import mpmath

    def as_mpf(v):
        fr = Fraction(v)
        return mpmath.mpf(fr.numerator) / fr.denominator

    with mpmath.workprec(bits):
        x = mpmath.mpf(x0[0]) + mpmath.mpf(x0[1]) if isinstance(x0, tuple) else as_mpf(x0)
        third = mpmath.mpf(1) / 3
        f_lo, f_hi = (as_mpf(v) for v in (f_set or (0, 0)))
        g_lo, g_hi = (as_mpf(v) for v in (g_set or (0, 0)))
        cf = cg = 0
        for _ in range(n):
            if x == 0 or x == 1:
                return cf, cg, x, (1 if x == 0 else 2)
            if f_set and f_lo < x < f_hi:
                cf += 1
            if g_set and g_lo < x < g_hi:
                cg += 1
            if x < third:
                x = x / (1 - 2 * x)
            elif x < mpmath.mpf(1) / 2:
                x = 1 / x - 2
            else:
                x = 2 - 1 / x
        return cf, cg, x, 0


def hopf_ratio(
    x0,
    n: int,
    f_set: Interval,
    g_set: Interval,
    seed: Optional[int] = None,
    bits: Optional[int] = None,
) -> RatioExperiment:
    """Occupation counts of the floating orbit of x0 over n steps.

    ``x0`` is a float, Fraction, or normalized (hi, lo) pair.  Precision
    comes from ``bits`` or the ROMIK_PRECISION_BITS environment variable;
    up to 128 bits runs the compiled double-double kernel (106 significand
    bits), larger values fall back to mpmath.
    """
    if n < 1:
        raise OutOfDomain("need at least one iteration")
    start = x0[0] if isinstance(x0, tuple) else float(x0)
    if not 0.0 < start < 1.0:
        raise OutOfDomain(f"starting point {start} outside (0, 1)")
    bits = precision_bits() if bits is None else bits
    if bits > 128:
        cf, cg, _, status = _orbit_counts_mpmath(x0, n, f_set, g_set, bits)
    else:
        from ._ddmath import orbit_counts

        if isinstance(x0, tuple):
            xh, xl = x0
        else:
            xh, xl = _dd_parts(x0)
        fa, f1h, f1l, f2h, f2l = _interval_parts(f_set)
        ga, g1h, g1l, g2h, g2l = _interval_parts(g_set)
        cf, cg, _, _, status = orbit_counts(
            xh, xl, n, fa, f1h, f1l, f2h, f2l, ga, g1h, g1l, g2h, g2l
        )
    if status:
        raise DegenerateOrbit(
            f"orbit hit the exact fixed point {0 if status == 1 else 1}"
        )
    return RatioExperiment(seed, n, f_set, g_set, cf, cg)


def ratio_experiment(seed: int, n: int, f_set: Interval, g_set: Interval) -> RatioExperiment:
    """Seeded experiment: deterministic start point, then hopf_ratio."""
    return hopf_ratio(sample_x0(seed), n, f_set, g_set, seed=seed)


def run_experiments(seeds: Sequence[int], n: int, f_set: Interval, g_set: Interval):
    return [ratio_experiment(s, n, f_set, g_set) for s in seeds]


# -- exact measure ratios -----------------------------------------------------


def interval_log_argument(s: tuple[Fraction, Fraction]) -> Fraction:
    """The measure of (a,b) under the density 1/(x(1-x)) is log of this."""
    a, b = Fraction(s[0]), Fraction(s[1])
    if not 0 < a <= b < 1:
        raise OutOfDomain("interval must sit inside (0, 1)")
    return Fraction(b * (1 - a), a * (1 - b))


@dataclass(frozen=True)
class MeasureRatioReport:
    arg_f: Fraction
    arg_g: Fraction
    ratio: Fraction | float
    exact: bool

    def to_json(self) -> dict:
        return {
            "log_argument_f": str(self.arg_f),
            "log_argument_g": str(self.arg_g),
            "ratio": str(self.ratio) if self.exact else self.ratio,
            "exact": self.exact,
        }


def measure_ratio_exact(f_set: Interval, g_set: Interval, max_power: int = 24) -> MeasureRatioReport:
    """Ratio of the two interval measures, exact when the log arguments are
    rational powers of a common base (log 2 / log 4 = 1/2 and the like)."""
    arg_f = interval_log_argument(f_set) if f_set and f_set[0] < f_set[1] else Fraction(1)
    arg_g = interval_log_argument(g_set)
    if arg_f == 1:
        return MeasureRatioReport(arg_f, arg_g, Fraction(0), True)
    for q in range(1, max_power + 1):
        for p in range(1, max_power + 1):
            if arg_f ** q == arg_g ** p:
                return MeasureRatioReport(arg_f, arg_g, Fraction(p, q), True)
    return MeasureRatioReport(arg_f, arg_g, math.log(arg_f) / math.log(arg_g), False)


# -- skipped convergents ------------------------------------------------------


@dataclass(frozen=True)
class SkippedReport:
    """Census of regular convergents against the {0,2} convergent list.

    A visit of the orbit to (1/3,1/2] keeps one regular convergent; a visit
    to (1/2,2/3) consumes two, deleting the first and keeping the second.
    ``missing_ratio`` is therefore the census fraction (tending to 1/3 for
    typical points), while ``deletion_event_ratio`` counts deletion events
    among convergent-processing events (the occupation quantity, tending
    to 1/2).
    """

    x: Scalar
    depth: int
    rcf: list[Fraction]
    present: list[Fraction]
    missing: list[Fraction]
    running_ratio: list[Fraction]
    romik_depth: int
    keep_events: int
    deletion_events: int

    @property
    def missing_ratio(self) -> Fraction:
        return Fraction(len(self.missing), self.depth)

    @property
    def deletion_event_ratio(self) -> Fraction:
        return Fraction(self.deletion_events, self.keep_events + self.deletion_events)

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "rcf_convergents": [str(c) for c in self.rcf],
            "present": [str(c) for c in self.present],
            "missing": [str(c) for c in self.missing],
            "running_missing_ratio": [str(r) for r in self.running_ratio],
            "missing_ratio": str(self.missing_ratio),
            "keep_events": self.keep_events,
            "deletion_events": self.deletion_events,
            "deletion_event_ratio": str(self.deletion_event_ratio),
            "romik_depth_used": self.romik_depth,
        }


def _certified_romik_values(x: QuadSurd, max_q: int) -> tuple[set[Fraction], int]:
    """All convergent values of x's {0,2} expansion with denominator <= max_q.

    Extends the prefix until the trailing part certifies completeness: the
    running minimum of two consecutive denominators never decreases, so once
    two consecutive q's exceed max_q past the last small one, no later
    convergent can have denominator <= max_q.
    """
    steps = 64
    while True:
        e = romik_digits(x, steps)
        recs = romik_convergents(e)
        qs = [r.matrix.m22 for r in recs]
        last_small = 0
        for i, q in enumerate(qs):
            if q <= max_q:
                last_small = i + 1
        if last_small + 2 <= len(qs):
            values = {Fraction(0, 1)} | {r.value for r in recs}
            return values, len(recs)
        if steps > 1_000_000:
            raise OutOfDomain("convergent denominators failed to grow")
        steps *= 2


def _orbit_event_counts(x: QuadSurd, depth: int) -> tuple[int, int]:
    """Keep/delete events along the orbit until depth regular convergents
    are consumed (keep events consume one, deletion events two)."""
    from .maps import romik_step

    third, half, two_thirds = Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)
    keeps = dels = consumed = 0
    y: Scalar = x
    while consumed < depth:
        if compare(y, third) > 0 and compare(y, half) <= 0:
            keeps += 1
            consumed += 1
        elif compare(y, half) > 0 and compare(y, two_thirds) < 0:
            dels += 1
            consumed += 2
        y = romik_step(y)
    return keeps, dels


def skipped_convergents(x: QuadSurd, depth: int) -> SkippedReport:
    """Which regular convergents of x survive into the {0,2} expansion."""
    if not isinstance(x, QuadSurd):
        raise OutOfDomain("needs an irrational point in (0, 1)")
    rcf_list = rcf_convergents(rcf_expand_surd(x), depth)
    max_q = max(c.denominator for c in rcf_list)
    romik_values, used = _certified_romik_values(x, max_q)
    present, missing, running = [], [], []
    miss = 0
    for i, c in enumerate(rcf_list, start=1):
        if c in romik_values:
            present.append(c)
        else:
            missing.append(c)
            miss += 1
        running.append(Fraction(miss, i))
    keeps, dels = _orbit_event_counts(x, depth)
    return SkippedReport(x, depth, rcf_list, present, missing, running, used, keeps, dels)
