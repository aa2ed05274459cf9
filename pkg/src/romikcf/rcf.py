"""Regular continued fractions: finite for rationals, periodic for surds.

Expansions are stored as (a0, preperiod digits, optional period) and rendered
as ``[a0;d1,d2,(p1,p2,...)]`` where the parenthesised block repeats forever.
Convergents are plain ``Fraction`` values (coprime by construction).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterator, Optional

from .errors import OutOfDomain
from .exact import QuadSurd, Scalar, scalar_isqrt_floor, surd_canonicalize


@dataclass(frozen=True)
class RcfExpansion:
    a0: int
    digits: tuple[int, ...]
    period: Optional[tuple[int, ...]] = None

    @property
    def is_finite(self) -> bool:
        return self.period is None

    def digit_stream(self) -> Iterator[int]:
        yield from self.digits
        if self.period:
            while True:
                yield from self.period

    def take(self, n: int) -> list[int]:
        """First n partial quotients a_1..a_n; raises if finite and too short."""
        out: list[int] = []
        for a in self.digit_stream():
            if len(out) == n:
                break
            out.append(a)
        if len(out) < n:
            raise OutOfDomain(f"expansion has only {len(out)} digits")
        return out

    def __str__(self) -> str:
        parts = [str(d) for d in self.digits]
        if self.period:
            parts.append("(" + ",".join(str(d) for d in self.period) + ")")
        return f"[{self.a0};{','.join(parts)}]" if parts else f"[{self.a0};]"

    def to_json(self) -> dict:
        return {
            "a0": self.a0,
            "pre": list(self.digits),
            "period": list(self.period) if self.period else None,
        }

    @classmethod
    def from_json(cls, obj: dict) -> RcfExpansion:
        period = tuple(obj["period"]) if obj.get("period") else None
        return cls(obj["a0"], tuple(obj["pre"]), period)


_RCF_RE = re.compile(r"^\[(-?\d+);([^\]]*)\]$")


def parse_rcf(text: str) -> RcfExpansion:
    """Parse "[a0;d1,d2,(p1,p2)]" literals."""
    m = _RCF_RE.match(text.replace(" ", ""))
    if not m:
        raise ValueError(f"not an RCF literal: {text!r}")
    a0 = int(m.group(1))
    body = m.group(2)
    period = None
    pm = re.search(r"\(([^)]*)\)$", body)
    if pm:
        period = tuple(int(d) for d in pm.group(1).split(",") if d)
        body = body[: pm.start()].rstrip(",")
    digits = tuple(int(d) for d in body.split(",") if d)
    return canonical(RcfExpansion(a0, digits, period))


def _minimal_cycle(period: tuple[int, ...]) -> tuple[int, ...]:
    n = len(period)
    for length in range(1, n + 1):
        if n % length == 0 and period == period[:length] * (n // length):
            return period[:length]
    return period


def canonical(e: RcfExpansion) -> RcfExpansion:
    """Minimal period and minimal preperiod; finite tails in standard form."""
    if e.period is None:
        digits = list(e.digits)
        # A trailing 1 merges into the previous digit ([..,a,1] == [..,a+1]).
        if digits and digits[-1] == 1:
            if len(digits) == 1:
                return RcfExpansion(e.a0 + 1, ())
            digits.pop()
            digits[-1] += 1
        return RcfExpansion(e.a0, tuple(digits))
    period = _minimal_cycle(e.period)
    digits = list(e.digits)
    while digits and digits[-1] == period[-1]:
        digits.pop()
        period = period[-1:] + period[:-1]
    return RcfExpansion(e.a0, tuple(digits), period)


def rcf_expand_rational(x: Fraction) -> RcfExpansion:
    """Finite expansion of x in [0,1) by the Euclidean recursion."""
    x = Fraction(x)
    if not 0 <= x < 1:
        raise OutOfDomain(f"{x} is outside [0, 1)")
    p, q = x.numerator, x.denominator
    digits = []
    while p:
        a, r = divmod(q, p)
        digits.append(a)
        p, q = r, p
    return RcfExpansion(0, tuple(digits))


def rcf_expand_surd(x: QuadSurd) -> RcfExpansion:
    """Eventually periodic expansion of an irrational x in (0,1).

    Runs the classical (P + sqrt(D))/Q integer recursion and cuts the minimal
    preperiod/period at the first repeated (P, Q) state.
    """
    if not isinstance(x, QuadSurd):
        raise OutOfDomain("rcf_expand_surd needs an irrational scalar")
    if not (x > 0 and x < 1):
        raise OutOfDomain(f"{x} is outside (0, 1)")
    if x.e > 0:
        big_p, big_q = x.a, x.c
    else:
        big_p, big_q = -x.a, -x.c
    big_d = x.e * x.e * x.d
    if (big_d - big_p * big_p) % big_q != 0:
        big_p *= abs(big_q)
        big_d *= big_q * big_q
        big_q *= abs(big_q)

    # Complete quotients zeta_i = (P_i + sqrt(D))/Q_i with zeta_0 = x, a_0 = 0.
    p_i, q_i = -big_p, (big_d - big_p * big_p) // big_q
    digits: list[int] = []
    seen: dict[tuple[int, int], int] = {}
    while (p_i, q_i) not in seen:
        seen[(p_i, q_i)] = len(digits)
        a = scalar_isqrt_floor(surd_canonicalize(p_i, 1, big_d, q_i))
        digits.append(a)
        p_next = a * q_i - p_i
        p_i, q_i = p_next, (big_d - p_next * p_next) // q_i
    start = seen[(p_i, q_i)]
    return RcfExpansion(0, tuple(digits[:start]), tuple(digits[start:]))


def rcf_expand(x: Scalar) -> RcfExpansion:
    """Expansion of any exact scalar in [0,1]; the value 1 is rendered [1;]."""
    if isinstance(x, QuadSurd):
        return rcf_expand_surd(x)
    x = Fraction(x)
    if x == 1:
        return RcfExpansion(1, ())
    return rcf_expand_rational(x)


def rcf_convergents(e: RcfExpansion, n: int) -> list[Fraction]:
    """Convergents P_1/Q_1 .. P_n/Q_n by the standard recurrence."""
    digits = e.take(n)
    p_prev, q_prev = 1, 0
    p_cur, q_cur = e.a0, 1
    out = []
    for a in digits:
        p_cur, p_prev = a * p_cur + p_prev, p_cur
        q_cur, q_prev = a * q_cur + q_prev, q_cur
        out.append(Fraction(p_cur, q_cur))
    return out


def evaluate(e: RcfExpansion, depth: Optional[int] = None) -> Scalar:
    """Exact value of the expansion; periodic tails solve their quadratic.

    With ``depth`` given, evaluates the finite truncation to that many
    partial quotients instead.
    """
    if depth is not None:
        v: Scalar = Fraction(0)
        for a in reversed(e.take(depth)):
            v = 1 / Fraction(a + v)
        return e.a0 + v
    if e.period is None:
        v = Fraction(0)
        for a in reversed(e.digits):
            v = 1 / Fraction(a + v)
        return e.a0 + v
    # Tail t = [c1; c2..cp, t] solves m21 t^2 + (m22 - m11) t - m12 = 0.
    m11, m12, m21, m22 = 1, 0, 0, 1
    for c in e.period:
        m11, m12, m21, m22 = m11 * c + m12, m11, m21 * c + m22, m21
    disc = (m11 - m22) ** 2 + 4 * m12 * m21
    t = surd_canonicalize(m11 - m22, 1, disc, 2 * m21)
    v = t
    for a in reversed(e.digits):
        v = a + 1 / v
    return e.a0 + 1 / v


def convergent_error_scale(x: Scalar, conv: Fraction) -> Scalar:
    """Q^2 * |x - P/Q|, the Legendre quality of an approximation."""
    diff = x - conv
    if isinstance(diff, QuadSurd):
        diff = abs(diff)
    else:
        diff = abs(Fraction(diff))
    return diff * conv.denominator ** 2


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n
