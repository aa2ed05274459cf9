"""The strange {0,2}-digit continued fraction driven by the interval map.

A term list ``[(s_1, a_1), (s_2, a_2), ...]`` encodes
``x = 1/(a_1 + s_2/(a_2 + s_3/(a_3 + ...)))`` with ``s_1 = +1`` implicit and
signs in {-1,+1}, digits in {0,2}.  Each map application emits one term
(middle/right branch) or two terms (left branch, which inserts a 0 digit).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InvalidDigits, InvalidPrefix, PrefixTooShort, TerminalOrbit
from .exact import IDENTITY, Mobius, Scalar, compare, scalar_to_json
from .maps import (
    INVERSE_MATRIX,
    Branch,
    DigitPair,
    classify,
    romik_step,
)

Term = tuple[int, int]  # (sign preceding the digit, digit)


@dataclass(frozen=True)
class RomikExpansion:
    """A digit prefix plus the exact tail it was cut off at.

    ``tail`` is the exact orbit point after ``steps`` map applications
    (0 exactly when the orbit terminated, making the expansion complete);
    ``tail_sign`` is the pending sign that would precede the next digit.
    """

    terms: tuple[Term, ...]
    tail: Optional[Scalar]
    tail_sign: int
    steps: int

    @property
    def is_complete(self) -> bool:
        return self.tail == 0

    def zeros(self) -> int:
        return sum(1 for _, a in self.terms if a == 0)

    def to_json(self) -> dict:
        return {
            "terms": [{"rho": s, "a": a} for s, a in self.terms],
            "terminal": None if self.tail is None else scalar_to_json(self.tail),
        }

    def __str__(self) -> str:
        return format_terms(self.terms, truncated=not self.is_complete)


def format_terms(terms: Sequence[Term], truncated: bool = False) -> str:
    """Compact text form with run-length abbreviation, e.g.
    ``[0;(1/2,1/0)^2,(1/2)^3,(-1/2)^2,...]``."""
    parts = []
    i, n = 0, len(terms)
    while i < n:
        if i + 1 < n and terms[i] == (1, 2) and terms[i + 1] == (1, 0):
            k = 1
            while i + 2 * (k + 1) <= n and terms[i + 2 * k] == (1, 2) and terms[i + 2 * k + 1] == (1, 0):
                k += 1
            parts.append(f"(1/2,1/0)^{k}" if k > 1 else "1/2,1/0")
            i += 2 * k
            continue
        k = 1
        while i + k < n and terms[i + k] == terms[i]:
            k += 1
        tok = f"{'-' if terms[i][0] < 0 else ''}1/{terms[i][1]}"
        parts.append(f"({tok})^{k}" if k > 1 else tok)
        i += k
    if truncated:
        parts.append("...")
    return "[0;" + ",".join(parts) + "]"


def validate_terms(terms: Sequence[Term], tail_sign: int = 1) -> None:
    """Enforce the digit constraints; raises InvalidDigits."""
    for i, (s, a) in enumerate(terms):
        if s not in (-1, 1) or a not in (0, 2):
            raise InvalidDigits(f"term {i + 1} is {(s, a)}")
        if i == 0 and (s, a) != (1, 2):
            raise InvalidDigits("expansion must start with digit 2 and sign +1")
        if a == 0:
            if s != 1 or terms[i - 1][1] != 2:
                raise InvalidDigits(f"digit 0 at {i + 1} must follow 2 with sign +1")
            nxt = terms[i + 1][0] if i + 1 < len(terms) else tail_sign
            if nxt != 1:
                raise InvalidDigits(f"digit 0 at {i + 1} must be followed by sign +1")


def romik_digits(x: Scalar, n: int) -> RomikExpansion:
    """Digit pairs for the first n map applications of x in [0,1].

    Stops early when the orbit hits 0; the fixed point 1 keeps emitting
    right-branch terms forever, so there the cap is what stops us.
    """
    classify(x)  # domain check
    terms: list[Term] = []
    pending = 1
    y = x
    steps = 0
    for _ in range(n):
        if y == 0:
            break
        b = classify(y)
        terms.append((pending, 2))
        if b is Branch.LEFT:
            terms.append((1, 0))
            pending = 1
        elif b is Branch.MIDDLE:
            pending = 1
        else:
            pending = -1
        y = romik_step(y)
        steps += 1
    return RomikExpansion(tuple(terms), y, pending, steps)


def term_matrix(term: Term) -> Mobius:
    s, a = term
    return Mobius(0, s, 1, a)


def evaluate_with_tail(e: RomikExpansion) -> Scalar:
    """Exact value of the finite tower with the stored tail plugged in."""
    m = IDENTITY
    for t in e.terms:
        m = m.compose(term_matrix(t))
    tail = e.tail if e.tail is not None else Fraction(0)
    return m.apply(e.tail_sign * tail)


@dataclass(frozen=True)
class ConvergentRecord:
    n: int
    value: Fraction
    matrix: Mobius

    def det_expected(self, terms: Sequence[Term]) -> int:
        # Each factor [[0, s],[1, a]] has determinant -s, so
        # det(M_n) = (-1)^n * s_2 * ... * s_n (the signs rho_1..rho_{n-1}).
        sign = 1
        for s, _ in terms[1 : self.n]:
            sign *= s
        return (-1) ** self.n * sign


def convergents(e: RomikExpansion | Sequence[Term]) -> list[ConvergentRecord]:
    """Matrix products M_n and convergents p_n/q_n for every prefix."""
    terms = e.terms if isinstance(e, RomikExpansion) else tuple(e)
    tail_sign = e.tail_sign if isinstance(e, RomikExpansion) else 1
    validate_terms(terms, tail_sign)
    out = []
    m = IDENTITY
    for i, t in enumerate(terms, start=1):
        m = m.compose(term_matrix(t))
        out.append(ConvergentRecord(i, Fraction(m.m12, m.m22), m))
    return out


def cylinder_interval(prefix: Sequence[DigitPair | tuple[int, int]]) -> tuple[Fraction, Fraction]:
    """Endpoints of the set of x sharing the given (delta, epsilon) prefix."""
    m = IDENTITY
    for p in prefix:
        if not isinstance(p, DigitPair):
            try:
                p = DigitPair(*p)
            except ValueError as exc:
                raise InvalidPrefix(str(exc)) from None
        m = m.compose(INVERSE_MATRIX[p.branch])
    lo, hi = m.apply(Fraction(0)), m.apply(Fraction(1))
    if compare(lo, hi) > 0:
        lo, hi = hi, lo
    return Fraction(lo), Fraction(hi)


@dataclass(frozen=True)
class ReconstructReport:
    n: int
    case_digit: int  # a_{n+1}
    map_steps: int  # k = n - m
    zero_count: int  # m
    convergent: Fraction
    identity_holds: bool
    error_formula_holds: bool


def reconstruct(x: Scalar, n: int) -> ReconstructReport:
    """Check the exact reconstruction and error identities at prefix length n.

    Uses the digit a_{n+1} to pick the branch formula: with t the orbit
    point after k = n - m steps (m zeros among a_1..a_n),
    x = (p_n + s*p_{n-1}*t)/(q_n + s*q_{n-1}*t) for a_{n+1} = 2 and
    x = (p_{n-1} + p_n*t)/(q_{n-1} + q_n*t) for a_{n+1} = 0, and
    |x - p_n/q_n| has matching closed forms.
    """
    # Generate digits until a_{n+1} exists; each step yields >= 1 term.
    e = romik_digits(x, n + 1)
    while len(e.terms) < n + 1 and not e.is_complete:
        e = romik_digits(x, e.steps + (n + 1 - len(e.terms)))
    if len(e.terms) < n + 1:
        raise TerminalOrbit(f"orbit of {x} ends before digit {n + 1} exists")
    m_count = sum(1 for _, a in e.terms[:n] if a == 0)
    k = n - m_count
    orbit_pt: Scalar = x
    for _ in range(k):
        orbit_pt = romik_step(orbit_pt)
    mat = IDENTITY
    for t in e.terms[:n]:
        mat = mat.compose(term_matrix(t))
    p_prev, p_n, q_prev, q_n = mat.m11, mat.m12, mat.m21, mat.m22
    rho_n, a_next = e.terms[n]
    t_val = orbit_pt
    if a_next == 2:
        rhs = Mobius(rho_n * p_prev, p_n, rho_n * q_prev, q_n).apply(t_val)
        err_rhs = t_val / (q_n * (q_n + rho_n * q_prev * t_val))
    else:
        rhs = Mobius(p_n, p_prev, q_n, q_prev).apply(t_val)
        err_rhs = Fraction(1) / (q_n * (q_prev + q_n * t_val))
    conv = Fraction(p_n, q_n)
    diff = x - conv
    err_lhs = -diff if compare(diff, Fraction(0)) < 0 else diff
    return ReconstructReport(
        n=n,
        case_digit=a_next,
        map_steps=k,
        zero_count=m_count,
        convergent=conv,
        identity_holds=compare(rhs, x) == 0,
        error_formula_holds=compare(err_lhs, err_rhs) == 0,
    )


@dataclass(frozen=True)
class RepetitionEvent:
    n: int  # 1-based digit index with a_n = 0
    repeated: Fraction  # p_n/q_n, equal to p_{n-2}/q_{n-2}
    equality_holds: bool
    mediant_holds: Optional[bool]  # p_{n+1}/q_{n+1} = (2p_{n-2}+p_{n-1})/(2q_{n-2}+q_{n-1})


def repetition_structure(e: RomikExpansion) -> list[RepetitionEvent]:
    """Every 0 digit repeats a convergent and then forms a mediant."""
    recs = convergents(e)
    # prepend p_0/q_0 = 0/1 so n-2 = 0 resolves
    pq = [(0, 1)] + [(r.matrix.m12, r.matrix.m22) for r in recs]
    events = []
    for i, (_, a) in enumerate(e.terms, start=1):
        if a != 0:
            continue
        pn, qn = pq[i]
        pm2, qm2 = pq[i - 2]
        pm1, qm1 = pq[i - 1]
        equal = Fraction(pn, qn) == Fraction(pm2, qm2)
        mediant = None
        if i + 1 <= len(e.terms):
            pn1, qn1 = pq[i + 1]
            mediant = Fraction(pn1, qn1) == Fraction(2 * pm2 + pm1, 2 * qm2 + qm1)
        events.append(RepetitionEvent(i, Fraction(pn, qn), equal, mediant))
    return events


def tail_denominator_unbounded(e: RomikExpansion, bound: int) -> int:
    """Smallest index N with q_n > bound for every computed n >= N."""
    recs = convergents(e)
    if not recs:
        raise PrefixTooShort("no digits computed")
    qs = [r.matrix.m22 for r in recs]
    last_small = 0
    for i, q in enumerate(qs, start=1):
        if q <= bound:
            last_small = i
    if last_small >= len(qs):
        raise PrefixTooShort(
            f"q_{last_small} <= {bound} at the end of the computed prefix"
        )
    return last_small + 1
