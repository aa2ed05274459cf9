"""Expansion-level rewriting: signed continued fractions, the step rule for
regular expansions, inverse-direction rule, the three value-preserving
operators (singularize / insert / strange insert), and the streaming
conversion from regular digits to the {0,2} expansion.

All rewrites are local and exactly value-preserving; the converter applies
them at the first digit outside {0,2} until the prefix stabilises.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InvalidDigits, NeedMoreDigits, NotApplicable, OutOfDomain
from .exact import Mobius, Scalar
from .rcf import RcfExpansion, canonical

Term = tuple[int, int]  # (c, d) with c in {-1,+1}, d >= 0


@dataclass(frozen=True)
class SignedCF:
    """d0 + c1/(d1 + c2/(d2 + ...)), finitely many terms."""

    d0: int
    terms: tuple[Term, ...]

    def evaluate(self, tail: Scalar = Fraction(0)) -> Scalar:
        """Exact value with ``tail`` added below the last digit."""
        return self.matrix().apply(tail)

    def matrix(self) -> Mobius:
        m = Mobius(1, self.d0, 0, 1)
        for c, d in self.terms:
            m = m.compose(Mobius(0, c, 1, d))
        return m

    def convergent_pairs(self) -> list[tuple[int, int]]:
        """Raw (r_n, s_n) for n = 0..len(terms), r_0/s_0 = d0/1."""
        m = Mobius(1, self.d0, 0, 1)
        pairs = [(m.m12, m.m22)]
        for c, d in self.terms:
            m = m.compose(Mobius(0, c, 1, d))
            pairs.append((m.m12, m.m22))
        return pairs

    def __str__(self) -> str:
        toks = [(str(d) if c == 1 else f"-1/{d}") for c, d in self.terms]
        return f"[{self.d0};{','.join(toks)}]"


_SIGNED_TOK = re.compile(r"^(?:(-?1)/)?(\d+)$")


def parse_signedcf(text: str) -> SignedCF:
    m = re.match(r"^\[(-?\d+);([^\]]*)\]$", text.replace(" ", ""))
    if not m:
        raise ValueError(f"not a signed continued fraction literal: {text!r}")
    terms = []
    body = m.group(2)
    for tok in body.split(","):
        if not tok:
            continue
        tm = _SIGNED_TOK.match(tok)
        if not tm:
            raise ValueError(f"bad term {tok!r}")
        c = int(tm.group(1)) if tm.group(1) else 1
        terms.append((c, int(tm.group(2))))
    return SignedCF(int(m.group(1)), tuple(terms))


def _check_pos(e: SignedCF, n: int) -> None:
    if not 1 <= n <= len(e.terms):
        raise NotApplicable(f"position {n} out of range 1..{len(e.terms)}")


def singularize(e: SignedCF, n: int) -> SignedCF:
    """Remove the term +1/1 at position n:
    a + 1/(1 + 1/(b + xi)) -> (a+1) + (-1)/((b+1) + xi).  One convergent drops.
    """
    _check_pos(e, n)
    if e.terms[n - 1] != (1, 1):
        raise NotApplicable(f"term {n} is not +1/1")
    if n == len(e.terms):
        raise NotApplicable("singularization needs a following term")
    c_next, d_next = e.terms[n]
    if c_next != 1:
        raise NotApplicable("the following term must carry sign +1")
    terms = list(e.terms)
    d0 = e.d0
    if n >= 2:
        c_prev, d_prev = terms[n - 2]
        terms[n - 2] = (c_prev, d_prev + 1)
    else:
        d0 += 1
    terms[n - 1 : n + 1] = [(-1, d_next + 1)]
    return SignedCF(d0, tuple(terms))


def insert(e: SignedCF, n: int) -> SignedCF:
    """Insert -1/1 before the digit at position n:
    a + 1/(b + xi) -> (a+1) + (-1)/(1 + 1/((b-1) + xi)).  One convergent added.
    """
    _check_pos(e, n)
    c, b = e.terms[n - 1]
    if c != 1 or b < 2:
        raise NotApplicable(f"term {n} must be +1/b with b >= 2, got {(c, b)}")
    terms = list(e.terms)
    d0 = e.d0
    if n >= 2:
        c_prev, d_prev = terms[n - 2]
        terms[n - 2] = (c_prev, d_prev + 1)
    else:
        d0 += 1
    terms[n - 1 : n] = [(-1, 1), (1, b - 1)]
    return SignedCF(d0, tuple(terms))


def _strange_insert_any_sign(terms: list[Term], i: int) -> None:
    """In-place 1/(d + xi) -> 1/(2 + 1/(0 + 1/((d-2) + xi))) at index i.

    The preceding sign rides along unchanged, so this is value-preserving
    for either sign; the public operator only admits +1.
    """
    c, d = terms[i]
    terms[i : i + 1] = [(c, 2), (1, 0), (1, d - 2)]


def strange_insert(e: SignedCF, n: int) -> SignedCF:
    """Insert the pair 1/2, 1/0 before the digit at position n (d >= 3):
    the convergent list gains the mediant (2r+r')/(2s+s') and repeats r/s.
    """
    _check_pos(e, n)
    c, d = e.terms[n - 1]
    if c != 1 or d < 3:
        raise NotApplicable(f"term {n} must be +1/d with d >= 3, got {(c, d)}")
    terms = list(e.terms)
    _strange_insert_any_sign(terms, n - 1)
    return SignedCF(e.d0, tuple(terms))


# -- step rule on regular expansions ----------------------------------------


def _drop_leading(e: RcfExpansion, j: int) -> tuple[tuple[int, ...], Optional[tuple[int, ...]]]:
    pre = list(e.digits)
    period = e.period
    for _ in range(j):
        if pre:
            pre.pop(0)
        elif period:
            period = period[1:] + period[:1]
        else:
            raise NeedMoreDigits(f"cannot drop {j} digits from {e}")
    return tuple(pre), period


def rcf_step_under_R(e: RcfExpansion) -> RcfExpansion:
    """Regular expansion of the image point, by the four-case digit rule.

    Cases on a1 (and a2): a1 > 2 -> [0;a1-2,a2,...]; a1 = 2 -> [0;a2,...];
    a1 = 1, a2 = 1 -> [0;a3+1,a4,...]; a1 = 1, a2 >= 2 -> [0;1,a2-1,a3,...].
    Fixed points [0;] and [1;] map to themselves.
    """
    e = canonical(e)
    if e.a0 == 1 and not e.digits and e.period is None:
        return e
    if e.a0 != 0:
        raise OutOfDomain(f"expansion {e} is not of a point in [0, 1]")
    if not e.digits and not e.period:
        return e
    try:
        a1 = e.take(1)[0]
        if a1 > 2:
            pre, period = _drop_leading(e, 1)
            return canonical(RcfExpansion(0, (a1 - 2,) + pre, period))
        if a1 == 2:
            pre, period = _drop_leading(e, 1)
            return canonical(RcfExpansion(0, pre, period))
        a2 = e.take(2)[1]
        if a2 == 1:
            a3 = e.take(3)[2]
            pre, period = _drop_leading(e, 3)
            return canonical(RcfExpansion(0, (a3 + 1,) + pre, period))
        pre, period = _drop_leading(e, 2)
        return canonical(RcfExpansion(0, (1, a2 - 1) + pre, period))
    except OutOfDomain as exc:
        raise NeedMoreDigits(str(exc)) from None


def second_coordinate_rule(a1_of_x: int, y: RcfExpansion) -> RcfExpansion:
    """Expansion of the matching inverse branch applied to y.

    Keyed by the first digit of x: a1 > 2 uses y/(1+2y), a1 = 2 uses
    1/(2+y), a1 = 1 uses 1/(2-y) (where the first digit of y decides
    between undoing an insertion and undoing a singularization).
    """
    if a1_of_x < 1:
        raise OutOfDomain("a1 must be a positive partial quotient")
    y = canonical(y)
    is_one = y.a0 == 1 and not y.digits and y.period is None
    is_zero = y.a0 == 0 and not y.digits and not y.period
    if y.a0 not in (0, 1) or (y.a0 == 1 and not is_one):
        raise OutOfDomain(f"{y} is not an expansion of a point in [0, 1]")
    if a1_of_x > 2:  # left inverse
        if is_zero:
            return y
        if is_one:
            return RcfExpansion(0, (3,))
        b1 = y.take(1)[0]
        pre, period = _drop_leading(y, 1)
        return canonical(RcfExpansion(0, (b1 + 2,) + pre, period))
    if a1_of_x == 2:  # middle inverse
        if is_one:
            return RcfExpansion(0, (3,))
        return canonical(RcfExpansion(0, (2,) + y.digits, y.period))
    # right inverse
    if is_zero:
        return RcfExpansion(0, (2,))
    if is_one:
        return RcfExpansion(1, ())
    b1 = y.take(1)[0]
    if b1 == 1:
        try:
            b2 = y.take(2)[1]
        except OutOfDomain:
            raise NeedMoreDigits(f"{y} has a lone leading 1") from None
        pre, period = _drop_leading(y, 2)
        return canonical(RcfExpansion(0, (1, b2 + 1) + pre, period))
    pre, period = _drop_leading(y, 1)
    return canonical(RcfExpansion(0, (1, 1, b1 - 1) + pre, period))


# -- conversion to the {0,2} expansion ---------------------------------------


@dataclass(frozen=True)
class ConversionResult:
    """State of the streaming conversion after a bounded number of rewrites.

    ``cf`` holds the materialised prefix (settled head in {0,2} form plus the
    still-rewriting suffix); its value with the unconsumed source tail plugged
    in equals the input exactly at every stage.
    """

    cf: SignedCF
    settled: int
    done: bool
    steps_used: int
    steps_exhausted: bool
    source_consumed: int

    @property
    def settled_terms(self) -> tuple[Term, ...]:
        return self.cf.terms[: self.settled]

    def to_romik_terms(self) -> tuple[Term, ...]:
        from .expansion import validate_terms

        validate_terms(self.settled_terms, self._pending_sign())
        return self.settled_terms

    def _pending_sign(self) -> int:
        if self.settled < len(self.cf.terms):
            return self.cf.terms[self.settled][0]
        return -1 if self.cf.terms else 1


def _tail_all_twos(e: RcfExpansion, consumed: int) -> bool:
    if e.period is None:
        return all(d == 2 for d in e.digits[consumed:])
    if any(d != 2 for d in e.period):
        return False
    return all(d == 2 for d in e.digits[consumed:])


def convert_rcf_to_romik(
    e: RcfExpansion,
    steps: int = 10_000,
    min_settled: Optional[int] = None,
) -> ConversionResult:
    """Rewrite a regular expansion of x in [0,1) into {0,2} digit form.

    One step is one operator application at the first digit outside {0,2}:
    a digit d >= 3 gets the strange insertion (trailing 3 instead splits as
    2 + 1/1, the midpoint coding); a digit 1 is removed by singularization,
    insertion, or the fixed-point tail rules.  Settled digits never change,
    and their count is monotone in ``steps``.
    """
    e = canonical(e)
    if e.a0 != 0:
        raise OutOfDomain(f"{e} is not an expansion of a point in [0, 1)")
    stream = e.digit_stream()
    finite = e.is_finite
    terms: list[Term] = []
    consumed = 0
    source_empty = False
    done = False
    used = 0

    def pull() -> bool:
        nonlocal consumed, source_empty
        if source_empty:
            return False
        try:
            d = next(stream)
        except StopIteration:
            source_empty = True
            return False
        terms.append((1, d))
        consumed += 1
        return True

    settled = 0
    while True:
        while settled < len(terms) and terms[settled][1] in (0, 2):
            settled += 1
        if min_settled is not None and settled >= min_settled:
            break
        if done:
            break
        if settled == len(terms):
            if not finite and _tail_all_twos(e, consumed):
                done = True
                if min_settled is not None:
                    while len(terms) < min_settled:
                        terms.append((1, 2))
                    settled = len(terms)
                break
            if pull():
                continue
            done = True
            continue
        if used >= steps:
            break
        i = settled
        c, d = terms[i]
        if d == 1:
            while len(terms) < i + 3 and pull():
                pass
            if i + 1 == len(terms):
                # Lone trailing 1: the tail sits at the fixed point 1 = 2 - 1/1.
                terms[i] = (c, 2)
                terms.append((-1, 1))
            else:
                c2, d2 = terms[i + 1]
                if c2 != 1:
                    raise InvalidDigits("internal: unexpected sign after a 1")
                if d2 == 1:
                    if i + 2 < len(terms):
                        c3, d3 = terms[i + 2]
                        if c3 != 1:
                            raise InvalidDigits("internal: unexpected sign in a 1,1 block")
                        terms[i] = (c, 2)
                        terms[i + 1 : i + 3] = [(-1, d3 + 1)]
                    else:
                        # Trailing 1 + 1/1 collapses to a plain 2.
                        terms[i] = (c, 2)
                        del terms[i + 1]
                else:
                    terms[i] = (c, 2)
                    terms[i + 1] = (-1, 1)
                    terms.insert(i + 2, (1, d2 - 1))
        else:  # d >= 3
            if i + 1 == len(terms) and not pull() and d == 3:
                # Trailing 3: the tail is the branch boundary, whose coding
                # starts with the middle branch: 3 = 2 + 1/1.
                terms[i] = (c, 2)
                terms.append((1, 1))
            else:
                _strange_insert_any_sign(terms, i)
        used += 1

    while settled < len(terms) and terms[settled][1] in (0, 2):
        settled += 1
    if finite and source_empty and settled == len(terms):
        done = True
    return ConversionResult(
        cf=SignedCF(0, tuple(terms)),
        settled=settled,
        done=done,
        steps_used=used,
        steps_exhausted=not done and (min_settled is None or settled < min_settled),
        source_consumed=consumed,
    )
