"""Exact scalars and integer Moebius actions.

Two scalar kinds flow through the whole package: ``fractions.Fraction`` for
rationals and :class:`QuadSurd` for quadratic irrationals ``(a + e*sqrt(d))/c``.
Both are immutable, hashable and compared by exact sign analysis; no floating
point is ever consulted for a branch decision.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Union

import mpmath

from .errors import MixedRadicals, PoleError, ZeroDenominator

Scalar = Union[Fraction, "QuadSurd"]

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


_TRIAL_LIMIT = 1_000_003


def _is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic for n below 3.3e24 with these bases."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def square_free_decompose(n: int) -> tuple[int, int]:
    """Write n >= 0 as s*s*d with d square-free; returns (s, d).

    Trial-divides up to a million, then certifies the cofactor as 1, a
    perfect square, or a prime; anything else would need real factoring
    and is rejected (it cannot arise from the small-coefficient surds
    this package works with).
    """
    if n < 0:
        raise ValueError("radicand must be nonnegative")
    if n in (0, 1):
        return 1, n
    s, d = 1, 1
    for p in _SMALL_PRIMES:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        if n % p == 0:
            n //= p
            d *= p
    p = 41
    while p * p <= n and p < _TRIAL_LIMIT:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        if n % p == 0:
            n //= p
            d *= p
        p += 2
    if n > 1:
        if p * p > n:
            d *= n  # cofactor below the trial bound squared is prime
        else:
            r = isqrt(n)
            if r * r == n:
                s *= r
            elif _is_probable_prime(n):
                d *= n
            else:
                raise ValueError(f"cannot certify square-free part of {n}")
    return s, d


def _sign_linear_radical(u: int, v: int, d: int) -> int:
    """Exact sign of u + v*sqrt(d) for square-free d >= 2."""
    if v == 0:
        return (u > 0) - (u < 0)
    if u == 0:
        return (v > 0) - (v < 0)
    if u > 0 and v > 0:
        return 1
    if u < 0 and v < 0:
        return -1
    # Opposite signs: compare u*u against v*v*d; equality would force
    # sqrt(d) rational, impossible for square-free d >= 2.
    if v > 0:
        return 1 if v * v * d > u * u else -1
    return 1 if u * u > v * v * d else -1


@dataclass(frozen=True)
class QuadSurd:
    """Canonical quadratic irrational (a + e*sqrt(d))/c.

    Invariants: d square-free and >= 2, e != 0, c > 0, gcd(a, e, c) = 1.
    Use :func:`surd_canonicalize` to build one from raw coefficients; it
    returns a plain ``Fraction`` whenever the irrational part vanishes.
    """

    a: int
    e: int
    d: int
    c: int

    def sign(self) -> int:
        return _sign_linear_radical(self.a, self.e, self.d)

    def _same_field(self, other: QuadSurd) -> None:
        if self.d != other.d:
            raise MixedRadicals(f"sqrt({self.d}) vs sqrt({other.d})")

    def __neg__(self) -> QuadSurd:
        return QuadSurd(-self.a, -self.e, self.d, self.c)

    def __add__(self, other):
        if isinstance(other, QuadSurd):
            self._same_field(other)
            return surd_canonicalize(
                self.a * other.c + other.a * self.c,
                self.e * other.c + other.e * self.c,
                self.d,
                self.c * other.c,
            )
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            p, q = other.numerator, other.denominator
            return surd_canonicalize(self.a * q + p * self.c, self.e * q, self.d, self.c * q)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QuadSurd):
            self._same_field(other)
            return surd_canonicalize(
                self.a * other.a + self.e * other.e * self.d,
                self.a * other.e + self.e * other.a,
                self.d,
                self.c * other.c,
            )
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            p, q = other.numerator, other.denominator
            return surd_canonicalize(self.a * p, self.e * p, self.d, self.c * q)
        return NotImplemented

    __rmul__ = __mul__

    def _reciprocal(self) -> Scalar:
        norm = self.a * self.a - self.e * self.e * self.d
        if norm == 0:
            raise ZeroDenominator("reciprocal of zero surd")
        return surd_canonicalize(self.c * self.a, -self.c * self.e, self.d, norm)

    def __truediv__(self, other):
        if isinstance(other, QuadSurd):
            return self * other._reciprocal()
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if other == 0:
                raise ZeroDenominator("division by zero")
            p, q = other.numerator, other.denominator
            return surd_canonicalize(self.a * q, self.e * q, self.d, self.c * p)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._reciprocal() * other
        return NotImplemented

    def __abs__(self) -> QuadSurd:
        return -self if self.sign() < 0 else self

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    def __float__(self) -> float:
        return float(self.mpf(80))

    def mpf(self, prec: int = 128) -> mpmath.mpf:
        with mpmath.workprec(prec):
            return (self.a + self.e * mpmath.sqrt(self.d)) / self.c

    def __str__(self) -> str:
        e_part = f"{abs(self.e)}*sqrt({self.d})" if abs(self.e) != 1 else f"sqrt({self.d})"
        sign = "+" if self.e > 0 else "-"
        if self.a == 0:
            body = e_part if self.e > 0 else f"-{e_part}"
        else:
            body = f"{self.a}{sign}{e_part}"
        if self.c == 1:
            return f"({body})" if self.a != 0 else body
        return f"({body})/{self.c}"


def surd_canonicalize(a: int, e: int, d0: int, c: int) -> Scalar:
    """Canonicalize (a + e*sqrt(d0))/c; returns a Fraction when rational."""
    if c == 0:
        raise ZeroDenominator("surd denominator is zero")
    if d0 < 0:
        raise ValueError("negative radicand")
    s, d = square_free_decompose(d0)
    e *= s
    if e == 0 or d == 0:
        return Fraction(a, c)
    if d == 1:
        return Fraction(a + e, c)
    if c < 0:
        a, e, c = -a, -e, -c
    g = gcd(gcd(abs(a), abs(e)), c)
    return QuadSurd(a // g, e // g, d, c // g)


def compare(x: Scalar, y: Scalar) -> int:
    """Exact three-way comparison; -1, 0 or +1."""
    xs = isinstance(x, QuadSurd)
    ys = isinstance(y, QuadSurd)
    if not xs and not ys:
        return (x > y) - (x < y)
    if xs and ys:
        if x.d != y.d:
            raise MixedRadicals(f"sqrt({x.d}) vs sqrt({y.d})")
        u = x.a * y.c - y.a * x.c
        v = x.e * y.c - y.e * x.c
        return _sign_linear_radical(u, v, x.d)
    if ys:
        return -compare(y, x)
    r = Fraction(y)
    p, q = r.numerator, r.denominator
    return _sign_linear_radical(x.a * q - p * x.c, x.e * q, x.d)


def scalar_sign(x: Scalar) -> int:
    if isinstance(x, QuadSurd):
        return x.sign()
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class Mobius:
    """2x2 integer matrix acting on scalars by (m11*x + m12)/(m21*x + m22)."""

    m11: int
    m12: int
    m21: int
    m22: int

    def det(self) -> int:
        return self.m11 * self.m22 - self.m12 * self.m21

    def compose(self, other: Mobius) -> Mobius:
        return Mobius(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    __matmul__ = compose

    def inverse(self) -> Mobius:
        det = self.det()
        if det == 1:
            return Mobius(self.m22, -self.m12, -self.m21, self.m11)
        if det == -1:
            return Mobius(-self.m22, self.m12, self.m21, -self.m11)
        raise ValueError("only unimodular matrices are invertible here")

    def apply(self, x: Scalar) -> Scalar:
        if isinstance(x, QuadSurd):
            a1 = self.m11 * x.a + self.m12 * x.c
            b1 = self.m11 * x.e
            a2 = self.m21 * x.a + self.m22 * x.c
            b2 = self.m21 * x.e
            den = a2 * a2 - b2 * b2 * x.d
            if den == 0:
                raise PoleError(f"{self} has a pole at {x}")
            return surd_canonicalize(a1 * a2 - b1 * b2 * x.d, b1 * a2 - a1 * b2, x.d, den)
        x = Fraction(x)
        num = self.m11 * x.numerator + self.m12 * x.denominator
        den = self.m21 * x.numerator + self.m22 * x.denominator
        if den == 0:
            raise PoleError(f"{self} has a pole at {x}")
        return Fraction(num, den)


IDENTITY = Mobius(1, 0, 0, 1)


def mobius_apply(m: Mobius, x: Scalar) -> Scalar:
    """Apply the fractional linear transformation m to x, exactly."""
    return m.apply(x)


def mobius_compose(m: Mobius, n: Mobius) -> Mobius:
    """Matrix product m*n, so that (m*n).x = m.(n.x)."""
    return m.compose(n)


# -- parsing and rendering ---------------------------------------------------

_TERM_RE = re.compile(r"^(?:(\d+)\*?)?sqrt\((\d+)\)$|^(\d+)$")


def _split_terms(expr: str) -> list[str]:
    terms, depth, start = [], 0, 0
    for i, ch in enumerate(expr):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start:
            terms.append(expr[start:i])
            start = i
    terms.append(expr[start:])
    return terms


def parse_scalar(text: str) -> Scalar:
    """Parse "p/q" or a surd literal like "(250*sqrt(5)-250)/1969"."""
    s = text.replace(" ", "")
    if "sqrt" not in s:
        return Fraction(s)
    den = 1
    m = re.match(r"^(.*)/(-?\d+)$", s)
    if m and m.group(1).count("(") == m.group(1).count(")"):
        s, den = m.group(1), int(m.group(2))
    if s.startswith("(") and s.endswith(")") and _balanced_trim(s):
        s = s[1:-1]
    a = Fraction(0)
    e = Fraction(0)
    d = None
    for term in _split_terms(s):
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        m = _TERM_RE.match(term)
        if not m:
            raise ValueError(f"cannot parse scalar term {term!r} in {text!r}")
        if m.group(3) is not None:
            a += sign * int(m.group(3))
        else:
            coeff = int(m.group(1)) if m.group(1) else 1
            rad = int(m.group(2))
            if d is not None and rad != d:
                raise ValueError("mixed radicands in one literal")
            d = rad
            e += sign * coeff
    if d is None:
        return Fraction(a, den)
    common = a.denominator * e.denominator
    return surd_canonicalize(
        int(a * common), int(e * common), d, den * common
    )


def _balanced_trim(s: str) -> bool:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0 and i != len(s) - 1:
                return False
    return True


def scalar_str(x: Scalar) -> str:
    return str(x)


def scalar_to_json(x: Scalar):
    """Rational -> "p/q" string; QuadSurd -> {"a":..,"e":..,"d":..,"c":..}."""
    if isinstance(x, QuadSurd):
        return {"a": x.a, "e": x.e, "d": x.d, "c": x.c}
    return str(Fraction(x))


def scalar_from_json(obj) -> Scalar:
    if isinstance(obj, dict):
        return surd_canonicalize(obj["a"], obj["e"], obj["d"], obj["c"])
    return Fraction(obj)


def scalar_mpf(x: Scalar, prec: int = 128) -> mpmath.mpf:
    """Evaluate a scalar as an mpmath float at the given binary precision."""
    if isinstance(x, QuadSurd):
        return x.mpf(prec)
    with mpmath.workprec(prec):
        return mpmath.mpf(x.numerator) / x.denominator


def decimal_str(x: Scalar, digits: int = 9) -> str:
    """Decimal rendering with the given number of fractional digits."""
    with mpmath.workdps(digits + 20):
        v = scalar_mpf(x, mpmath.mp.prec)
        return mpmath.nstr(v, digits + 1, strip_zeros=False)


def scalar_isqrt_floor(x: Scalar) -> int:
    """floor(x) computed with integer arithmetic only."""
    if isinstance(x, QuadSurd):
        # floor((a + e*sqrt(d))/c): bracket e*sqrt(d) by isqrt of e*e*d.
        t = isqrt(x.e * x.e * x.d)
        if x.e < 0:
            t = -t - 1  # e*sqrt(d) in (t, t+1)
        lo = (x.a + t) // x.c  # candidate; true floor is lo or lo+1
        return lo + (0 if compare(x, Fraction(lo + 1)) < 0 else 1)
    return x.numerator // x.denominator
