"""Double-double orbit kernel: ~106 significand bits at compiled-loop speed.

The interval map expands orbits near the endpoints, so plain doubles shadow
poorly over 1e7 iterations; a (hi, lo) double-double carries the occupation
statistics credibly.  All primitives are the classical error-free transforms.
"""

from __future__ import annotations

from numba import njit


@njit(inline="always", cache=True)
def _two_sum(a: float, b: float):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


@njit(inline="always", cache=True)
def _quick_two_sum(a: float, b: float):
    s = a + b
    return s, b - (s - a)


@njit(inline="always", cache=True)
def _two_prod(a: float, b: float):
    p = a * b
    t = 134217729.0 * a
    ah = t - (t - a)
    al = a - ah
    t = 134217729.0 * b
    bh = t - (t - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


@njit(inline="always", cache=True)
def _dd_add(ah: float, al: float, bh: float, bl: float):
    s1, s2 = _two_sum(ah, bh)
    t1, t2 = _two_sum(al, bl)
    s2 += t1
    s1, s2 = _quick_two_sum(s1, s2)
    s2 += t2
    return _quick_two_sum(s1, s2)


@njit(inline="always", cache=True)
def _dd_mul_d(ah: float, al: float, b: float):
    p1, p2 = _two_prod(ah, b)
    p2 += al * b
    return _quick_two_sum(p1, p2)


@njit(inline="always", cache=True)
def _dd_div(ah: float, al: float, bh: float, bl: float):
    q1 = ah / bh
    th, tl = _dd_mul_d(bh, bl, q1)
    rh, rl = _dd_add(ah, al, -th, -tl)
    q2 = rh / bh
    th, tl = _dd_mul_d(bh, bl, q2)
    rh, rl = _dd_add(rh, rl, -th, -tl)
    q3 = rh / bh
    q1, q2 = _quick_two_sum(q1, q2)
    return _dd_add(q1, q2, q3, 0.0)


@njit(inline="always", cache=True)
def _dd_lt(ah: float, al: float, bh: float, bl: float):
    return ah < bh or (ah == bh and al < bl)


@njit(cache=True)
def orbit_counts(
    xh: float,
    xl: float,
    n: int,
    f_active: bool,
    f1h: float,
    f1l: float,
    f2h: float,
    f2l: float,
    g_active: bool,
    g1h: float,
    g1l: float,
    g2h: float,
    g2l: float,
):
    """Counts of orbit visits to the open intervals f and g over n steps.

    Returns (count_f, count_g, final_hi, final_lo, status); status 1 or 2
    flags absorption at the exact fixed points 0 or 1.
    """
    third_h = 0.3333333333333333
    third_l = 1.850371707708594e-17
    count_f = 0
    count_g = 0
    for _ in range(n):
        if xl == 0.0 and (xh == 0.0 or xh == 1.0):
            return count_f, count_g, xh, xl, (1 if xh == 0.0 else 2)
        if f_active and _dd_lt(f1h, f1l, xh, xl) and _dd_lt(xh, xl, f2h, f2l):
            count_f += 1
        if g_active and _dd_lt(g1h, g1l, xh, xl) and _dd_lt(xh, xl, g2h, g2l):
            count_g += 1
        if _dd_lt(xh, xl, third_h, third_l):
            dh, dl = _dd_add(1.0, 0.0, -2.0 * xh, -2.0 * xl)
            xh, xl = _dd_div(xh, xl, dh, dl)
        elif _dd_lt(xh, xl, 0.5, 0.0):
            ih, il = _dd_div(1.0, 0.0, xh, xl)
            xh, xl = _dd_add(ih, il, -2.0, 0.0)
        else:
            ih, il = _dd_div(1.0, 0.0, xh, xl)
            xh, xl = _dd_add(2.0, 0.0, -ih, -il)
    return count_f, count_g, xh, xl, 0
