import random
from fractions import Fraction

import pytest

from conftest import SQRT2_OVER_2, X_PERIODIC, random_unit_scalar
from romikcf.errors import OutOfDomain
from romikcf.exact import compare, parse_scalar
from romikcf.maps import (
    Branch,
    DigitPair,
    classify,
    digit_pair,
    farey_step,
    inverse_branch,
    romik_orbit,
    romik_step,
)
from romikcf.rcf import parse_rcf, rcf_expand_surd


def test_classify_boundaries():
    assert classify(Fraction(1, 5)) is Branch.LEFT
    assert classify(Fraction(1, 3)) is Branch.MIDDLE
    assert classify(Fraction(1, 2)) is Branch.RIGHT
    assert classify(Fraction(0)) is Branch.LEFT
    assert classify(Fraction(1)) is Branch.RIGHT


def test_classify_out_of_domain():
    with pytest.raises(OutOfDomain):
        classify(Fraction(3, 2))
    with pytest.raises(OutOfDomain):
        classify(Fraction(-1, 7))


def test_digit_pair_conventions():
    assert digit_pair(Fraction(1, 5)) == DigitPair(-1, 1)
    assert digit_pair(Fraction(2, 5)) == DigitPair(1, 1)
    assert digit_pair(Fraction(4, 5)) == DigitPair(1, -1)
    with pytest.raises(ValueError):
        DigitPair(-1, -1)


def test_romik_step_examples():
    assert romik_step(Fraction(1, 5)) == Fraction(1, 3)
    assert romik_step(Fraction(3, 4)) == Fraction(2, 3)
    assert romik_step(Fraction(1, 2)) == Fraction(0)
    assert romik_step(Fraction(0)) == Fraction(0)
    assert romik_step(Fraction(1)) == Fraction(1)


def test_romik_step_periodic_point_image_expansion():
    y = romik_step(X_PERIODIC)
    assert rcf_expand_surd(y) == parse_rcf("[0;4,(2,1,2,4,1,1,6)]")


def test_branch_image_identities():
    # R maps [1/(n+1), 1/n) onto [1/(n-1), 1/(n-2)) for n >= 3.
    for n in range(3, 51):
        lo, hi = Fraction(1, n + 1), Fraction(1, n)
        mid = (lo + hi) / 2
        assert romik_step(lo) == Fraction(1, n - 1)
        assert Fraction(1, n - 1) <= romik_step(mid) < Fraction(1, n - 2)
    # R maps [n/(n+1), (n+1)/(n+2)) onto [(n-1)/n, n/(n+1)) for n >= 1.
    for n in range(1, 51):
        lo, hi = Fraction(n, n + 1), Fraction(n + 1, n + 2)
        mid = (lo + hi) / 2
        assert romik_step(lo) == Fraction(n - 1, n)
        assert Fraction(n - 1, n) <= romik_step(mid) < Fraction(n, n + 1)


def test_farey_step_examples():
    assert farey_step(Fraction(1, 3)) == Fraction(1, 2)
    assert farey_step(Fraction(1, 2)) == Fraction(1)
    assert romik_step(Fraction(1, 5)) == farey_step(farey_step(Fraction(1, 5)))


def test_farey_relation_randomized():
    rng = random.Random(23)
    for _ in range(200):
        x = random_unit_scalar(rng)
        if compare(x, Fraction(1, 2)) < 0:
            assert romik_step(x) == farey_step(farey_step(x))
        else:
            assert romik_step(x) == 1 - farey_step(x)


def test_inverse_branch_examples():
    assert inverse_branch(Branch.LEFT, Fraction(1, 3)) == Fraction(1, 5)
    assert inverse_branch(Branch.MIDDLE, Fraction(0)) == Fraction(1, 2)
    assert inverse_branch(Branch.RIGHT, Fraction(0)) == Fraction(1, 2)


def test_inverse_branch_round_trip():
    rng = random.Random(29)
    for _ in range(100):
        y = random_unit_scalar(rng)
        for b in Branch:
            assert romik_step(inverse_branch(b, y)) == y


def test_inverse_branch_lands_in_branch_interval():
    rng = random.Random(31)
    bounds = {
        Branch.LEFT: (Fraction(0), Fraction(1, 3)),
        Branch.MIDDLE: (Fraction(1, 3), Fraction(1, 2)),
        Branch.RIGHT: (Fraction(1, 2), Fraction(1)),
    }
    for _ in range(60):
        y = random_unit_scalar(rng)
        for b, (lo, hi) in bounds.items():
            v = inverse_branch(b, y)
            assert compare(v, lo) >= 0 and compare(v, hi) <= 0


def test_rational_orbit_terminates_at_zero():
    rec = romik_orbit(Fraction(2, 5))
    assert rec.points == (Fraction(2, 5), Fraction(1, 2), Fraction(0))
    assert rec.terminal == "zero"
    assert not rec.truncated


def test_rational_orbit_terminates_at_one():
    rec = romik_orbit(Fraction(1, 3))
    assert rec.points == (Fraction(1, 3), Fraction(1))
    assert rec.terminal == "one"


def test_sqrt2_over_2_orbit_period_three():
    rec = romik_orbit(SQRT2_OVER_2)
    assert rec.preperiod == 0
    assert rec.period == 3
    assert rec.points[1] == parse_scalar("2-sqrt(2)")
    assert rec.points[2] == parse_scalar("(2-sqrt(2))/2")
    assert romik_step(rec.points[2]) == SQRT2_OVER_2


def test_periodic_point_orbit_period_ten():
    rec = romik_orbit(X_PERIODIC)
    assert (rec.preperiod, rec.period) == (0, 10)


def test_orbit_truncation_flag():
    rec = romik_orbit(parse_scalar("sqrt(2)/2"), max_steps=2)
    assert rec.truncated and rec.period is None


def test_small_rational_sweep_hits_terminals_through_known_gates():
    # Orbits reaching 0 pass through 1/2; those reaching 1 pass through 1/3.
    for q in range(2, 61):
        for p in range(1, q):
            rec = romik_orbit(Fraction(p, q))
            assert rec.terminal in ("zero", "one")
            if len(rec.points) >= 2:
                gate = rec.points[-2]
                assert gate == (Fraction(1, 2) if rec.terminal == "zero" else Fraction(1, 3))


def test_orbit_json():
    js = romik_orbit(Fraction(2, 5)).to_json()
    assert js["terminal"] == "zero"
    assert js["points"] == ["2/5", "1/2", "0"]


def test_branch_matrices_are_unimodular():
    from romikcf.maps import INVERSE_MATRIX, STEP_MATRIX

    for b in Branch:
        assert abs(STEP_MATRIX[b].det()) == 1
        assert abs(INVERSE_MATRIX[b].det()) == 1
        prod = STEP_MATRIX[b].compose(INVERSE_MATRIX[b])
        assert prod.apply(Fraction(1, 7)) == Fraction(1, 7)
