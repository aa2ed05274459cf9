"""Command-line front end.

Scalars parse from "p/q" or "(a+e*sqrt(d))/c" literals; expansions from
"[0;d1,d2,(p1,p2)]".  Output is JSON by default; --format table renders
aligned text, --format csv applies to the ratio experiment.  The float-orbit
precision comes from ROMIK_PRECISION_BITS (default 128).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import expansion, natext, rcf, rewrite, stats
from .errors import RomikError
from .exact import QuadSurd, decimal_str, parse_scalar, scalar_to_json
from .maps import DigitPair, romik_orbit

_BRANCH_LETTERS = {"L": (-1, 1), "M": (1, 1), "R": (1, -1)}


def _parse_input_expansion(text: str) -> rcf.RcfExpansion:
    if text.strip().startswith("["):
        return rcf.parse_rcf(text)
    return rcf.rcf_expand(parse_scalar(text))


def _parse_interval(text: str) -> tuple[Fraction, Fraction]:
    a, b = text.split(",")
    return Fraction(a), Fraction(b)


def _parse_prefix(text: str) -> list[DigitPair]:
    text = text.strip()
    if text and text[0].upper() in _BRANCH_LETTERS:
        return [DigitPair(*_BRANCH_LETTERS[t.strip().upper()]) for t in text.split(",")]
    pairs = []
    for m in text.replace(" ", "").strip("()").split("),("):
        d, e = m.split(",")
        pairs.append(DigitPair(int(d), int(e)))
    return pairs


def _emit(obj) -> None:
    print(json.dumps(obj))


def _cmd_orbit(args) -> None:
    x = parse_scalar(args.input)
    rec = romik_orbit(x, args.steps)
    if args.format == "table":
        for i, p in enumerate(rec.points):
            print(f"R^{i}(x) = {rcf.rcf_expand(p)}  = {decimal_str(p)}")
        if rec.terminal:
            print(f"terminal: {rec.terminal}")
        if rec.period is not None:
            print(f"preperiod: {rec.preperiod}  period: {rec.period}")
    else:
        _emit(rec.to_json())


def _cmd_rcf(args) -> None:
    e = _parse_input_expansion(args.input)
    convs = rcf.rcf_convergents(e, args.depth)
    if args.format == "table":
        digits = e.take(args.depth)
        shown = str(e) if len(str(e)) < 70 else f"[0;{','.join(map(str, digits))},...]"
        print(f"x = {shown}")
        print(f"{'n':>4} {'a_n':>6} {'P_n':>14} {'Q_n':>14} {'P_n/Q_n':>22}")
        for i, (a, c) in enumerate(zip(digits, convs), start=1):
            print(f"{i:>4} {a:>6} {c.numerator:>14} {c.denominator:>14} {str(c):>22}")
    else:
        _emit({"expansion": e.to_json(), "convergents": [str(c) for c in convs]})


def _cmd_romik(args) -> None:
    x = parse_scalar(args.input)
    e = expansion.romik_digits(x, args.steps)
    if args.format == "table":
        print(f"x = {e}")
        for rec in expansion.convergents(e):
            print(f"p_{rec.n}/q_{rec.n} = {rec.value}")
    else:
        _emit(e.to_json())


def _cmd_convert(args) -> None:
    e = _parse_input_expansion(args.input)
    res = rewrite.convert_rcf_to_romik(e, steps=args.steps, min_settled=args.depth)
    settled = res.settled_terms
    out = {
        "settled": expansion.format_terms(settled, truncated=not res.done),
        "settled_count": res.settled,
        "done": res.done,
        "steps_used": res.steps_used,
        "state": str(res.cf),
    }
    if args.format == "table":
        print(out["settled"])
        print(f"done: {res.done}  steps used: {res.steps_used}")
    else:
        _emit(out)


def _cmd_convergents(args) -> None:
    x = parse_scalar(args.romik if args.romik else args.rcf)
    if args.romik:
        e = expansion.romik_digits(x, 2 * args.depth + 4)
        recs = expansion.convergents(e)[: args.depth]
        if args.format == "table":
            for rec in recs:
                m = rec.matrix
                print(f"n={rec.n:>3}  p/q = {str(rec.value):>10}  M = [[{m.m11},{m.m12}],[{m.m21},{m.m22}]]  det = {m.det()}")
        else:
            _emit(
                {
                    "convergents": [str(r.value) for r in recs],
                    "matrices": [[r.matrix.m11, r.matrix.m12, r.matrix.m21, r.matrix.m22] for r in recs],
                }
            )
    else:
        e = rcf.rcf_expand(x)
        convs = rcf.rcf_convergents(e, args.depth)
        if args.format == "table":
            for i, c in enumerate(convs, start=1):
                print(f"n={i:>3}  P/Q = {c}")
        else:
            _emit({"convergents": [str(c) for c in convs]})


def _cmd_cylinder(args) -> None:
    lo, hi = expansion.cylinder_interval(_parse_prefix(args.prefix))
    if args.format == "table":
        print(f"[{lo}, {hi}]")
    else:
        _emit({"low": str(lo), "high": str(hi)})


def _random_single_branch_rect(rng) -> natext.RationalRect:
    kind = int(rng.integers(0, 3))
    lo, hi = [(Fraction(0), Fraction(1, 3)), (Fraction(1, 3), Fraction(1, 2)), (Fraction(1, 2), Fraction(1))][kind]
    def frac_in(a: Fraction, b: Fraction) -> Fraction:
        den = int(rng.integers(2, 1000))
        num = int(rng.integers(0, den))
        return a + (b - a) * Fraction(num, den)
    while True:
        x1, x2 = sorted(frac_in(lo, hi) for _ in range(2))
        y1, y2 = sorted(frac_in(Fraction(0), Fraction(1)) for _ in range(2))
        if x1 < x2 and y1 < y2 and not (x1 == 0 and y1 == 0) and not (x2 == 1 and y2 == 1):
            return natext.RationalRect(x1, x2, y1, y2)


def _cmd_natext_verify(args) -> None:
    rng = np.random.default_rng(args.seed)
    failures = 0
    for _ in range(args.count):
        rec = natext.verify_invariance(_random_single_branch_rect(rng))
        failures += 0 if rec.equal else 1
        print(json.dumps(rec.to_json()))
    m1 = natext.marginal_density_check(Fraction(1, 3), Fraction(2, 3))
    m2 = natext.marginal_density_check(Fraction(1, 2), Fraction(2, 3))
    print(
        json.dumps(
            {
                "rectangles": args.count,
                "failures": failures,
                "marginal_1_3_to_2_3": str(m1.log_argument),
                "marginal_1_2_to_2_3": str(m2.log_argument),
            }
        )
    )
    if failures:
        raise RomikError(f"{failures} rectangles failed the invariance identity")


def _cmd_induced(args) -> None:
    p = natext.PlanarPoint(parse_scalar(args.x), parse_scalar(args.y))
    landing, n = natext.induced_step_O(p, cap=args.cap)
    jump = natext.oocf_jump(p.x, cap=args.cap)
    _emit(
        {
            "point": p.to_json(),
            "landing": landing.to_json(),
            "return_time": n,
            "jump": scalar_to_json(jump),
            "first_coordinate_matches_jump": landing.x == jump,
        }
    )


def _cmd_ratio(args) -> None:
    f_set = _parse_interval(args.f)
    g_set = _parse_interval(args.g)
    exps = stats.run_experiments(range(args.seeds), args.n, f_set, g_set)
    if args.format == "csv":
        sys.stdout.write(stats.experiments_to_csv(exps))
    else:
        report = stats.measure_ratio_exact(f_set, g_set)
        _emit(
            {
                "experiments": [
                    {"seed": e.seed, "n": e.iterations, "counts_f": e.counts_f, "counts_g": e.counts_g, "ratio": e.ratio}
                    for e in exps
                ],
                "exact_measure_ratio": report.to_json(),
            }
        )


def _cmd_skipped(args) -> None:
    x = parse_scalar(args.input)
    if not isinstance(x, QuadSurd):
        raise RomikError("skipped needs a quadratic irrational input")
    _emit(stats.skipped_convergents(x, args.depth).to_json())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="romik",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, help=kw.pop("help", None))
        p.set_defaults(fn=fn)
        return p

    p = add("orbit", _cmd_orbit, help="iterate the interval map on an exact scalar")
    p.add_argument("input")
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--format", choices=["json", "table"], default="json")

    p = add("rcf", _cmd_rcf, help="regular continued fraction and its convergents")
    p.add_argument("input")
    p.add_argument("--depth", type=int, default=7)
    p.add_argument("--format", choices=["json", "table"], default="json")

    p = add("romik", _cmd_romik, help="the {0,2}-digit expansion of a scalar")
    p.add_argument("input")
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--format", choices=["json", "table"], default="json")

    p = add("convert", _cmd_convert, help="rewrite a regular expansion into {0,2} digits")
    p.add_argument("input")
    p.add_argument("--steps", type=int, default=10_000)
    p.add_argument("--depth", type=int, default=32, help="settled digits to aim for")
    p.add_argument("--format", choices=["json", "table"], default="json")

    p = add("convergents", _cmd_convergents, help="convergents of either expansion")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--romik", metavar="X")
    group.add_argument("--rcf", metavar="X")
    p.add_argument("--depth", type=int, default=9)
    p.add_argument("--format", choices=["json", "table"], default="json")

    p = add("cylinder", _cmd_cylinder, help="interval of points sharing a symbol prefix")
    p.add_argument("prefix", help='"L,L,M,R" or "(-1,1),(1,1)" pairs')
    p.add_argument("--format", choices=["json", "table"], default="json")

    p = add("natext-verify", _cmd_natext_verify, help="exact invariance on random rectangles")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)

    p = add("induced", _cmd_induced, help="first-return step on the half-height region")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--cap", type=int, default=100_000)

    p = add("ratio", _cmd_ratio, help="occupation-ratio experiments over seeds")
    p.add_argument("--seeds", type=int, default=50)
    p.add_argument("--n", type=int, default=10_000_000)
    p.add_argument("--f", default="1/2,2/3")
    p.add_argument("--g", default="1/3,2/3")
    p.add_argument("--format", choices=["json", "csv"], default="csv")

    p = add("skipped", _cmd_skipped, help="regular convergents missing from the {0,2} list")
    p.add_argument("input")
    p.add_argument("--depth", type=int, default=7)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.fn(args)
    except RomikError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
