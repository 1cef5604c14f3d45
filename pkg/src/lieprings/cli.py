"""Command line driver: surveys of lambda, coefficient tables, Lie ring builds and property suites.

Exit codes: 0 ok, 2 precision exhausted, 3 invalid gamma, 4 bad input, 5 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import BoundViolation, InvalidGamma, LieRingError, ParseError, PrecisionExhausted, UnknownSuite
from .homspace import HomGamma, a_range, coeff_table, default_precision, one_parameter
from .jacobi import compute_lambda, j_table
from .liering import build, check_jacobi, lower_central_series
from .padic import is_prime, make_context
from .survey import format_matrix, format_rows, gamma_row, survey
from .verify import SUITE_NAMES, run_suite

EXIT_OK = 0
EXIT_PRECISION = 2
EXIT_INVALID_GAMMA = 3
EXIT_PARSE = 4
EXIT_VERIFY = 5


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def parse_range(text: str) -> list:
    """'LO..HI' (inclusive), 'a,b,c' or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ParseError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ParseError(f"bad integer range {text!r}") from exc


def _check_p(p):
    if p is None:
        raise ParseError("--p is required unless --gamma is given")
    if p < 5 or not is_prime(p):
        raise ParseError(f"p={p} must be a prime >= 5")
    return p


def _gamma_from_args(args) -> HomGamma:
    if args.gamma:
        return HomGamma.load(args.gamma, precision=args.precision, i=getattr(args, "i_single", None))
    p = _check_p(args.p)
    a_vals = parse_range(args.a) if args.a else [2]
    if len(a_vals) != 1:
        raise ParseError("give a single --a here")
    a = a_vals[0]
    if a not in a_range(p):
        raise ParseError(f"a={a} outside 2..{(p - 1) // 2}")
    i = args.i_single if args.i_single is not None else 0
    ctx = make_context(p, args.precision or default_precision(p, i))
    return one_parameter(ctx, a, i)


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_survey(args) -> int:
    if args.gamma:
        rows = [gamma_row(_gamma_from_args(args), timing=not args.no_timing)]
    else:
        p = _check_p(args.p)
        a_set = parse_range(args.a) if args.a and args.a != "all" else list(a_range(p))
        for a in a_set:
            if a not in a_range(p):
                raise ParseError(f"a={a} outside 2..{(p - 1) // 2}")
        if args.i_range:
            i_values = parse_range(args.i_range)
        elif args.i is not None:
            i_values = parse_range(args.i)
        else:
            i_values = list(range(0, 14))
        if any(i < 0 for i in i_values):
            raise ParseError("levels must be >= 0")
        rows = survey(p, a_set, i_values, args.precision, args.jobs, timing=not args.no_timing)
    _emit(args, format_rows(rows, args.format))
    return EXIT_OK


def cmd_table(args) -> int:
    g = _gamma_from_args(args)
    t = coeff_table(g)
    span = args.span or g.d
    if not 1 <= span <= g.d:
        raise ParseError(f"span must be in 1..{g.d}")
    if args.command == "atable":
        rows = [r[:span] for r in t.rows()[:span]]
    else:
        rows = j_table(t).rows(span)
    labels = {"kind": args.command, "p": g.p, "i": g.i, "rho": t.rho}
    if g.is_one_parameter():
        labels["a"] = next(iter(g.coeffs))
    _emit(args, format_matrix(rows, args.format, labels))
    return EXIT_OK


def cmd_lambda(args) -> int:
    g = _gamma_from_args(args)
    row = gamma_row(g, timing=not args.no_timing)
    _emit(args, format_rows([row], args.format))
    return EXIT_OK


def cmd_liering(args) -> int:
    g = _gamma_from_args(args)
    m = args.m if args.m is not None else compute_lambda(g).lam
    L = build(g, m)
    jac = check_jacobi(L)
    series = lower_central_series(L) if jac.ok else None
    if args.format == "json":
        obj = L.to_json()
        obj["jacobi"] = {"ok": jac.ok, "witness": list(jac.witness) if jac.witness else None}
        if series is not None:
            obj["central_series_log_orders"] = list(series.log_orders)
            obj["class"] = series.nilpotency_class
        _emit(args, json.dumps(obj) + "\n")
    else:
        lines = [
            f"p={L.p} i={L.i} m={L.m} |L|=p^{L.log_order}",
            "orders " + " ".join(str(o) for o in L.orders),
            "jacobi " + ("ok" if jac.ok else f"fails at generators {jac.witness}"),
        ]
        if series is not None:
            cls = series.nilpotency_class
            lines.append("central series log orders " + " ".join(map(str, series.log_orders)))
            lines.append("class " + (str(cls) if cls is not None else "none (series stationary)"))
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    trials = args.trials_pos if args.trials_pos is not None else args.trials
    seed = args.seed_pos if args.seed_pos is not None else args.seed
    if args.suite not in SUITE_NAMES:
        raise UnknownSuite(f"unknown suite {args.suite!r}; choose from {', '.join(SUITE_NAMES)}")
    rep = run_suite(args.suite, trials, seed, args.jobs)
    out = [rep.summary()]
    if not rep.ok:
        out.append("reproducer: " + json.dumps(rep.failures[0], sort_keys=True))
    _emit(args, "\n".join(out) + "\n")
    return EXIT_OK if rep.ok else EXIT_VERIFY


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lieprings", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(sp, gamma=True):
        sp.add_argument("--p", type=int)
        sp.add_argument("--a", help="index a, a list 'a,b' or a range 'LO..HI'")
        sp.add_argument("--precision", type=int, help="coefficient precision N (digits mod p^N)")
        if gamma:
            sp.add_argument("--gamma", help="JSON file describing gamma")
        sp.add_argument("--format", choices=("text", "csv", "json"), default="text")
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--jobs", type=int, default=1)

    sp = sub.add_parser("survey", help="lambda and y for vartheta_a over levels i")
    common(sp)
    sp.add_argument("--i", help="level list 'i,j,...' or a range")
    sp.add_argument("--i-range", help="LO..HI inclusive")
    sp.add_argument("--no-timing", action="store_true", help="write ms = 0 for byte-stable output")
    sp.set_defaults(func=cmd_survey)

    for name in ("atable", "jtable"):
        sp = sub.add_parser(name, help=f"{name[0]}(j,k) table mod p on the window")
        common(sp)
        sp.add_argument("--i", type=int, dest="i_single")
        sp.add_argument("--span", type=int)
        sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("lambda", help="lambda, rho, v and a witness triple for one gamma")
    common(sp)
    sp.add_argument("--i", type=int, dest="i_single")
    sp.add_argument("--no-timing", action="store_true")
    sp.set_defaults(func=cmd_lambda)

    sp = sub.add_parser("liering", help="build L_{i,m}(gamma), check Jacobi, lower central series")
    common(sp)
    sp.add_argument("--i", type=int, dest="i_single")
    sp.add_argument("--m", type=int, help="defaults to lambda(gamma)")
    sp.set_defaults(func=cmd_liering)

    sp = sub.add_parser("verify", help="seeded property suites")
    sp.add_argument("suite", help="one of " + ", ".join(SUITE_NAMES))
    sp.add_argument("trials_pos", nargs="?", type=int)
    sp.add_argument("seed_pos", nargs="?", type=int)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    try:
        args = make_parser().parse_args(argv)
        return args.func(args)
    except PrecisionExhausted as exc:
        print(f"error: precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except InvalidGamma as exc:
        print(f"error: invalid gamma: {exc}", file=sys.stderr)
        return EXIT_INVALID_GAMMA
    except BoundViolation as exc:
        print(f"error: bound violated: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (ParseError, UnknownSuite, LieRingError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
