"""Command-line front end.

Usage:
    ppmeasure analyze --q 5 --poly "x^3+2x^2+3x"
    ppmeasure crk --q 5 --poly "x^3" --exact
    ppmeasure index --field p=3,k=2,mod=1,0,1 --poly "x^5"
    ppmeasure dlog --p 5 7 11 101
    ppmeasure wang --q 7 --ell 2 --r 2 --a 1,1
    ppmeasure scan --q 7 --out f7.csv --csv
    ppmeasure verify --theorem 1 --q 7 --all
    ppmeasure charsum --q 7 --ell 2 --moebius 1,1,0,1 --r 1

JSON goes to stdout (one object per line for batch commands).  Exit status
is 0 when every check passes, 1 when any check fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import permutations
from typing import Sequence

import numpy as np

from . import __version__
from .carlitz import carlitz_rank
from .charsum import CharSpec, is_trivial_composition, weil_sum, WEIL_TOL
from .cyclotomic import (
    CyclotomicMap,
    compute_index,
    cyc_eval,
    same_coset_claim_finding,
    wang_is_permutation,
)
from .dlog import verify_thm3
from .errors import PPMeasureError
from .field import FieldCtx, make_field, parse_field_spec
from .harness import (
    csv_sink,
    scan_all,
    verify_deg_weight_ineqs,
    verify_rate_bounds,
    verify_thm1,
    verify_thm2,
)
from .permpoly import PermPoly, degree_weight, is_permutation, normalize_origin
from .polyparse import parse_poly
from .rank_oracle import DEFAULT_LIMIT_Q

DEFAULT_SEED = 20240101


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def _field(args) -> FieldCtx:
    if getattr(args, "field", None):
        return parse_field_spec(args.field)
    if getattr(args, "q", None):
        return parse_field_spec(f"q={args.q}")
    raise UsageError("a field is required: --q Q or --field SPEC")


def _poly(args, field: FieldCtx) -> PermPoly:
    if not args.poly:
        raise UsageError("--poly is required")
    return parse_poly(args.poly, field)


def _cmap(args, field: FieldCtx) -> CyclotomicMap:
    if args.ell is None or args.r is None or args.a is None:
        raise UsageError("--ell, --r and --a are required")
    return CyclotomicMap(field, args.ell, args.r, tuple(_ints(args.a)))


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, default=_jsonable) + "\n")


def _jsonable(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not JSON serialisable: {type(o).__name__}")


# --- commands ---------------------------------------------------------------

def cmd_analyze(args, out) -> int:
    from .report import analyze

    field = _field(args)
    rep = analyze(_poly(args, field), exact=not args.no_exact, limit_q=args.limit_q)
    _emit(rep.to_dict(), out)
    return 0


def cmd_index(args, out) -> int:
    field = _field(args)
    f = normalize_origin(_poly(args, field))
    ell, wit = compute_index(f)
    _emit({"field": field.spec_string(), "ind": ell, "witness": wit.to_dict()}, out)
    return 0


def cmd_crk(args, out) -> int:
    field = _field(args)
    f = _poly(args, field)
    if args.lower_bound and not args.exact:
        res = carlitz_rank(f, exact=False)
        _emit({"crk_lb": res.lower_bound, "nmax": res.agreement,
               "argmax": list(res.argmax.as_tuple())}, out)
        return 0
    if args.exact:
        from .rank_oracle import crk_exact

        _emit({"crk": crk_exact(f, args.limit_q)}, out)
        return 0
    _emit(carlitz_rank(f, limit_q=args.limit_q).to_dict(), out)
    return 0


def cmd_dlog(args, out) -> int:
    status = 0
    for p in args.p:
        rep = verify_thm3(make_field(p), xi=args.xi, limit_q=args.limit_q)
        _emit(rep.to_dict(), out)
        status |= not rep.passed
    return status


def cmd_wang(args, out) -> int:
    field = _field(args)
    m = _cmap(args, field)
    wang = wang_is_permutation(m)
    direct = is_permutation(PermPoly.from_table(field, cyc_eval(m)))
    finding = same_coset_claim_finding(m)
    _emit({"field": field.spec_string(), "map": m.to_dict(), "table": cyc_eval(m),
           "wang": wang, "direct": direct, "agree": wang == direct,
           "findings": [finding] if finding else []}, out)
    return 0 if wang == direct else 1


def cmd_scan(args, out) -> int:
    field = _field(args)
    sample = args.sample
    stream = open(args.out, "w", newline="") if args.out else out
    try:
        if args.csv or (args.out and args.out.endswith(".csv")):
            sink = csv_sink(stream)
        else:
            def sink(row, _s=stream):
                _emit(row, _s)
        summary = scan_all(field, sink, sample=sample, seed=args.seed, limit_q=args.limit_q)
    finally:
        if args.out:
            stream.close()
    head = {"field": field.spec_string(), "seed": args.seed if sample else None,
            "summary": summary.to_dict()}
    print(json.dumps(head, default=_jsonable), file=sys.stderr if stream is out else out)
    bad = summary.thm1_violations + summary.ineq2_violations + summary.ineq3_violations
    return 1 if bad else 0


def _all_origin_perms(field: FieldCtx):
    for rest in permutations(range(1, field.q)):
        yield PermPoly.from_table(field, np.array((0,) + rest, dtype=np.int64))


def cmd_verify(args, out) -> int:
    th = args.theorem
    if th == "3":
        if not args.p:
            raise UsageError("--p is required for theorem 3")
        return cmd_dlog(args, out)
    field = _field(args)
    status = 0
    if th in ("2", "rate"):
        m = _cmap(args, field)
        rep = verify_thm2(m, args.limit_q) if th == "2" else verify_rate_bounds(
            m, samples=args.samples, seed=args.seed)
        d = rep.to_dict()
        if th == "rate":
            d["seed"] = args.seed
        _emit(d, out)
        return 0 if rep.passed else 1

    if args.all:
        polys = _all_origin_perms(field) if th == "1" else (
            PermPoly.from_table(field, np.array(t)) for t in permutations(range(field.q)))
    else:
        polys = [_poly(args, field)]
    for f in polys:
        if th == "1":
            rep = verify_thm1(normalize_origin(f), args.limit_q)
        else:
            if args.all and degree_weight(f)[0] < 2:
                continue
            rep = verify_deg_weight_ineqs(f, args.limit_q)
            rep.checks = {k: v for k, v in rep.checks.items() if k == th}
        if not args.all or not rep.passed or rep.findings:
            _emit(rep.to_dict(), out)
        status |= not rep.passed
    return status


def cmd_charsum(args, out) -> int:
    field = _field(args)
    spec = CharSpec(field, args.ell, args.power)
    a, b, c, d = _ints(args.moebius)
    s = weil_sum(spec, a, b, c, d, args.r, check=False)
    trivial = is_trivial_composition(spec, a, b, c, d, args.r)
    bound = 2 * field.q**0.5
    ok = trivial or abs(s) <= bound + WEIL_TOL
    _emit({"field": field.spec_string(), "ell": args.ell, "power": args.power,
           "moebius": [a, b, c, d], "r": args.r, "re": s.real, "im": s.imag,
           "abs": abs(s), "bound": bound, "trivial": trivial, "pass": ok}, out)
    return 0 if ok else 1


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ppmeasure",
        description="Complexity measures of permutation polynomials over finite fields.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def with_field(p):
        p.add_argument("--q", type=int, help="field order (prime or prime power)")
        p.add_argument("--field", help='field spec, e.g. "q=5" or "p=3,k=2,mod=1,0,1"')
        p.add_argument("--limit-q", type=int, default=DEFAULT_LIMIT_Q,
                       help="largest q for the exact-rank oracle")
        return p

    p = with_field(sub.add_parser("analyze", help="all measures of one polynomial"))
    p.add_argument("--poly", required=True)
    p.add_argument("--no-exact", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = with_field(sub.add_parser("index", help="index and cyclotomic witness"))
    p.add_argument("--poly", required=True)
    p.set_defaults(func=cmd_index)

    p = with_field(sub.add_parser("crk", help="Carlitz rank"))
    p.add_argument("--poly", required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true")
    g.add_argument("--lower-bound", action="store_true")
    p.set_defaults(func=cmd_crk)

    p = sub.add_parser("dlog", help="discrete-log permutation report")
    p.add_argument("--p", type=int, nargs="+", required=True)
    p.add_argument("--xi", type=int, help="primitive element override")
    p.add_argument("--limit-q", type=int, default=DEFAULT_LIMIT_Q)
    p.set_defaults(func=cmd_dlog)

    p = with_field(sub.add_parser("wang", help="cyclotomic permutation criterion"))
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--a", required=True, help="comma separated coefficient codes")
    p.set_defaults(func=cmd_wang)

    p = with_field(sub.add_parser("scan", help="measure every permutation of F_q"))
    p.add_argument("--out")
    p.add_argument("--csv", action="store_true")
    p.add_argument("--sample", type=int, help="random sample size (q <= 11)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_scan)

    p = with_field(sub.add_parser("verify", help="check one theorem or inequality"))
    p.add_argument("--theorem", required=True, choices=["1", "2", "3", "ineq2", "ineq3", "rate"])
    p.add_argument("--poly")
    p.add_argument("--all", action="store_true", help="every permutation of F_q")
    p.add_argument("--ell", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--a")
    p.add_argument("--p", type=int, nargs="+")
    p.add_argument("--xi", type=int)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)

    p = with_field(sub.add_parser("charsum", help="mixed multiplicative character sum"))
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--moebius", required=True, help="alpha,beta,gamma,delta")
    p.add_argument("--r", type=int, default=1)
    p.set_defaults(func=cmd_charsum)
    return parser


def run_command(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, PPMeasureError) as exc:
        print(f"ppmeasure {args.command}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
