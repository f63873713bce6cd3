"""Command-line interface.

Exit codes: 0 success, 1 a verification or check failed, 2 usage or IO error.
"""

from __future__ import annotations

import argparse
import json
import multiprocessing as mp
import sys
from pathlib import Path

from . import calibration
from .chord import CrossingCapExceeded
from .expr import ExprError, parse_poly
from .ncpoly import NCPoly

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _poly(args) -> NCPoly:
    try:
        p = parse_poly(args.expr)
    except ExprError as exc:
        raise UsageError(f"bad expression: {exc}") from exc
    if p.max_index() > args.n:
        raise UsageError(f"expression uses puncture {p.max_index()} but --n is {args.n}")
    return p


def _emit(obj) -> None:
    sys.stdout.write((obj if isinstance(obj, str) else json.dumps(obj)) + "\n")
    sys.stdout.flush()


# -- subcommands ---------------------------------------------------------------

def cmd_multiply(args) -> int:
    from .presentation import theta_eval

    _emit(theta_eval(_poly(args), args.n, engine=args.engine, cap=args.cap).to_json())
    return EXIT_OK


def _verify_one(job):
    from .presentation import verify_instance

    r, n, engine, cap = job
    try:
        return verify_instance(r, n, engine=engine, cap=cap)
    except CrossingCapExceeded as exc:
        return {"family": r.family, "indices": list(r.indices), "rotation": r.rotation,
                "mirrored": r.mirrored, "ok": False, "error": str(exc)}


def cmd_verify(args) -> int:
    from .presentation import FAMILIES, build_catalog, report_line

    fams = None
    if args.families:
        fams = [f.strip() for f in args.families.split(",") if f.strip()]
        unknown = [f for f in fams if f not in FAMILIES]
        if unknown:
            raise UsageError(f"unknown families: {', '.join(unknown)}")
    catalog = build_catalog(args.n, fams)
    jobs = [(r, args.n, args.engine, args.cap) for r in catalog]
    failures = 0
    if args.jobs > 1:
        with mp.get_context("spawn").Pool(args.jobs) as pool:
            results = pool.imap(_verify_one, jobs, chunksize=8)
            for rec in results:  # this process is the only writer
                failures += not rec["ok"]
                _emit(report_line(rec))
    else:
        for job in jobs:
            rec = _verify_one(job)
            failures += not rec["ok"]
            _emit(report_line(rec))
    if args.summary:
        _emit({"instances": len(catalog), "failures": failures})
    return EXIT_FAIL if failures else EXIT_OK


def cmd_classical(args) -> int:
    from .classical import IDENTITIES, check_classical_identity, sample_sl2_tuple

    failures = 0
    for name, (_, arity) in IDENTITIES.items():
        bad = [args.seed + k for k in range(args.samples)
               if not check_classical_identity(name, sample_sl2_tuple(args.seed + k, max(arity, 1), args.steps))]
        failures += len(bad)
        _emit({"identity": name, "samples": args.samples, "ok": not bad, "failed_seeds": bad[:10]})
    return EXIT_FAIL if failures else EXIT_OK


def cmd_normal_form(args) -> int:
    from .normalform import NormalFormError, normal_form

    try:
        _emit(repr(normal_form(_poly(args), args.n)))
    except NormalFormError as exc:
        raise UsageError(str(exc)) from exc
    return EXIT_OK


def cmd_spanning(args) -> int:
    from .normalform import profile_report, sweep_profiles

    if args.all:
        reps = sweep_profiles()
        for rep in reps:
            _emit(rep)
        return EXIT_OK if all(r["triangular"] and not r["offenders"] for r in reps) else EXIT_FAIL
    if not args.profile:
        raise UsageError("give --profile or --all")
    try:
        e = tuple(int(x) for x in args.profile.split(","))
    except ValueError as exc:
        raise UsageError(f"bad profile {args.profile!r}") from exc
    if any(x <= 0 for x in e) or sum(e) > 12:
        raise UsageError(f"bad profile {args.profile!r}")
    rep = profile_report(e)
    _emit(rep)
    ok = rep["triangular"] and rep["unit_diagonal"] and not rep["offenders"]
    return EXIT_OK if ok else EXIT_FAIL


def cmd_svg(args) -> int:
    from .geometry import assemble_stacked_diagram, svg_render
    from .presentation import generator_image

    p = _poly(args)
    factors = []
    if p.terms:
        word = p.sorted_terms()[0][0]
        for g in word:
            # draw the leading curve of each generator
            img = generator_image(g)
            factors.append(max(img.terms, key=lambda m: (m.reduced_degree(), m.sort_key())))
    factors = [f for f in factors if not f.is_empty()]
    d = assemble_stacked_diagram(factors, args.n)
    try:
        svg_render(d, args.out)
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc}") from exc
    _emit({"out": str(args.out), "loops": len(d.loops), "crossings": len(d.crossings)})
    return EXIT_OK


def cmd_calibrate(args) -> int:
    try:
        rep = calibration.calibrate(engine=args.engine)
    except calibration.CalibrationError as exc:
        _emit({"ok": False, "error": str(exc)})
        return EXIT_FAIL
    if args.out is not None or args.save:
        try:
            rep["path"] = str(calibration.save(rep, args.out))
        except OSError as exc:
            raise UsageError(f"cannot write calibration: {exc}") from exc
    _emit(rep)
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="planarskein", description="Skein algebra of the punctured disk.")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_expr(p):
        p.add_argument("--n", type=int, required=True, help="number of punctures")
        p.add_argument("--expr", required=True, help='e.g. "s13*s24 - q^2*s12*s34"')

    def with_engine(p):
        p.add_argument("--engine", choices=["chord", "planar"], default="chord")
        p.add_argument("--cap", type=int, default=None, help="crossing cap (default: env or 24)")

    p = sub.add_parser("multiply", help="evaluate an expression in the multicurve basis")
    with_expr(p)
    with_engine(p)
    p.set_defaults(func=cmd_multiply)

    p = sub.add_parser("verify", help="verify the relation catalog")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--families", default=None, help="comma-separated family names")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--summary", action="store_true", help="print a final count line")
    with_engine(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classical", help="check the trace identities on random SL(2,Q) tuples")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int, default=4)
    p.set_defaults(func=cmd_classical)

    p = sub.add_parser("normal-form", help="rewrite toward spanning monomials")
    with_expr(p)
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("spanning", help="triangularity report for a profile")
    p.add_argument("--profile", default=None, help="e.g. 1,1,1,1,1,1")
    p.add_argument("--all", action="store_true", help="sweep every profile of total at most 6")
    p.set_defaults(func=cmd_spanning)

    p = sub.add_parser("svg", help="draw the stacked diagram of the first monomial")
    with_expr(p)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_svg)

    p = sub.add_parser("calibrate", help="fix the smoothing convention")
    p.add_argument("--engine", choices=["chord", "planar"], default="chord")
    p.add_argument("--out", type=Path, default=None, help="write the report here")
    p.add_argument("--save", action="store_true", help="write to the default location")
    p.set_defaults(func=cmd_calibrate)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "n", 1) is not None and getattr(args, "n", 1) < 1:
        print("error: --n must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CrossingCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except calibration.CalibrationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
