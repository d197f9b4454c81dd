"""Command-line entry point.

Exit codes: 0 on success or pass, 1 on a FAIL (theorem or invariant
violation), 2 on usage and parse errors.
"""

from __future__ import annotations

import argparse
import sys

from . import harness
from .cohomology import NonIntegralDivisorError, cohomology
from .divisors import InvariantError, iitaka_dimension, is_ample, is_big, is_nef
from .fan import FanError, minimal_resolution
from .lattice import format_rational
from .mmp import MoriFiberSpace, RankOne, run_mmp
from .scene import SceneError, load_scene
from .singularities import exceptional_log_discrepancies, is_klt_combinatorial, is_klt_via_resolution


class UsageError(Exception):
    pass


def _scene(args):
    try:
        return load_scene(args.fan)
    except OSError as exc:
        raise UsageError(f"cannot read {args.fan}: {exc.strerror}") from None


def _divisor(args):
    return _scene(args).divisor(args.divisor)


def _kappa_text(k) -> str:
    return "-inf" if k == float("-inf") else str(k)


def cmd_cohom(args) -> int:
    D = _divisor(args)
    try:
        print(cohomology(D.fan, D))
    except NonIntegralDivisorError as exc:
        raise UsageError(str(exc)) from None
    return 0


def cmd_kappa(args) -> int:
    print(f"kappa={_kappa_text(iitaka_dimension(_divisor(args)))}")
    return 0


def cmd_positivity(args) -> int:
    D = _divisor(args)
    test = {"nef": is_nef, "ample": is_ample, "big": is_big}[args.command]
    print(f"{args.command}={'true' if test(D) else 'false'}")
    return 0


def cmd_klt(args) -> int:
    pair = _scene(args).boundary(args.boundary)
    print(f"klt_combinatorial={'true' if is_klt_combinatorial(pair) else 'false'}")
    print(f"klt_resolution={'true' if is_klt_via_resolution(pair) else 'false'}")
    for w, a in exceptional_log_discrepancies(pair):
        print(f"exceptional {w}: log_discrepancy={format_rational(a)}")
    return 0


def cmd_mmp(args) -> int:
    D = _divisor(args)
    if args.check_cohomology and not D.is_integral():
        raise UsageError("--check-cohomology needs an integral divisor")
    code = 0
    try:
        trace = run_mmp(D.fan, D, check_cohomology=args.check_cohomology, strict=False)
    except InvariantError as exc:
        print(f"FAIL: {exc}")
        return 1
    for k, s in enumerate(trace.steps, start=1):
        line = (f"step {k}: contract ray {s.ray}, D·E={format_rational(s.degree)}, "
                f"E^2={format_rational(s.e_squared)}")
        if s.table_before is not None:
            line += f", before: {s.table_before}, after: {s.table_after}"
            if not s.preserved:
                line += " CHANGED"
                code = 1
        print(line)
    out = trace.outcome
    detail = ""
    if isinstance(out, MoriFiberSpace):
        detail = f" fiber_pair=±{out.fiber_pair[0]} fiber_class={out.fiber_class}"
    elif isinstance(out, RankOne):
        detail = f" minus_d_ample={'true' if out.minus_d_ample else 'false'}"
    print(f"outcome: {out.name}{detail}")
    return code


def cmd_resolve(args) -> int:
    fan = _scene(args).fan()
    smooth, inserted = minimal_resolution(fan)
    print(f"resolved: {smooth}")
    for w, (u, v) in inserted:
        print(f"inserted {w} in cone ({u},{v})")
    return 0


def cmd_verify(args) -> int:
    fn = harness.verify_kv_vanishing if args.command == "verify-a" else harness.verify_adjoint_vanishing
    summary = fn(args.trials, args.seed, args.max_rays, args.coord_bound, args.max_denominator,
                 jobs=args.jobs)
    for r in summary.failure_reports:
        print(r.dump())
    for line in summary.lines(timing=not args.no_timing):
        print(line)
    return 1 if summary.failures else 0


def cmd_properties(args) -> int:
    report = harness.property_suite(args.seed, fans=args.fans)
    for line in report.lines():
        print(line)
    return 1 if report.violations else 0


def cmd_example(args) -> int:
    report = harness.effectivity_counterexample()
    for line in report.lines:
        print(line)
    print(f"kappa={report.kappa} h0={report.h0}")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricvanish", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def with_divisor(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--fan", required=True, help="scene file")
        p.add_argument("--divisor", required=True, help="divisor name in the scene")
        p.set_defaults(func=fn)
        return p

    with_divisor("cohom", cmd_cohom, "h0, h1, h2 of an integral divisor")
    with_divisor("kappa", cmd_kappa, "Iitaka dimension")
    for name in ("nef", "ample", "big"):
        with_divisor(name, cmd_positivity, f"is the divisor {name}")
    p = with_divisor("mmp", cmd_mmp, "run the D-MMP")
    p.add_argument("--check-cohomology", action="store_true")

    p = sub.add_parser("klt", help="klt verdicts for a boundary")
    p.add_argument("--fan", required=True)
    p.add_argument("--boundary", required=True)
    p.set_defaults(func=cmd_klt)

    p = sub.add_parser("resolve", help="minimal resolution of the fan")
    p.add_argument("--fan", required=True)
    p.set_defaults(func=cmd_resolve)

    for name in ("verify-a", "verify-b"):
        p = sub.add_parser(name, help="randomized check of a vanishing theorem")
        p.add_argument("--trials", type=int, default=500)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-rays", type=int, default=10)
        p.add_argument("--coord-bound", type=int, default=5)
        p.add_argument("--max-denominator", type=int, default=6)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--no-timing", action="store_true", help="omit wall time for byte-stable output")
        p.set_defaults(func=cmd_verify)

    p = sub.add_parser("properties", help="module invariants on random fans")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fans", type=int, default=200)
    p.set_defaults(func=cmd_properties)

    p = sub.add_parser("example-1-3", help="the P1 x P1 example showing effectivity is needed")
    p.set_defaults(func=cmd_example)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, SceneError, FanError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantError as exc:
        print(f"FAIL: internal invariant: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
