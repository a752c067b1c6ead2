"""Command-line entry point.

    lucas-squares u --n 12 --p 1 --q -1
    lucas-squares family --n 7 --count 7
    lucas-squares search --n-min 8 --n-max 12 --pmax 300 --qmax 300 [--jobs 4]
    lucas-squares verify --suite all

Exit status: 0 success, 1 a verification check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path
from typing import Callable, Sequence

from lucas_squares import descent_verify, numfield, polynomials
from lucas_squares.families import FamilyError, FamilyRequest, generate, u7_multiples
from lucas_squares.lucas_core import (
    LucasParams,
    SolutionRecord,
    classify_degenerate,
    is_perfect_square,
    lucas_u,
)
from lucas_squares.report import Check, Report, check
from lucas_squares.search import SearchSpec, run_search_with_stats

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SUITES = ("all", "identities", "numberfields", "descent", "points")


def cmd_u(args) -> Report:
    params = LucasParams(args.p, args.q)
    value = lucas_u(args.n, params)
    root = is_perfect_square(value)
    report = Report("u", {"n": args.n, "P": str(args.p), "Q": str(args.q)})
    if root is not None:
        report.solutions.append(SolutionRecord(args.n, args.p, args.q, value, root))
    report.stats = {
        "value": str(value),
        "square": root is not None,
        "root": None if root is None else str(root),
        "coprime": params.coprime,
        "degeneracy": classify_degenerate(params).value,
    }
    return report


def cmd_family(args) -> Report:
    request = FamilyRequest(args.n, args.count, args.bound)
    records = generate(request)
    report = Report(
        "family", {"n": args.n, "count": args.count, "bound": args.bound}, solutions=records
    )
    report.stats = {"emitted": len(records)}
    if len(records) < args.count:
        report.stats["note"] = f"only {len(records)} members within bound {args.bound}"
    if args.n == 7:
        walk = u7_multiples(len(records) + 1)
        report.stats["degenerate_multiples"] = [
            f"k={m.k}: ({m.P}, {m.Q})" for m in walk if m.degenerate
        ]
    return report


def cmd_search(args) -> Report:
    spec = SearchSpec(
        n_min=args.n_min,
        n_max=args.n_max,
        p_max=args.pmax,
        q_max=args.qmax,
        workers=args.jobs,
        include_negative_p=args.negative_p,
    )
    t0 = time.perf_counter()
    result = run_search_with_stats(spec)
    elapsed = time.perf_counter() - t0
    params = {
        "n_min": spec.n_min,
        "n_max": spec.n_max,
        "p_max": spec.p_max,
        "q_max": spec.q_max,
        "jobs": spec.workers,
        "negative_p": spec.include_negative_p,
    }
    report = Report("search", params, solutions=result.records, stats=result.stats.as_dict())
    if args.timing:
        report.stats["seconds"] = round(elapsed, 3)
    return report


def _identity_checks() -> list[Check]:
    out = []
    for n in sorted(polynomials.FACTORIZATIONS):
        factors = " * ".join(f"({f})" for f in polynomials.FACTORIZATIONS[n])
        out.append(
            check(
                f"U{n} factorization",
                f"U{n} = {factors}",
                polynomials.verify_factorization(n),
                "coefficient-exact",
            )
        )
    return out + descent_verify.verify_k_factorizations()


def suite_checks(suite: str, quartic_bound: int = descent_verify.DEFAULT_QUARTIC_BOUND) -> list[Check]:
    parts: dict[str, Callable[[], list[Check]]] = {
        "identities": _identity_checks,
        "numberfields": lambda: [
            c for name in ("K1", "K2", "K3") for c in numfield.verify_constant_registry(name)
        ],
        "descent": lambda: descent_verify.descent_checks(quartic_bound),
        "points": descent_verify.verify_cited_points,
    }
    if suite == "all":
        return [c for name in ("identities", "numberfields", "descent", "points") for c in parts[name]()]
    return parts[suite]()


def cmd_verify(args) -> Report:
    checks = suite_checks(args.suite, args.quartic_bound)
    report = Report(
        "verify", {"suite": args.suite, "quartic_bound": args.quartic_bound}, checks=checks
    )
    report.stats = {"passed": sum(c.passed for c in checks), "total": len(checks)}
    return report


def _write_outputs(report: Report, directory: Path) -> list[Path]:
    from lucas_squares import plotting

    directory.mkdir(parents=True, exist_ok=True)
    written = []
    if report.command in ("search", "family", "u"):
        path = directory / f"{report.command}_solutions.csv"
        path.write_text(report.solutions_csv())
        written.append(path)
    if report.checks:
        path = directory / f"{report.command}_checks.csv"
        path.write_text(report.checks_csv())
        written.append(path)
    if report.command == "search":
        written.append(plotting.plot_hits(report.solutions, directory / "search_hits.png"))
        written.append(plotting.plot_filter_funnel(report.stats, directory / "search_filter.png"))
    elif report.command == "family":
        written.append(
            plotting.plot_hits(
                report.solutions,
                directory / f"family_u{report.parameters['n']}.png",
                title=f"U_{report.parameters['n']} family members",
            )
        )
    return written


def _positive(value: str) -> int:
    v = int(value)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _default_jobs() -> int:
    raw = os.environ.get("LUCAS_JOBS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable JSON on stdout")
    common.add_argument("--figures", type=Path, metavar="DIR", help="write CSV and PNG output to DIR")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="lucas-squares", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("u", parents=[common], help="evaluate U_n(P, Q)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_u)

    p = sub.add_parser("family", parents=[common], help="members of the n <= 7 families")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=_positive, default=10)
    p.add_argument("--bound", type=_positive, default=50, help="bound on the free parameters")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("search", parents=[common], help="exhaustive search over a box")
    p.add_argument("--n-min", type=int, default=8)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--pmax", type=_positive, default=100)
    p.add_argument("--qmax", type=_positive, default=100)
    p.add_argument("--jobs", type=_positive, default=None, help="worker processes (default $LUCAS_JOBS or 1)")
    p.add_argument("--negative-p", action="store_true", help="also scan P < 0")
    p.add_argument("--timing", action="store_true", help="include wall time in stats")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", parents=[common], help="run the verification suites")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--quartic-bound", type=_positive, default=descent_verify.DEFAULT_QUARTIC_BOUND)
    p.set_defaults(func=cmd_verify)
    return parser


def _validate(parser: argparse.ArgumentParser, args) -> None:
    if args.command == "u":
        if args.n < 0:
            parser.error("--n must be >= 0")
        if args.p == 0 or args.q == 0:
            parser.error("--p and --q must be nonzero")
    elif args.command == "family":
        if not 2 <= args.n <= 7:
            parser.error("family --n must be in 2..7")
    elif args.command == "search":
        if args.jobs is None:
            args.jobs = _default_jobs()
        if not 2 <= args.n_min <= args.n_max <= 16:
            parser.error("need 2 <= --n-min <= --n-max <= 16")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        report = args.func(args)
    except (ValueError, FamilyError) as exc:
        parser.error(str(exc))

    if args.figures:
        for path in _write_outputs(report, args.figures):
            logging.getLogger(__name__).info("wrote %s", path)
    if args.json:
        json.dump(report.to_dict(), sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        print(report.to_text())
    return EXIT_FAIL if report.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
