"""fncalc: verification suites for the exact Frolicher-Nijenhuis engine.

Reports are deterministic: identical configurations give byte-identical
JSON on stdout (wall-clock timing goes to stderr only).  Exit status is 0
exactly when every check passes.
"""

from __future__ import annotations

import argparse
import sys
import time

from .grammar import FormSyntaxError
from .suites import SuiteConfig, SuiteError, run_suite


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--jobs", type=int, default=None, help="parallel workers for mode sweeps")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fncalc",
        description="exact exterior-calculus verification suites",
    )
    sub = parser.add_subparsers(dest="suite", required=True)

    for name in ("gla-axioms", "fn-action", "kahler-dc", "g2-equivariance"):
        p = sub.add_parser(name)
        _add_common(p)

    p = sub.add_parser("mc-check")
    _add_common(p)
    p.add_argument(
        "--psi",
        default="star-phi",
        help="star-phi | kahler | kahler-r6 | kahler-squared | spin7 | flavor:dim:form",
    )

    for name in ("torus-cohomology", "symbol-check"):
        p = sub.add_parser(name)
        _add_common(p)
        p.add_argument("--psi", default="star-phi")
        p.add_argument("--max-freq", type=int, default=1)
        if name == "torus-cohomology":
            p.add_argument("--degree", type=int, default=None, choices=range(0, 8))

    for name in ("linfty", "linfty-jacobi", "vdata"):
        p = sub.add_parser(name)
        _add_common(p)
        p.add_argument("--plane", default="1,2,3", help="three basis indices, e.g. 1,2,3")
        if name == "linfty":
            p.add_argument(
                "--check",
                choices=("associative", "jacobi", "vdata", "brackets"),
                default="jacobi",
            )
        p.add_argument("--max-arity", type=int, default=3)

    return parser


def config_from_args(args: argparse.Namespace) -> SuiteConfig:
    suite = args.suite
    check = getattr(args, "check", "jacobi")
    if suite == "linfty":
        suite = "vdata" if check == "vdata" else "linfty-jacobi"
    plane = getattr(args, "plane", "1,2,3")
    try:
        plane_idx = tuple(int(x) for x in str(plane).split(","))
    except ValueError:
        raise SuiteError(f"bad plane spec {plane!r}")
    return SuiteConfig(
        suite=suite,
        seed=args.seed,
        samples=args.samples,
        max_freq=getattr(args, "max_freq", 1),
        degree=getattr(args, "degree", None),
        psi=getattr(args, "psi", "star-phi"),
        plane=plane_idx,
        check=check,
        max_arity=getattr(args, "max_arity", 3),
        tolerance=args.tolerance,
        jobs=args.jobs,
        fmt=args.format,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        started = time.monotonic()
        report = run_suite(config)
        elapsed = time.monotonic() - started
    except (SuiteError, FormSyntaxError, ValueError) as exc:
        print(f"fncalc: error: {exc}", file=sys.stderr)
        return 2
    if config.fmt == "json":
        print(report.to_json())
    else:
        print(report.to_table())
    print(f"fncalc: {config.suite} finished in {elapsed:.2f}s", file=sys.stderr)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
