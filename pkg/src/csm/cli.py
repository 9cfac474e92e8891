"""Command-line entry point: ``csm chain|epr|spin|gleason <scenario> [flags]`` and ``csm list-fixtures``.

Exit status is 0 when every check passes, 1 when a check fails and 2 on
invalid input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .report import FORMATS, emit
from .scenario import KINDS, ScenarioRunError, SchemaError, list_fixtures, load_scenario, run


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="csm", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"csm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for kind in KINDS:
        p = sub.add_parser(kind, help=f"run a {kind} scenario")
        p.add_argument("scenario", help="scenario file path or bundled fixture name")
        p.add_argument("--format", choices=FORMATS, default="table")
        p.add_argument("--seed", type=int, help="override the scenario seed")
        p.add_argument("--samples", type=int, help="override the sample count (chain scenarios)")
        p.add_argument("--tol", type=float, help="override the check tolerance")
        p.add_argument("--workers", type=int, help="sampling threads (results do not depend on this)")
        p.add_argument("--out", type=Path, help="write output here instead of stdout")
    sub.add_parser("list-fixtures", help="list bundled scenario fixtures")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list-fixtures":
        for name in list_fixtures():
            print(name)
        return 0

    try:
        sc = load_scenario(args.scenario)
        if sc.kind != args.command:
            raise SchemaError("kind", f"scenario is of kind {sc.kind!r}, not {args.command!r}")
        if args.seed is not None:
            sc.seed = args.seed
        if args.samples is not None:
            if args.samples < 1:
                raise SchemaError("--samples", "must be positive")
            sc.samples = args.samples
        if args.tol is not None:
            if not args.tol > 0:
                raise SchemaError("--tol", "must be positive")
            sc.tol = args.tol
        if args.workers is not None and args.workers < 1:
            raise SchemaError("--workers", "must be positive")
        report = run(sc, workers=args.workers)
    except (SchemaError, FileNotFoundError, ScenarioRunError) as exc:
        print(f"csm: error: {exc}", file=sys.stderr)
        return 2

    text = emit(report, args.format)
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
