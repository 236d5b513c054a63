"""Command line frontend.

    deckrot run <scenario> [--out DIR] [--seed N] [--budget N]
    deckrot list-families

Exit codes: 0 success (cap overruns are flagged inside the report),
2 precondition failure during an analysis, 3 parse or reference error.
The ball-node memory cap can be set with the DECKROT_BALL_CAP environment
variable or the budgets section of the scenario.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import PreconditionError, ScenarioError
from .scenario import family_catalog, run_scenario


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deckrot",
        description="distortion-detecting invariants for circle, annulus and torus homeomorphisms",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute a scenario file and report")
    run_p.add_argument("scenario", help="path to the scenario file")
    run_p.add_argument("--out", metavar="DIR", default=None, help="write report.txt and CSV tables here")
    run_p.add_argument("--seed", type=int, default=0, help="seed echoed into the report and used by sampled checks")
    run_p.add_argument("--budget", type=int, default=None, help="default iteration budget for analyses that take one")

    sub.add_parser("list-families", help="print the catalog of spaces and built-in families")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list-families":
        print(family_catalog())
        return 0

    path = Path(args.scenario)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return 3
    try:
        report = run_scenario(
            text, seed=args.seed, budget_override=args.budget, source=path.name
        )
    except ScenarioError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    except PreconditionError as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return 2

    if args.out:
        report.write(args.out)
    else:
        print(report.render_text(), end="")
    return 0


if __name__ == "__main__":
    sys.exit(main())
