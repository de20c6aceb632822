# app/main.py
from __future__ import annotations

import argparse
import logging
import sys
from typing import Callable, List, Optional

from app.commands.certificate_commands import cmd_certify, cmd_check
from app.commands.drawing_commands import cmd_count, cmd_export, cmd_fixtures, cmd_search
from app.commands.explore_commands import cmd_explore
from app.commands.partition_commands import cmd_build, cmd_verify
from app.models import CommandResult, SearchParams

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

_DEFAULTS = {name: f.default for name, f in SearchParams.model_fields.items()}


# ------------------------------------------------------------
# 1) SUBCOMMAND HANDLERS (argparse namespace -> command)
# ------------------------------------------------------------
def _build(a: argparse.Namespace) -> CommandResult:
    return cmd_build(a.out, baseline=a.baseline)


def _verify(a: argparse.Namespace) -> CommandResult:
    return cmd_verify(a.partition)


def _count(a: argparse.Namespace) -> CommandResult:
    return cmd_count(a.drawing)


def _search(a: argparse.Namespace) -> CommandResult:
    return cmd_search(
        a.graph,
        a.out,
        seed=a.seed,
        restarts=a.restarts,
        budget=a.budget,
        target=a.target,
        max_bends=a.max_bends,
        grid_extent=a.grid_extent,
        temperature=a.temperature,
        cooling=a.cooling,
        workers=a.workers,
        init=a.init,
        progress=a.progress,
    )


def _certify(a: argparse.Namespace) -> CommandResult:
    return cmd_certify(a.partition, a.drawings, a.out)


def _check(a: argparse.Namespace) -> CommandResult:
    return cmd_check(a.certificate, a.partition)


def _export(a: argparse.Namespace) -> CommandResult:
    return cmd_export(a.drawing, a.out)


def _explore(a: argparse.Namespace) -> CommandResult:
    return cmd_explore(
        a.graph,
        k=a.k,
        symmetric_only=a.symmetric_only,
        limit=a.limit,
        seed=a.seed,
        restarts=a.restarts,
        budget=a.budget,
    )


def _fixtures(a: argparse.Namespace) -> CommandResult:
    return cmd_fixtures(a.out, baseline=a.baseline)


# ------------------------------------------------------------
# 2) PARSER
# ------------------------------------------------------------
def _add_search_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--seed", type=int, default=_DEFAULTS["seed"], help="base seed; restart i uses sha256(seed:i)")
    sub.add_argument("--restarts", type=int, help=f"independent restarts (default {_DEFAULTS['restarts']})")
    sub.add_argument(
        "--budget", type=int, help=f"annealing moves per restart (default {_DEFAULTS['moves_per_restart']})"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="python -m app.main",
        description="Build, verify and certify biplanar drawings of hypercubes.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    subs = parser.add_subparsers(dest="command", required=True)
    fmt = argparse.ArgumentDefaultsHelpFormatter

    p = subs.add_parser("build", help="write the biplanar (or baseline) partition of Q8", formatter_class=fmt)
    p.add_argument("--out", required=True)
    p.add_argument("--baseline", action="store_true", help="prefix/suffix split into sixteen Q4s per plane")
    p.set_defaults(handler=_build)

    p = subs.add_parser("verify", help="check every construction claim for a partition file", formatter_class=fmt)
    p.add_argument("--partition", required=True)
    p.set_defaults(handler=_verify)

    p = subs.add_parser("count", help="exact crossing count of a drawing file", formatter_class=fmt)
    p.add_argument("--drawing", required=True)
    p.set_defaults(handler=_count)

    p = subs.add_parser("search", help="annealing search for a low-crossing drawing", formatter_class=fmt)
    p.add_argument("--graph", required=True)
    p.add_argument("--out", required=True)
    _add_search_flags(p)
    p.add_argument("--target", type=int, help="exit 3 unless the best total is at most this")
    p.add_argument("--max-bends", type=int, help=f"bends per edge (default {_DEFAULTS['max_bends']})")
    p.add_argument("--grid-extent", type=int, help=f"initial grid side (default {_DEFAULTS['grid_extent']})")
    p.add_argument(
        "--temperature", type=float, help=f"initial temperature (default {_DEFAULTS['initial_temperature']})"
    )
    p.add_argument("--cooling", type=float, help=f"geometric cooling factor (default {_DEFAULTS['cooling_factor']})")
    p.add_argument("--workers", type=int, help=f"restarts run concurrently (default {_DEFAULTS['workers']})")
    p.add_argument("--init", help="start every restart from this drawing instead of a random layout")
    p.add_argument("--progress", help="JSON sidecar updated after every restart batch")
    p.set_defaults(handler=_search)

    p = subs.add_parser("certify", help="assemble and recount per-component drawings", formatter_class=fmt)
    p.add_argument("--partition", required=True)
    p.add_argument("--drawings", required=True, help="directory holding plane<i>_comp<j>.drawing files")
    p.add_argument("--out", required=True)
    p.set_defaults(handler=_certify)

    p = subs.add_parser("check", help="re-verify a certificate file from scratch", formatter_class=fmt)
    p.add_argument("--certificate", required=True)
    p.add_argument("--partition", help="compare against this partition instead of the one implied by the drawings")
    p.set_defaults(handler=_check)

    p = subs.add_parser("export", help="write a drawing as SVG (or PNG for *.png)", formatter_class=fmt)
    p.add_argument("--drawing", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=_export)

    p = subs.add_parser("explore", help="tabulate equal-size k-partitions of a small graph", formatter_class=fmt)
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--symmetric-only", action="store_true")
    p.add_argument("--limit", type=int, help="rows to evaluate (sample budget for graphs over 16 edges)")
    _add_search_flags(p)
    p.set_defaults(handler=_explore)

    p = subs.add_parser("fixtures", help="write the constructive component drawings", formatter_class=fmt)
    p.add_argument("--out", required=True)
    p.add_argument("--baseline", action="store_true")
    p.set_defaults(handler=_fixtures)
    return parser


# ------------------------------------------------------------
# 3) ENTRY POINT
# ------------------------------------------------------------
def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    handler: Callable[[argparse.Namespace], CommandResult] = args.handler
    result = handler(args)
    if result.stdout_payload:
        sys.stdout.write(result.stdout_payload)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
