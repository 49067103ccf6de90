"""
qsearch: build, simulate and benchmark partial-search circuits.

Exit status 0 on success, 1 when a computed check fails (success below
tolerance, a bound violated, a rewrite not equivalent), 2 on bad input.
Report paths go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import List, Optional

from .. import __version__, settings
from ..errors import AncillaBudgetError, BoundViolation, DecompositionError, QSearchError, SearchFailure
from ..seeding import fresh_seed
from .commands import COMMANDS
from .config import SUBCOMMANDS, load_toml, parse_marked, parse_n_range, resolve_config
from .reports import ReportWriter

logger = logging.getLogger(__name__)

# Flags that never enter RunConfig.
_RUNNER_FLAGS = ("subcommand", "config", "log_level")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="TOML file with a [defaults] table and one table per subcommand.")
    p.add_argument("--seed", type=int, help="Run seed (default: fresh, printed to stderr).")
    p.add_argument("--out", help=f"Report directory (default: {settings.OUTPUT_DIR}).")
    p.add_argument("--tol", type=float, help="Numerical tolerance for the command's checks.")
    clock = p.add_mutually_exclusive_group()
    clock.add_argument(
        "--no-clock", action="store_true", default=None, help="Omit the wall-clock time so reruns are byte-identical."
    )
    clock.add_argument("--clock", action="store_false", dest="no_clock", default=None, help="Record the wall-clock time.")
    p.add_argument("--upload", action=argparse.BooleanOptionalAction, help="Also upload reports to the QSEARCH_BUCKET bucket.")
    p.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="stderr log level.")


def _search(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="Search register width.")
    p.add_argument("--x", type=int, help="Block-size parameter of the default schedule (default: 1).")
    p.add_argument("--schedule", help="Explicit block sizes k_1,...,k_m, e.g. 4,3.")
    p.add_argument("--family", choices=["W", "D"], help="Search family (default: W).")


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    p = argparse.ArgumentParser(prog="qsearch", description="Partial-diffuser quantum search toolkit.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="subcommand", required=True)

    g = sub.add_parser("generate", help="Emit a W_m or D_m circuit.")
    _search(g)
    g.add_argument("--depth", type=int, help="Build level j <= m instead of m.")
    g.add_argument("--format", choices=["text", "json", "qasm"], help="Circuit file format (default: text).")
    g.add_argument("--decompose", action=argparse.BooleanOptionalAction, help="Lower to the basic gate set.")
    g.add_argument("--oracle-marked", type=parse_marked, help="Single target whose oracle is inlined (qasm).")
    g.add_argument("--png", action=argparse.BooleanOptionalAction, help="Also render a PNG diagram.")

    s = sub.add_parser("simulate", help="Run the single-point search against marked targets.")
    _search(s)
    s.add_argument("--oracle-marked", type=parse_marked, help="Comma-separated targets, one search each.")
    s.add_argument("--targets", type=int, help="Number of random targets (default: 16).")

    r = sub.add_parser("recurrence", help="Tabulate amplitude recurrences against simulation.")
    _search(r)

    u = sub.add_parser("uncompute-rewrite", help="Rewrite W_m with partial uncomputation.")
    _search(u)
    u.add_argument("--circuit", help="Oracle circuit (text, or JSON by .json extension).")
    u.add_argument("--manifest", help="JSON manifest naming the O_u and O_p ranges.")
    u.add_argument("--cnf", help="DIMACS formula compiled to the oracle.")
    u.add_argument("--verify", action=argparse.BooleanOptionalAction, help="Check the rewrite against the expanded circuit.")

    m = sub.add_parser("multipoint", help="Search with many marked elements via random GF(2) hashing.")
    m.add_argument("--n", type=int, help="Search register width.")
    m.add_argument("--x", type=int, help="Block-size parameter of restricted searches.")
    m.add_argument("--oracle-marked", type=parse_marked, help="Comma-separated marked elements.")
    m.add_argument("--k", type=int, help="Mark K random elements.")
    m.add_argument("--cnf", help="Mark the models of a DIMACS formula.")
    m.add_argument("--hash-k", type=int, help="Hash width (default: derived from the marked count).")
    m.add_argument("--mode", choices=["known", "unknown", "exact"], help="default: known")
    m.add_argument("--p", type=float, help="Target success probability (default: 0.5).")
    m.add_argument("--trials", type=int, help="Independent searches to run (default: 100).")

    k = sub.add_parser("ksat", help="Compile and solve a uniquely satisfiable CNF.")
    k.add_argument("--cnf", help="DIMACS input.")
    k.add_argument("--random", action=argparse.BooleanOptionalAction, help="Generate a formula with a planted unique model.")
    k.add_argument("--n", type=int, help="Variables of the random formula.")
    k.add_argument("--clauses", type=int, help="Clause cap of the random formula (default: 2n+2).")
    k.add_argument("--width", type=int, help="Maximum clause width (default: 3).")
    k.add_argument("--x", type=int, help="Block-size parameter of the search.")
    k.add_argument("--schedule", help="Explicit block sizes.")

    b = sub.add_parser("bench", help="Query and gate counts over a range of n.")
    b.add_argument("--n", type=int, help="Single register width.")
    b.add_argument("--n-range", type=parse_n_range, help="Inclusive range, e.g. 6..14.")
    b.add_argument("--x", type=int, help="Block-size parameter (default: 1).")
    b.add_argument("--family", choices=["W", "D"], help="Search family (default: W).")
    b.add_argument("--mode", choices=["queries", "gates"], help="default: queries")

    d = sub.add_parser("kernel-dims", help="Sample kernel dimensions of random affine hashes.")
    d.add_argument("--n", type=int, help="Input bits.")
    d.add_argument("--hash-k", type=int, help="Output bits.")
    d.add_argument("--trials", type=int, help="Sampled hashes (default: 100).")

    for parser in (g, s, r, u, m, k, b, d):
        _common(parser)
    args = p.parse_args(argv)
    assert args.subcommand in SUBCOMMANDS
    return args


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=args.log_level or settings.LOG_LEVEL,
        format="%(levelname)s %(name)s: %(message)s",
    )
    flags = {key: value for key, value in vars(args).items() if key not in _RUNNER_FLAGS}

    try:
        file_values = load_toml(args.config) if args.config else None
        config = resolve_config(args.subcommand, flags, file_values)
        seed = config.seed
        if seed is None:
            seed = fresh_seed()
            print(f"seed: {seed}", file=sys.stderr)
        writer = ReportWriter(config, seed)
        status = COMMANDS[args.subcommand](config, seed, writer)
        paths = list(writer.written)
        if config.upload:
            from .storage import upload_reports

            paths += upload_reports(writer.written)
    except (SearchFailure, BoundViolation, DecompositionError, AncillaBudgetError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except (QSearchError, ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    for path in paths:
        print(path)
    return status


if __name__ == "__main__":
    sys.exit(main())
