"""
rvc CLI: rainbow vertex-connection from the command line
=========================================================
Usage::

    rvc compute graph.txt --param rvc            # exact value, key=value lines
    rvc verify graph.txt colouring.txt --mode srvc
    rvc generate --family circulant --n 10 --k 2 --out c10.txt
    rvc reproduce bior-table --max-n 10 --out table.csv

Exit codes: 0 success, 1 invalid colouring or table disagreement,
2 parse or argument error, 3 digraph not strongly connected, 4 search
stopped before an exact answer.
"""

import argparse
import logging
import sys
from typing import List, Optional

from rvc_core import __version__
from rvc_core.digraph import require_strongly_connected
from rvc_core.errors import NotStronglyConnectedError, RainbowError, UnreachableError
from rvc_core.models import ARC_PARAMETERS, VERTEX_PARAMETERS, FamilySpec, SolveOptions, SolveResult
from rvc_engine.logic.json_logger import configure_json_logging, configure_plain_logging
from rvc_engine.logic.metrics import export_metrics
from rvc_engine.logic.settings import get_settings
from rvc_engine.logic.solver import COMPUTE
from rvc_engine.logic.verify import verify_colouring
from rvc_families import build_family, build_family_colouring

from . import fileio
from .reproduce import REPRODUCE_TAGS, HarnessOptions, all_agree, reproduce, write_csv

logger = logging.getLogger("rvc.cli")

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_NOT_STRONG = 3
EXIT_INCONCLUSIVE = 4

PARAMETERS = VERTEX_PARAMETERS + ARC_PARAMETERS
# variant names that mean "the family's own proof colouring"
_DEFAULT_VARIANTS = ("default", "figure", "proof")


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _solve_options(args) -> SolveOptions:
    settings = get_settings()
    return SolveOptions(
        max_budget=getattr(args, "max_budget", None),
        time_limit=args.time_limit if args.time_limit is not None else settings.time_limit,
        parallel=args.threads if args.threads is not None else settings.threads,
        oracle_mode=getattr(args, "oracle", False),
    )


def _print_result(result: SolveResult) -> None:
    def show(value) -> str:
        if value is None:
            return "none"
        if isinstance(value, bool):
            return "true" if value else "false"
        return str(value)

    print(f"parameter={result.parameter}")
    print(f"value={show(result.value)}")
    print(f"exact={show(result.exact)}")
    print(f"lower={result.lower}")
    print(f"upper={show(result.upper)}")
    print(f"refuted_budget={result.refuted_budget}")
    print(f"colourings_tested={result.stats.colourings_tested}")
    print(f"states_expanded={result.stats.states_expanded}")
    print(f"wall_ms={result.stats.wall_ms:.3f}")
    if result.reason:
        print(f"reason={result.reason}")


# ── Commands ────────────────────────────────────────────

def cmd_compute(args) -> int:
    """Exact value of one parameter for a digraph file."""
    D = fileio.read_digraph(args.input)
    require_strongly_connected(D)
    result = COMPUTE[args.param](D, _solve_options(args))
    _print_result(result)
    if args.witness and result.witness is not None:
        fileio.write_colouring(args.witness, result.witness)
        print(f"witness={args.witness}")
    return EXIT_OK if result.exact else EXIT_INCONCLUSIVE


def cmd_verify(args) -> int:
    """Check a colouring file against a digraph file."""
    D = fileio.read_digraph(args.input)
    colouring = fileio.read_colouring(args.colouring, D)
    require_strongly_connected(D)
    verdict = verify_colouring(D, colouring, args.mode)
    if verdict.valid:
        print("VALID")
        return EXIT_OK
    u, v = verdict.failing_pair
    print(f"INVALID pair {u} {v}")
    return EXIT_INVALID


def cmd_generate(args) -> int:
    """Write a family member, and optionally its proof colouring."""
    spec = FamilySpec(
        family=args.family, n=args.n, k=args.k, s=args.s, sizes=args.sizes or (),
        asym=args.asym or (), jumps=args.jumps or (), which=args.which, kind=args.kind,
        seed=args.seed, expansion=args.expansion,
    )
    D = build_family(spec)
    logger.info("generated", extra={"family": spec.family, "params": spec.label(), "n": D.n, "m": D.m})
    if args.out:
        fileio.write_digraph(args.out, D)
        print(f"digraph={args.out}")
        print(f"n={D.n}")
        print(f"m={D.m}")
    else:
        sys.stdout.write(fileio.format_digraph(D))

    if args.colouring:
        variant = None if args.colouring in _DEFAULT_VARIANTS else args.colouring
        colouring = build_family_colouring(spec, variant)
        if args.out or args.colouring_out:
            path = args.colouring_out or f"{args.out}.col"
            fileio.write_colouring(path, colouring)
            print(f"colouring={path}")
            print(f"K={colouring.K}")
        else:
            sys.stdout.write(fileio.format_colouring(colouring))
    return EXIT_OK


def cmd_reproduce(args) -> int:
    """Rebuild one table as CSV; nonzero exit on any disagreement."""
    opts = HarnessOptions(
        max_n=args.max_n,
        solve=_solve_options(args),
        solver_max_vertices=args.solver_max_vertices,
        solver_max_arcs=args.solver_max_arcs,
        exhaustive_max_n=args.exhaustive_max_n,
        random_count=args.random_count,
        seed=args.seed,
    )
    rows = reproduce(args.tag, opts)
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="") as f:
            write_csv(rows, f)
        print(f"rows={len(rows)}")
        print(f"csv={args.out}")
    else:
        write_csv(rows, sys.stdout)
    return EXIT_OK if all_agree(rows) else EXIT_INVALID


# ── Parser ──────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rvc",
        description="Rainbow vertex-connection numbers of digraphs",
    )
    parser.add_argument("--version", action="version", version=f"rainbow-vc {__version__}")
    parser.add_argument("--threads", type=int, default=None, help="Worker processes (default: RVC_THREADS or 1)")
    parser.add_argument("--seed", type=int, default=0, help="Seed for random families (default: 0)")
    parser.add_argument("--time-limit", type=float, default=None, help="Per-solve limit in seconds")
    parser.add_argument("--log-json", action="store_true", help="JSON log lines on stderr")
    parser.add_argument("--metrics-out", default=None, help="Write Prometheus metrics here on exit")
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # rvc compute
    compute_parser = subparsers.add_parser("compute", help="Exact parameter value of a digraph file")
    compute_parser.add_argument("input", help="Digraph file")
    compute_parser.add_argument("--param", choices=PARAMETERS, default="rvc", help="Parameter (default: rvc)")
    compute_parser.add_argument("--witness", default=None, help="Write the witness colouring here")
    compute_parser.add_argument("--max-budget", type=int, default=None, help="Largest palette to try")
    compute_parser.add_argument("--oracle", action="store_true", help="Plain enumeration without pruning")

    # rvc verify
    verify_parser = subparsers.add_parser("verify", help="Check a colouring file")
    verify_parser.add_argument("input", help="Digraph file")
    verify_parser.add_argument("colouring", help="Colouring file")
    verify_parser.add_argument("--mode", choices=PARAMETERS, default="rvc", help="Property to check (default: rvc)")

    # rvc generate
    generate_parser = subparsers.add_parser("generate", help="Write a family member")
    generate_parser.add_argument("--family", required=True, help="Family tag, e.g. cycle, circulant, t_nk")
    generate_parser.add_argument("--n", type=int, default=None)
    generate_parser.add_argument("--k", type=int, default=None)
    generate_parser.add_argument("--s", type=int, default=None)
    generate_parser.add_argument("--sizes", type=_int_list, default=None, help="Part sizes, e.g. 2,3")
    generate_parser.add_argument("--asym", type=_int_list, default=None, help="Asymmetric positions")
    generate_parser.add_argument("--jumps", type=_int_list, default=None, help="Circulant jumps")
    generate_parser.add_argument("--which", default=None, help="H1, D1, H2, D2, fan or pendant")
    generate_parser.add_argument("--kind", default=None, help="Tournament kind")
    generate_parser.add_argument("--expansion", choices=("transitive", "random"), default="transitive")
    generate_parser.add_argument("--out", default=None, help="Digraph file (default: stdout)")
    generate_parser.add_argument("--colouring", default=None, help="Proof colouring variant (or 'figure')")
    generate_parser.add_argument("--colouring-out", default=None, help="Colouring file (default: OUT.col)")

    # rvc reproduce
    reproduce_parser = subparsers.add_parser("reproduce", help="Rebuild a table as CSV")
    reproduce_parser.add_argument("tag", choices=REPRODUCE_TAGS)
    reproduce_parser.add_argument("--max-n", type=int, default=None,
                                  help="Largest instance (default depends on the tag)")
    reproduce_parser.add_argument("--out", default=None, help="CSV file (default: stdout)")
    reproduce_parser.add_argument("--solver-max-vertices", type=int, default=13)
    reproduce_parser.add_argument("--solver-max-arcs", type=int, default=20)
    reproduce_parser.add_argument("--exhaustive-max-n", type=int, default=6)
    reproduce_parser.add_argument("--random-count", type=int, default=None,
                                  help="Random instances (default: 500 tournaments, 50 digraphs)")
    return parser


def _configure_logging(args) -> None:
    settings = get_settings()
    level = getattr(logging, settings.log_level, logging.INFO)
    if args.log_json or settings.log_json:
        configure_json_logging("rvc", level)
    else:
        configure_plain_logging(level)


def main(argv: Optional[List[str]] = None) -> int:
    """CLI entry point; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    if args.command is None:
        parser.print_help()
        return EXIT_USAGE
    _configure_logging(args)

    try:
        if args.command == "compute":
            code = cmd_compute(args)
        elif args.command == "verify":
            code = cmd_verify(args)
        elif args.command == "generate":
            code = cmd_generate(args)
        elif args.command == "reproduce":
            code = cmd_reproduce(args)
        else:
            parser.print_help()
            code = EXIT_USAGE
    except (NotStronglyConnectedError, UnreachableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_NOT_STRONG
    except (RainbowError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_USAGE

    if args.metrics_out:
        with open(args.metrics_out, "wb") as f:
            f.write(export_metrics())
    logger.debug("exit", extra={"command": args.command, "code": code})
    return code


if __name__ == "__main__":
    sys.exit(main())
