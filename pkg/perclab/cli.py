#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Command-line interface for perclab.

One executable with a subcommand per task. Machine-readable results go
to standard output (or ``--output``); diagnostics go to standard error
with "INFO:", "WARNING:" and "ERROR:" prefixes.

Exit codes: 0 on success, 1 on a domain error (e.g. a fact violation
surfaced by ``witness`` or a threshold that could not be bracketed),
2 on a usage error (bad flags, missing or malformed input).
"""

import argparse
import logging
import sys
from typing import List, Optional, TextIO

from perclab import __version__
from perclab.cli_experiments import (
    parse_fraction,
    parse_grid,
    parse_ns,
    perform_curve_cli,
    perform_exponent_cli,
    perform_pc_cli,
    perform_witness_rate_cli,
)
from perclab.cli_graph import (
    GADGET_KINDS,
    perform_close_cli,
    perform_density_cli,
    perform_eta_cli,
    perform_gadget_cli,
    perform_seven_cli,
)
from perclab.cli_witness import WITNESS_MODES, perform_witness_cli
from perclab.constants import DEFAULT_SEED, DEFAULT_TOLERANCE, DEFAULT_TRIALS
from perclab.density import METHODS
from perclab.errors import PerclabError, UsageError
from perclab.io import STDIN_PATH
from perclab.parallel import resolve_workers, worker_map

logger = logging.getLogger("perclab")

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2

_handler: Optional[logging.Handler] = None


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    """Install the single stderr handler on the package logger."""
    global _handler
    if _handler is not None:
        logger.removeHandler(_handler)
    _handler = logging.StreamHandler(sys.stderr)
    _handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    logger.addHandler(_handler)
    logger.propagate = False
    if verbose:
        logger.setLevel(logging.DEBUG)
    elif quiet:
        logger.setLevel(logging.WARNING)
    else:
        logger.setLevel(logging.INFO)


def _add_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--in",
        dest="input",
        default=STDIN_PATH,
        metavar="EDGELIST",
        help="edge-list file ('-' for standard input, the default)",
    )


def _add_seed(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="master seed (default: %(default)s)")


def parse_args(args: Optional[List[str]] = None) -> argparse.Namespace:
    """
    Parse command-line arguments.

    Args:
        args: Optional list of arguments to parse. If None, uses sys.argv.

    Returns:
        Parsed arguments as argparse.Namespace.
    """
    parser = argparse.ArgumentParser(
        prog="perclab",
        description="Exact simulation and verification toolkit for K_{2,t}-bootstrap percolation",
        epilog=(
            "Example:\n"
            "  perclab eta --t 4\n"
            "  perclab gadget --kind ht --params 4 | perclab close --t 4\n"
            "  perclab pc --n 200 --t 4 --trials 200 --seed 1\n"
            "\n"
            "For more information, see the README.md file."
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug diagnostics on stderr")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")
    parser.add_argument(
        "--workers",
        type=int,
        default=None,
        help="worker processes (default: $PERCLAB_WORKERS or 1)",
    )
    parser.add_argument("-o", "--output", default=None, help="write results to this file instead of stdout")

    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("gadget", help="emit a gadget graph as an edge list")
    p.add_argument("--kind", required=True, choices=sorted(GADGET_KINDS))
    p.add_argument("--params", required=True, type=int, nargs="+", help="construction parameters")

    p = sub.add_parser("close", help="K_{2,t}-bootstrap closure of a graph")
    p.add_argument("--t", type=int, required=True)
    _add_input(p)
    p.add_argument("--trace", default=None, metavar="JSON", help="write the certificate trace here")
    p.add_argument("--rounds", action="store_true", help="use the round scheduler and record rounds")
    p.add_argument("--format", dest="output_format", choices=("json", "edgelist"), default="json")

    p = sub.add_parser("density", help="exact maximum subgraph density")
    _add_input(p)
    p.add_argument("--method", choices=METHODS, default="auto")

    p = sub.add_parser("eta", help="print η(t)")
    p.add_argument("--t", type=int, required=True)

    p = sub.add_parser("seven", help="densities of the seven candidate subgraphs of ℋ_t")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--format", dest="output_format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("witness", help="build and verify a non-percolation witness")
    p.add_argument("--t", type=int, required=True)
    _add_input(p)
    p.add_argument("--mode", choices=WITNESS_MODES, default="general")

    p = sub.add_parser("pc", help="estimate the percolation threshold p_c(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help="trials per bisection step")
    p.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE, help="relative bracket width")
    p.add_argument("--target", default="1/2", help="crossing probability (default: %(default)s)")
    _add_seed(p)

    p = sub.add_parser("curve", help="percolation probability along a p grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--pgrid", required=True, metavar="LO:HI:STEPS")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--format", dest="output_format", choices=("csv", "json"), default="csv")
    _add_seed(p)

    p = sub.add_parser("exponent", help="fit the threshold exponent over several n")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--ns", required=True, help="comma-separated vertex counts")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
    _add_seed(p)

    p = sub.add_parser("witness-rate", help="witness success rate on sparse G(n, p)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--p-scale", type=float, default=0.1, help="p = scale · n^e (default: %(default)s)")
    p.add_argument("--p", type=float, default=None, help="explicit edge probability")
    p.add_argument("--seeds", type=int, default=100, help="number of samples")
    _add_seed(p)

    return parser.parse_args(args)


def dispatch(args: argparse.Namespace, output_file: TextIO) -> None:
    """Run the selected subcommand."""
    command = args.command
    if command == "gadget":
        perform_gadget_cli(args.kind, args.params, output_file)
    elif command == "close":
        perform_close_cli(args.t, args.input, output_file, args.trace, args.rounds, args.output_format)
    elif command == "eta":
        perform_eta_cli(args.t, output_file)
    elif command == "seven":
        perform_seven_cli(args.t, output_file, args.output_format)
    elif command == "witness":
        perform_witness_cli(args.t, args.input, output_file, args.mode)
    else:
        # argument text is checked before any worker starts
        target = parse_fraction(args.target) if command == "pc" else None
        grid = parse_grid(args.pgrid) if command == "curve" else None
        ns = parse_ns(args.ns) if command == "exponent" else None
        workers = resolve_workers(args.workers)
        logger.debug("using %d worker(s)", workers)
        with worker_map(workers) as executor:
            if command == "density":
                perform_density_cli(args.input, output_file, args.method, executor)
            elif command == "pc":
                perform_pc_cli(args.n, args.t, args.trials, args.tol, args.seed, target, output_file, executor)
            elif command == "curve":
                perform_curve_cli(
                    args.n, args.t, grid, args.trials, args.seed, output_file, args.output_format, executor
                )
            elif command == "exponent":
                perform_exponent_cli(
                    args.t, ns, args.trials, args.tol, args.seed, output_file, executor
                )
            elif command == "witness-rate":
                perform_witness_rate_cli(
                    args.n, args.t, args.seeds, args.seed, output_file, args.p_scale, args.p, executor
                )
            else:
                raise UsageError(f"unknown command {command!r}")


def run(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None) -> int:
    """
    Parse ``argv``, run the command and return the exit code.

    Example:
        >>> run(["eta", "--t", "4"])
        13/10
        0
    """
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    configure_logging(args.verbose, args.quiet)
    stream = stdout if stdout is not None else sys.stdout
    try:
        if args.output:
            with open(args.output, "w", encoding="utf-8") as handle:
                dispatch(args, handle)
        else:
            dispatch(args, stream)
    except UsageError as e:
        logger.error("%s", e)
        return EXIT_USAGE
    except PerclabError as e:
        logger.error("%s", e)
        return EXIT_DOMAIN
    except OSError as e:
        logger.error("%s", e)
        return EXIT_USAGE
    return EXIT_OK


def cli_main() -> None:
    """
    Command-line interface entry point.

    Raises:
        SystemExit: always, with the exit code of :func:`run`.
    """
    sys.exit(run())


if __name__ == "__main__":
    cli_main()
