"""
Command-line interface.

Subcommands: ``verify`` runs the claim corpus; ``k0``, ``nerve``, ``sub2``,
``cylinder``, ``comma`` and ``classify`` expose single constructions on
JSON files. Exit status is 0 on success, 1 when a claim fails and 2 on
bad input.
"""
import argparse
import json
import logging
import sys
from typing import Any, List, Optional, Sequence

from derivator_combinatorics import __version__
from derivator_combinatorics.corpus import verify_corpus
from derivator_combinatorics.errors import DerivatorCombinatoricsError
from derivator_combinatorics.fincat import classify_inclusion, comma
from derivator_combinatorics.grothendieck import K0Presentation, k0_group
from derivator_combinatorics.serialization import (
    dump_fincat,
    dump_object,
    dump_sset,
    freeze,
    load_fincat,
    load_functor,
    load_sset,
    read_json,
    thaw,
)
from derivator_combinatorics.simplicial import cylinder, nerve, sub2

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


def _non_negative(value: str) -> int:
    number = int(value)
    if number < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return number


def _positive(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return number


def _parse_label(text: str) -> Any:
    """Object labels on the command line are JSON when they parse, plain strings otherwise."""
    try:
        return freeze(json.loads(text))
    except json.JSONDecodeError:
        return text


def _parse_args(argv: Optional[Sequence[str]]) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="derivator-combinatorics",
        description="Verify the finite combinatorics behind derivator K-theory additivity.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="run the claim corpus")
    verify.add_argument("--max-n", type=int, default=6, help="largest n for Ar[n] families (default: 6)")
    verify.add_argument("--filter", dest="prefix", default=None, help="claim-id prefix to run")
    verify.add_argument("--jobs", type=_positive, default=1, help="worker threads (default: 1)")
    verify.add_argument("--seed", type=int, default=0, help="seed for sampled checks (default: 0)")
    verify.add_argument(
        "--swindle-bound", type=_positive, default=20, help="swindle truncation (default: 20)"
    )
    verify.add_argument(
        "--samples", type=_non_negative, default=200, help="sampled composites (default: 200)"
    )
    verify.add_argument("--report", default=None, help="write the JSON report to this file")

    k0 = commands.add_parser("k0", help="Grothendieck group of a presentation file")
    k0.add_argument("file")

    for name, help_text in (
        ("nerve", "nerve of a category file"),
        ("sub2", "edgewise subdivision of a simplicial set file"),
        ("cylinder", "cylinder of a simplicial set file"),
    ):
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("file")
        sub.add_argument("--dim", type=_non_negative, required=True, help="output truncation")

    comma_parser = commands.add_parser("comma", help="comma category (u/k) of a functor file")
    comma_parser.add_argument("file")
    comma_parser.add_argument("--object", required=True, help="object k (JSON or plain string)")

    classify = commands.add_parser("classify", help="sieve/cosieve classification of a functor file")
    classify.add_argument("file")

    return parser.parse_args(argv)


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


def _verify(args: argparse.Namespace) -> int:
    report = verify_corpus(
        args.max_n,
        args.prefix,
        jobs=args.jobs,
        seed=args.seed,
        swindle_bound=args.swindle_bound,
        samples=args.samples,
    )
    print(report.to_table())
    if args.report:
        report.write(args.report)
        logger.info("report written to %s", args.report)
    return EXIT_OK if report.passed else EXIT_FAILED


def _k0(args: argparse.Namespace) -> int:
    group = k0_group(K0Presentation.from_json(read_json(args.file)))
    print(dump_object({**group.to_json(), "description": group.describe()}))
    return EXIT_OK


def _nerve(args: argparse.Namespace) -> int:
    print(dump_object(dump_sset(nerve(load_fincat(read_json(args.file)), args.dim))))
    return EXIT_OK


def _sub2(args: argparse.Namespace) -> int:
    print(dump_object(dump_sset(sub2(load_sset(read_json(args.file)), args.dim))))
    return EXIT_OK


def _cylinder(args: argparse.Namespace) -> int:
    result = cylinder(load_sset(read_json(args.file)), args.dim)
    print(dump_object(dump_sset(result.space)))
    return EXIT_OK


def _comma(args: argparse.Namespace) -> int:
    functor = load_functor(read_json(args.file))
    result = comma(functor, _parse_label(args.object))
    print(
        dump_object(
            {
                "category": dump_fincat(result.category),
                "projection": [[thaw(x), thaw(result.projection(x))] for x in result.category.objects],
            }
        )
    )
    return EXIT_OK


def _classify(args: argparse.Namespace) -> int:
    print(dump_object(classify_inclusion(load_functor(read_json(args.file))).to_dict()))
    return EXIT_OK


COMMANDS = {
    "verify": _verify,
    "k0": _k0,
    "nerve": _nerve,
    "sub2": _sub2,
    "cylinder": _cylinder,
    "comma": _comma,
    "classify": _classify,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run the command line and return the exit status.

    Example:
        >>> main(["verify", "--max-n", "2", "--filter", "sigma-chain"])  # doctest: +SKIP
        0
    """
    try:
        args = _parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_INPUT
    _configure_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except (DerivatorCombinatoricsError, ValueError) as exc:
        logger.debug("%s failed", args.command, exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
