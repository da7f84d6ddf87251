"""
Command line for the etale-modules toolkit
Commands verify, family, castle, stabilizer and dims; JSON reports go to
stdout, diagnostics to stderr.

Exit codes: 0 when the verdict matches what the command expects,
1 on a verification failure, 2 on usage or input errors.
"""

import argparse
import logging
import sys
from typing import List, Optional, Sequence, TextIO

from src.models.entities import Verdict
from src.models.errors import EtaleError
from src.services.verification_service import POINT_MODES, VerificationService, parse_sweep
from src.utils.report_formatter import ReportFormatter

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

ETALE = Verdict.ETALE.value


def _non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _add_sampling(parser: argparse.ArgumentParser):
    parser.add_argument("--seed", type=_non_negative_int, default=None, help="random seed (default 0)")
    parser.add_argument("--bound", type=int, default=None, help="random entries lie in [-bound, bound] (default 10)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="etale",
        description="Exact Lie-level verification of etale and prehomogeneous modules.",
    )
    parser.add_argument("--verbose", action="store_true", help="log progress to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="beta-map verdict for a module description")
    verify.add_argument("--spec", required=True, help='e.g. "so(3) x gl(2) x gl(1) : chain"')
    verify.add_argument("--point", default="canonical",
                        help=f"{' | '.join(POINT_MODES)} | comma list of rationals")
    _add_sampling(verify)

    family = commands.add_parser("family", help="build and verify a family member")
    family.add_argument("--name", required=True, help="sp-chain | so-chain | sp-e-only | helmstetter")
    family.add_argument("--n", type=int, default=None)
    family.add_argument("--chain-report", action="store_true", help="walk the stabilizer chain level by level")
    family.add_argument("--sweep", default=None, help="comma list of n, verified in parallel worker processes")
    _add_sampling(family)

    castle = commands.add_parser("castle", help="castling transform of a tensor shape")
    castle.add_argument("--spec", required=True, help='e.g. "sl(3) x gl(1) : std(1) * std(2)"')
    castle.add_argument("--twice", action="store_true", help="also transform back and compare")
    castle.add_argument("--draws", type=int, default=5, help="random points per side")
    _add_sampling(castle)

    stabilizer = commands.add_parser("stabilizer", help="stabilizer subalgebra at a point")
    stabilizer.add_argument("--spec", required=True)
    stabilizer.add_argument("--point", default="canonical")
    stabilizer.add_argument("--line", action="store_true", help="also report the line stabilizer")
    _add_sampling(stabilizer)

    dims = commands.add_parser("dims", help="dimension identities of the chain families")
    dims.add_argument("--n-max", type=int, required=True)
    return parser


def _family_ok(result) -> bool:
    if result.report.verdict != ETALE:
        return False
    return result.chain_report is None or result.chain_report.passed


def _dispatch(args: argparse.Namespace, service: VerificationService, out: TextIO, formatter: ReportFormatter) -> int:
    if args.command == "verify":
        report = service.verify_spec(args.spec, args.point, args.seed, args.bound)
        out.write(formatter.to_json(report) + "\n")
        return EXIT_OK if report.verdict == ETALE else EXIT_FAILED

    if args.command == "family":
        if args.sweep:
            results = service.sweep(args.name, parse_sweep(args.sweep), args.chain_report, args.seed, args.bound)
            out.write(formatter.to_json(results) + "\n")
            return EXIT_OK if all(_family_ok(r) for r in results) else EXIT_FAILED
        result = service.family(args.name, args.n, args.chain_report, args.seed, args.bound)
        out.write(formatter.to_json(result) + "\n")
        return EXIT_OK if _family_ok(result) else EXIT_FAILED

    if args.command == "castle":
        report = service.castle(args.spec, args.twice, args.seed, args.bound, args.draws)
        out.write(formatter.to_json(report) + "\n")
        ok = report.preserved and report.involution_holds is not False
        return EXIT_OK if ok else EXIT_FAILED

    if args.command == "stabilizer":
        report = service.stabilizer(args.spec, args.point, args.seed, args.bound, args.line)
        out.write(formatter.to_json(report) + "\n")
        return EXIT_OK

    table = service.dims(args.n_max)
    out.write(formatter.to_json(table) + "\n")
    return EXIT_OK if table.all_hold else EXIT_FAILED


def run(
    argv: Optional[Sequence[str]] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
    service: Optional[VerificationService] = None,
) -> int:
    """Run one command and return its exit code."""
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    try:
        args = build_parser().parse_args(list(argv) if argv is not None else None)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    if args.verbose:
        logging.getLogger("src").setLevel(logging.INFO)
    service = service or VerificationService()
    formatter = service.formatter
    try:
        return _dispatch(args, service, out, formatter)
    except EtaleError as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE
    except Exception as e:
        logger.exception("unexpected failure")
        err.write(f"error: {e}\n")
        return EXIT_FAILED


def main(argv: Optional[List[str]] = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
