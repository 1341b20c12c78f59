"""argparse front end: scan, sieve, akp and families subcommands."""
from __future__ import annotations

import argparse
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from pathlib import Path
from typing import Callable, Iterator, Sequence

from sympy import primerange

from ..config import (
    DEFAULT_NEAR_EXPONENT,
    DEFAULT_PRECISION_BITS,
    DEFAULT_PRIME_BOUND,
    EXIT_OK,
    EXIT_RUNTIME,
    EXIT_USAGE,
    EXIT_VERIFY,
    configure_logging,
)
from ..errors import CheckpointMismatchError, CollisionSearchError, ConfigurationError, VerificationError
from ..exact_arith import binom_exact
from ..families import (
    CATALOG,
    FAMILIES,
    check_entry,
    identity_eval,
    identity_quality,
    verify_fibonacci,
    verify_identity,
)
from ..scan_engine import ScanConfig, ScanMode, Scanner
from ..sieve import (
    CheckpointStore,
    SievePlan,
    closed_form_A,
    density_limit,
    has_closed_form,
    image_mod_p,
    sieve_all,
    sieve_pair,
)
from .output import FORMATS, OutputRecord, RecordWriter, from_catalog, from_collision, from_scan

logger = logging.getLogger(__name__)

Handler = Callable[[argparse.Namespace, RecordWriter], int]


def parse_bound(text: str) -> int:
    """Decimal digits or B^E, e.g. ``10^10``."""
    text = text.strip().replace("_", "")
    base, sep, exponent = text.partition("^")
    try:
        if not sep:
            return int(text)
        base_value, power = int(base), int(exponent)
    except ValueError:
        raise ConfigurationError(f"cannot read {text!r} as a bound; use digits or B^E") from None
    if power < 0:
        raise ConfigurationError(f"bound {text!r} has a negative exponent")
    return base_value ** power


def parse_range(text: str) -> tuple[int, int]:
    low, sep, high = text.partition("..")
    try:
        if not sep:
            raise ValueError
        bounds = int(low), int(high)
    except ValueError:
        raise ConfigurationError(f"prime range {text!r} must look like A..B") from None
    if bounds[0] > bounds[1]:
        raise ConfigurationError(f"empty prime range {text!r}")
    return bounds


# ---------------------------------------------------------------------------
# scan


def cmd_scan(args: argparse.Namespace, writer: RecordWriter) -> int:
    if args.exact and args.precision_bits is not None:
        args.parser.error("--exact and --precision-bits cannot be combined")
    if args.mode == ScanMode.COLLISIONS.value and args.near_exponent is not None:
        args.parser.error("--near-exponent only applies to --mode near")
    config = ScanConfig(
        max_index=args.max_index,
        mode=ScanMode(args.mode),
        near_exponent=DEFAULT_NEAR_EXPONENT if args.near_exponent is None else args.near_exponent,
        precision_bits=DEFAULT_PRECISION_BITS if args.precision_bits is None else args.precision_bits,
        exact_mode=args.exact,
        check_invariants=args.check_invariants,
    )
    scanner = Scanner(config)
    started = time.perf_counter()
    for record in scanner.run():
        writer.write(from_scan(record))
    logger.info(
        "%d records (%d collisions, %d near collisions) in %.2fs",
        writer.count,
        scanner.stats.collisions,
        scanner.stats.near_collisions,
        time.perf_counter() - started,
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# sieve


def cmd_sieve(args: argparse.Namespace, writer: RecordWriter) -> int:
    if args.all:
        return _sieve_all(args, writer)
    if args.include_settled:
        args.parser.error("--include-settled only applies to --all")
    if args.k is None or args.l is None:
        args.parser.error("--k and --l are required unless --all is given")
    if args.resume and not args.checkpoint:
        args.parser.error("--resume requires --checkpoint")
    plan = SievePlan(args.k, args.l, parse_bound(args.max_value), args.prime_bound)
    store = CheckpointStore(args.checkpoint) if args.checkpoint else None
    checkpoint = None
    if args.resume and store is not None:
        if store.exists():
            checkpoint = store.load(plan)
        else:
            logger.warning("no checkpoint at %s; starting from scratch", store.path)

    def progress(prime: int, remaining: int) -> None:
        writer.write(OutputRecord("stat", k=plan.k, l=plan.l, extras={"prime": prime, "survivors": remaining}))

    started = time.perf_counter()
    result = sieve_pair(
        plan, checkpoint, store=store, progress=progress, stop_after=args.stop_after, jobs=args.jobs
    )
    for record in result.collisions:
        writer.write(from_collision(record))
    if result.finished:
        for m in result.false_survivors:
            writer.write(OutputRecord("survivor", m=m, l=plan.l, value=str(binom_exact(m, plan.l)), extras={"verified": False}))
    else:
        for m in result.state.surviving_m():
            writer.write(OutputRecord("survivor", m=m, l=plan.l, value=str(binom_exact(m, plan.l))))
    logger.info(
        "k=%d l=%d: %s after %d primes, %d collisions, %.2fs",
        plan.k,
        plan.l,
        "finished" if result.finished else "stopped",
        len(result.state.primes_done),
        len(result.collisions),
        time.perf_counter() - started,
    )
    return EXIT_OK


def _sieve_all(args: argparse.Namespace, writer: RecordWriter) -> int:
    if args.k is not None or args.l is not None:
        args.parser.error("--all sieves every relevant pair; drop --k and --l")
    if args.checkpoint or args.resume or args.stop_after is not None:
        args.parser.error("--checkpoint, --resume and --stop-after need a single --k/--l pair")
    started = time.perf_counter()
    results = sieve_all(
        parse_bound(args.max_value), args.prime_bound, jobs=args.jobs, include_settled=args.include_settled
    )
    for result in results:
        plan, state = result.plan, result.state
        writer.write(
            OutputRecord(
                "stat",
                k=plan.k,
                l=plan.l,
                extras={"m_max": state.m_max, "primes": len(state.primes_done), "survivors": state.remaining},
            )
        )
        for record in result.collisions:
            writer.write(from_collision(record))
        for m in result.false_survivors:
            writer.write(OutputRecord("survivor", m=m, l=plan.l, value=str(binom_exact(m, plan.l)), extras={"verified": False}))
    logger.info(
        "%d pairs, %d collisions in %.2fs",
        len(results),
        sum(len(result.collisions) for result in results),
        time.perf_counter() - started,
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# akp


def cmd_akp(args: argparse.Namespace, writer: RecordWriter) -> int:
    if args.p is not None:
        primes = [args.p]
    else:
        low, high = parse_range(args.prime_range)
        primes = [int(p) for p in primerange(max(low, args.k + 1), high + 1)]
    limit = density_limit(args.k)
    if args.jobs > 1 and len(primes) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            images = list(pool.map(image_mod_p, [args.k] * len(primes), primes))
    else:
        images = [image_mod_p(args.k, p) for p in primes]
    mismatches = 0
    for stats in images:
        extras: dict[str, object] = {
            "prime": stats.p,
            "A": stats.size,
            "density": str(stats.density),
            "density_limit": str(limit),
        }
        if has_closed_form(stats.k, stats.p):
            closed = closed_form_A(stats.k, stats.p)
            extras["closed_form"] = closed
            if args.compare_closed_form:
                extras["match"] = closed == stats.size
                if closed != stats.size:
                    mismatches += 1
                    logger.error("A(%d, %d) = %d but the closed form gives %d", stats.k, stats.p, stats.size, closed)
        writer.write(OutputRecord("stat", k=stats.k, value=str(stats.size), extras=extras))
    return EXIT_VERIFY if mismatches else EXIT_OK


# ---------------------------------------------------------------------------
# families


def cmd_families_list(args: argparse.Namespace, writer: RecordWriter) -> int:
    for family in FAMILIES.values():
        writer.write(
            OutputRecord(
                "stat",
                k=family.k_left,
                l=2,
                extras={
                    "family": family.id,
                    "quality": str(identity_quality(family.id)),
                    "n_poly": list(family.n_poly),
                    "d_arg_poly": list(family.d_arg_poly),
                    "a_poly": [str(c) for c in family.a_poly],
                },
            )
        )
    return EXIT_OK


def cmd_families_eval(args: argparse.Namespace, writer: RecordWriter) -> int:
    ev = identity_eval(args.family, args.x)
    writer.write(
        OutputRecord(
            "verify",
            n=ev.n,
            k=ev.k,
            m=ev.a,
            l=2,
            d=ev.d,
            value=str(ev.right),
            extras={
                "family": ev.family,
                "x": ev.x,
                "d_arg": ev.d_arg,
                "left": str(ev.left_big),
                "holds": ev.holds,
            },
        )
    )
    if not ev.holds:
        logger.error("family %d does not hold at x = %d", ev.family, ev.x)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_families_verify(args: argparse.Namespace, writer: RecordWriter) -> int:
    ids = [args.family] if args.family is not None else sorted(FAMILIES)
    failed = False
    for family_id in ids:
        report = verify_identity(family_id, args.x_max, args.exponent)
        writer.write(
            OutputRecord(
                "verify",
                extras={
                    "family": family_id,
                    "x_max": report.x_max,
                    "exponent": report.exponent,
                    "checked": report.checked,
                    "failures": report.failures,
                    "inadmissible": report.inadmissible,
                    "trivial": report.trivial,
                    "ok": report.ok,
                },
            )
        )
        if not report.ok:
            failed = True
            logger.error(
                "family %d: %d failures, %d below d^%d",
                family_id, len(report.failures), len(report.inadmissible), report.exponent,
            )
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_families_fib(args: argparse.Namespace, writer: RecordWriter) -> int:
    failed = False
    for i in range(1, args.max_i + 1):
        report = verify_fibonacci(i, exact=i <= args.exact_max_i)
        member = report.member
        extras: dict[str, object] = {"i": i, "criterion": report.criterion}
        if report.exact_checked:
            extras["exact_equal"] = report.exact_equal
        writer.write(
            OutputRecord(
                "verify",
                member.n,
                member.k,
                member.m,
                member.l,
                value=None if report.value is None else str(report.value),
                extras=extras,
            )
        )
        if not report.ok:
            failed = True
            logger.error("Fibonacci member %d fails", i)
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_catalog_verify(args: argparse.Namespace, writer: RecordWriter) -> int:
    failed = 0
    for entry in CATALOG:
        ok = True
        try:
            check_entry(entry)
        except VerificationError as exc:
            ok = False
            failed += 1
            logger.error("%s", exc)
        row = from_catalog(entry)
        row.extras = {"kind": row.type, "ok": ok}
        row.type = "verify"
        writer.write(row)
    logger.info("%d of %d catalog rows verified", len(CATALOG) - failed, len(CATALOG))
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_catalog_export(args: argparse.Namespace, writer: RecordWriter) -> int:
    for entry in CATALOG:
        writer.write(from_catalog(entry))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _output_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--format", choices=FORMATS, default="jsonl", help="record format (default: jsonl)")
    parent.add_argument("--output", type=Path, help="write records here instead of stdout")
    return parent


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="binomial-collisions",
        description="Search for and verify collisions C(n, k) = C(m, l) and near collisions.",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="log warnings and errors only")
    output = _output_options()
    commands = parser.add_subparsers(dest="command", required=True)

    def command(sub: argparse._SubParsersAction, name: str, handler: Handler, help_text: str) -> argparse.ArgumentParser:
        child = sub.add_parser(name, parents=[output], help=help_text)
        child.set_defaults(handler=handler, parser=child)
        return child

    scan = command(commands, "scan", cmd_scan, "enumerate binomials in sorted order")
    scan.add_argument("--max-index", type=_positive, required=True, help="diagonals 0..N-1")
    scan.add_argument("--mode", choices=[mode.value for mode in ScanMode], default=ScanMode.COLLISIONS.value)
    scan.add_argument("--near-exponent", type=_positive, help=f"near mode: d**E <= value (default {DEFAULT_NEAR_EXPONENT})")
    scan.add_argument("--precision-bits", type=int, help=f"significand bits (default {DEFAULT_PRECISION_BITS})")
    scan.add_argument("--exact", action="store_true", help="keep every value as an exact integer")
    scan.add_argument("--check-invariants", action="store_true", help="verify table and ordering invariants")

    sieve = command(commands, "sieve", cmd_sieve, "modular sieve for one (k, l) pair or every relevant pair")
    sieve.add_argument("--k", type=int)
    sieve.add_argument("--l", type=int)
    sieve.add_argument("--all", action="store_true", help="sieve every (k, l) pair that fits under --max-value")
    sieve.add_argument("--include-settled", action="store_true", help="with --all, also sieve l <= 4 and (2, 5)")
    sieve.add_argument("--max-value", required=True, help="bound on C(m, l): digits or B^E")
    sieve.add_argument("--prime-bound", type=int, default=DEFAULT_PRIME_BOUND)
    sieve.add_argument("--checkpoint", type=Path, help="save the state here after every prime")
    sieve.add_argument("--resume", action="store_true", help="continue from --checkpoint")
    sieve.add_argument("--stop-after", type=_positive, help="apply at most this many primes")
    sieve.add_argument("--jobs", type=_positive, default=1)

    akp = command(commands, "akp", cmd_akp, "image sizes A(k, p)")
    akp.add_argument("--k", type=int, required=True)
    primes = akp.add_mutually_exclusive_group(required=True)
    primes.add_argument("--p", type=int)
    primes.add_argument("--prime-range", metavar="A..B")
    akp.add_argument("--compare-closed-form", action="store_true")
    akp.add_argument("--jobs", type=_positive, default=1)

    families = commands.add_parser("families", help="catalogs and infinite families")
    family_commands = families.add_subparsers(dest="families_command", required=True)
    command(family_commands, "list", cmd_families_list, "list the identity families")
    evaluate = command(family_commands, "eval", cmd_families_eval, "evaluate one identity")
    evaluate.add_argument("--family", type=int, required=True)
    evaluate.add_argument("--x", type=_positive, required=True)
    verify = command(family_commands, "verify", cmd_families_verify, "verify identities exactly")
    verify.add_argument("--family", type=int, help="default: all families")
    verify.add_argument("--x-max", type=_positive, required=True)
    verify.add_argument("--exponent", type=_positive, help="near-collision exponent (default: floor of the quality)")
    fib = command(family_commands, "fib", cmd_families_fib, "the Fibonacci collision family")
    fib.add_argument("--max-i", type=_positive, required=True)
    fib.add_argument("--exact-max-i", type=int, default=4, help="compare binomials exactly up to this index")
    catalog = family_commands.add_parser("catalog", help="the embedded catalog")
    catalog_commands = catalog.add_subparsers(dest="catalog_command", required=True)
    command(catalog_commands, "verify", cmd_catalog_verify, "verify every row exactly")
    command(catalog_commands, "export", cmd_catalog_export, "emit the catalog as records")
    return parser


@contextmanager
def open_writer(args: argparse.Namespace) -> Iterator[RecordWriter]:
    if args.output is None:
        writer = RecordWriter(sys.stdout, args.format)
        yield writer
        writer.flush()
        return
    with args.output.open("w", encoding="utf-8", newline="") as fh:
        yield RecordWriter(fh, args.format)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.verbose:
        configure_logging(logging.DEBUG)
    elif args.quiet:
        configure_logging(logging.WARNING)
    else:
        configure_logging()
    try:
        with open_writer(args) as writer:
            return args.handler(args, writer)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    except (ConfigurationError, CheckpointMismatchError) as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    except VerificationError as exc:
        logger.error("%s", exc)
        return EXIT_VERIFY
    except (CollisionSearchError, OSError) as exc:
        logger.error("%s", exc)
        return EXIT_RUNTIME


__all__ = ["build_parser", "main", "parse_bound", "parse_range"]
