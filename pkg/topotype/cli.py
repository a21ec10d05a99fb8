# Copyright (c) 2025 topotype developers

# This library is free software: you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation version 3.
#
# This library is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the GNU
# Lesser General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public
# License along with this library.  If not, see <http://www.gnu.org/licenses/>.

import sys
import logging
import argparse
from dataclasses import dataclass, field
from typing import IO, List, Optional, Sequence

import sympy

from topotype import records
from topotype.consts import (
    DEFAULT_FIT_PRIMES,
    FORMATS,
    FORMAT_PLAIN,
    FORMAT_JSON,
    FORMAT_CSV,
)
from topotype.config import GuardSpec
from topotype.partitions import (
    PartitionType,
    ActionParams,
    AdmissibilityError,
    GenusError,
    admissible_partitions,
)
from topotype.counting import (
    CountReport,
    TotalReport,
    count_types,
    count_types_rank1,
    count_types_rank2,
    count_klein_partition,
    count_types_klein,
    total_types,
)
from topotype.oracle import (
    GuardExceeded,
    count_orbits,
    count_marked_orbits,
    export_representatives,
)
from topotype.polyfit import render_table

_logger = logging.getLogger(__name__)

PASS = "PASS"
FAIL = "FAIL"
SKIPPED = "SKIPPED"


class HandlerError(Exception):
    pass


def parse_int_list(value: str) -> List[int]:
    """Parse "5", "3,5,7", "3..6" or "3..6,9" into a sorted list."""
    result = set()
    try:
        for item in value.split(","):
            item = item.strip()
            if ".." in item:
                lo, hi = item.split("..")
                result.update(range(int(lo), int(hi) + 1))
            else:
                result.add(int(item))
    except ValueError:
        raise argparse.ArgumentTypeError(f"Invalid integer list: {value}")
    return sorted(result)


def parse_prime_list(value: str) -> List[int]:
    result = parse_int_list(value)
    if ".." in value:
        return [x for x in result if sympy.isprime(x)]
    bad = [x for x in result if not sympy.isprime(x)]
    if bad:
        raise argparse.ArgumentTypeError(f"Not prime: {', '.join(map(str, bad))}")
    return result


def parse_partition(value: str) -> PartitionType:
    try:
        return PartitionType.parse(value)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


LOG_LEVELS = {
    'notset': logging.NOTSET,
    'debug': logging.DEBUG,
    'info': logging.INFO,
    'warning': logging.WARNING,
    'error': logging.ERROR,
    'critical': logging.CRITICAL
}


def parse_log_level(value: str) -> int:
    """Accept a level name such as "info" or its number such as "20"."""
    if value.isdigit() and int(value) in LOG_LEVELS.values():
        return int(value)
    if value.lower() in LOG_LEVELS:
        return LOG_LEVELS[value.lower()]
    raise argparse.ArgumentTypeError(f"Invalid log level: {value}")


@dataclass
class RunConfig:
    command: str
    primes: List[int]
    k: int = 2
    R: List[int] = field(default_factory=list)
    partition: Optional[PartitionType] = None
    fmt: str = FORMAT_PLAIN
    guard: GuardSpec = field(default_factory=GuardSpec)
    export: Optional[str] = None
    workers: int = 1

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":

        guard = GuardSpec.from_file(args.limits) if args.limits else GuardSpec()
        guard = GuardSpec.from_env(guard).updated(
            max_multisets=args.max_multisets, max_steps=args.max_steps)

        if args.command == "table":
            primes = list(DEFAULT_FIT_PRIMES) if args.primes is None else args.primes
            R = [args.R]
        else:
            primes = args.p
            R = args.R or []

        if not primes:
            raise HandlerError("no primes in the given range")
        if args.command != "count" or args.partition is None:
            if not R:
                raise HandlerError("no R values in the given range")
        if args.command == "count" and len(primes) != 1:
            raise HandlerError("count takes a single prime")
        if args.command in ("count", "total") and len(R) > 1:
            raise HandlerError(f"{args.command} takes a single R")

        return cls(
            command=args.command,
            primes=primes,
            k=getattr(args, "k", 2),
            R=R,
            partition=getattr(args, "partition", None),
            fmt=args.format,
            guard=guard,
            export=getattr(args, "export", None),
            workers=getattr(args, "workers", 1),
        )


# --------------------------------------------------------------------------
# Rendering

def _terms_text(report: CountReport) -> str:
    if not report.burnside_terms:
        return "none"
    return ", ".join(f"d'={d}: {c}" for d, c in report.burnside_terms)


def render_count(report: CountReport, fmt: str) -> str:
    if fmt == FORMAT_JSON:
        return records.dumps_json(records.count_record(report))
    if fmt == FORMAT_CSV:
        rec = records.count_record(report)
        header = ["partition", "p", "k", "genus", "card_A", "burnside_terms",
                  "marking_multiplier", "T", "caveat"]
        rec["burnside_terms"] = ";".join(f"{d}:{c}" for d, c in rec["burnside_terms"])
        rec["genus"] = rec["genus"] or ""
        return records.format_csv(header, [[rec[h] for h in header]])

    lines = [
        ("partition", str(report.partition)),
        ("p", report.p),
        ("k", report.k),
        ("genus", "none" if report.genus is None else report.genus),
        ("|A|", report.card_A),
        ("burnside terms", _terms_text(report)),
        ("marking multiplier", report.marking_multiplier),
        ("T", report.T),
    ]
    if report.caveat:
        lines.append(("caveat", report.caveat))
    return "".join(f"{name}: {value}\n" for name, value in lines)


def render_total(report: TotalReport, fmt: str) -> str:
    if fmt == FORMAT_JSON:
        return records.dumps_json(records.total_record(report))

    header = ["partition", "card_A", "burnside_terms", "marking", "T"]
    if fmt == FORMAT_CSV:
        body = [[str(r.partition), r.card_A, ";".join(f"{d}:{c}" for d, c in r.burnside_terms),
                 r.marking_multiplier, r.T] for r in report.rows]
        return records.format_csv(header, body + [["total", "", "", "", report.total]])

    body = [[str(r.partition), r.card_A, _terms_text(r), r.marking_multiplier, r.T]
            for r in report.rows]

    genus = "none" if report.genus is None else report.genus
    text = f"p={report.p} k={report.k} R={report.R} genus={genus}\n"
    text += records.format_plain(header, body)
    return text + f"total: {report.total}\n"


@dataclass(frozen=True)
class VerifyRow:
    p: int
    k: int
    R: int
    partition: str
    expected: Optional[int]
    observed: Optional[int]
    status: str
    unmarked: Optional[int] = None
    reason: str = ""


VERIFY_HEADER = ["p", "k", "R", "partition", "expected", "observed", "unmarked",
                 "status", "reason"]


def _verify_cells(row: VerifyRow) -> list:
    return [
        row.p, row.k, row.R, row.partition,
        "" if row.expected is None else row.expected,
        "" if row.observed is None else row.observed,
        "" if row.unmarked is None else row.unmarked,
        row.status, row.reason,
    ]


def render_verify(rows: Sequence[VerifyRow], fmt: str) -> str:
    if fmt == FORMAT_JSON:
        return records.dumps_json([
            {h: ("" if c is None else str(c)) for h, c in zip(VERIFY_HEADER, _verify_cells(r))}
            for r in rows])
    body = [_verify_cells(r) for r in rows]
    if fmt == FORMAT_CSV:
        return records.format_csv(VERIFY_HEADER, body)
    return records.format_plain(VERIFY_HEADER, body)


# --------------------------------------------------------------------------
# Verification

def _status(expected: int, observed: int) -> str:
    return PASS if expected == observed else FAIL


def verify_case(p: int, k: int, R: int, guard: GuardSpec,
                export: Optional[IO[str]] = None, workers: int = 1) -> List[VerifyRow]:
    """Compare the oracle with the counting formulas for one (p, k, R)."""
    ActionParams(p, k, R)
    try:
        if k == 1:
            expected = count_types_rank1(R, p).T
            table = count_orbits(p, 1, R, guard, workers)
            rows = [VerifyRow(p, k, R, str(R), expected, table.total,
                              _status(expected, table.total))]
        elif p == 2:
            table = count_orbits(2, 2, R, guard, workers)
            rows = _compare(p, k, R, table.counts,
                            lambda x: count_klein_partition(x).T)
            expected = count_types_klein(R)
            rows.append(VerifyRow(p, k, R, "total", expected, table.total,
                                  _status(expected, table.total)))
        else:
            marked = count_marked_orbits(p, R, guard)
            table = count_orbits(p, 2, R, guard, workers)
            rows = _compare(p, k, R, marked.counts,
                            lambda x: count_types_rank2(x, p).T, unmarked=table.counts)
    except GuardExceeded as e:
        _logger.info(f"skipping p={p}, k={k}, R={R}: {e}")
        return [VerifyRow(p, k, R, "*", None, None, SKIPPED, reason=str(e))]

    if export is not None:
        export_representatives(table, export)
    return rows


def _compare(p, k, R, observed: dict, formula, unmarked: Optional[dict] = None):
    rows = []
    admissible = admissible_partitions(p, k, R)
    for partition in admissible:
        expected = formula(partition)
        got = observed.get(partition, 0)
        status = _status(expected, got)
        reason = ""
        extra = None
        if unmarked is not None:
            extra = unmarked.get(partition, 0)
            if extra > got:
                status, reason = FAIL, "more unmarked than marked orbits"
        rows.append(VerifyRow(p, k, R, str(partition), expected, got, status, extra, reason))

    for partition in set(observed) | set(unmarked or ()):
        if partition not in admissible:
            rows.append(VerifyRow(p, k, R, str(partition), 0, observed.get(partition, 0),
                                  FAIL, reason="oracle found an inadmissible partition"))
    return rows


# --------------------------------------------------------------------------
# Handlers

def cmd_count(config: RunConfig, stdout: IO[str]) -> int:
    p, k = config.primes[0], config.k
    if config.partition is not None:
        partition = config.partition
        report = count_types(partition, p, k)
        stdout.write(render_count(report, config.fmt))
        return 0

    R = config.R[0]
    if k == 1:
        stdout.write(render_count(count_types(PartitionType((R,)), p, k), config.fmt))
    else:
        stdout.write(render_total(total_types(p, k, R), config.fmt))
    return 0


def cmd_total(config: RunConfig, stdout: IO[str]) -> int:
    report = total_types(config.primes[0], config.k, config.R[0])
    stdout.write(render_total(report, config.fmt))
    return 0


def cmd_verify(config: RunConfig, stdout: IO[str]) -> int:
    rows = []
    export = open(config.export, "w") if config.export else None
    try:
        for p in config.primes:
            for R in config.R:
                rows.extend(verify_case(p, config.k, R, config.guard, export, config.workers))
    finally:
        if export is not None:
            export.close()

    stdout.write(render_verify(rows, config.fmt))
    failed = sum(1 for r in rows if r.status == FAIL)
    _logger.info(f"verify: {len(rows)} rows, {failed} failed")
    return 1 if failed else 0


def cmd_table(config: RunConfig, stdout: IO[str]) -> int:
    stdout.write(render_table(config.R[0], config.primes, config.fmt))
    return 0


HANDLERS = {
    "count": cmd_count,
    "total": cmd_total,
    "verify": cmd_verify,
    "table": cmd_table,
}


def main_handler(args: argparse.Namespace, stdout: IO[str], stderr: IO[str]) -> int:
    try:
        config = RunConfig.from_args(args)
        return HANDLERS[config.command](config, stdout)
    except AdmissibilityError as e:
        stderr.write(f"error: inadmissible partition: {e}\n")
    except (HandlerError, GenusError, ValueError, FileNotFoundError) as e:
        stderr.write(f"error: {e}\n")
    return 2


def _common_parser() -> argparse.ArgumentParser:

    common = argparse.ArgumentParser(add_help=False)

    common.add_argument(
        "--format",
        choices=FORMATS,
        default=FORMAT_PLAIN,
        help="Output format (default: plain)"
    )

    common.add_argument(
        "--limits",
        type=str,
        default="",
        help="Path to a file with a dict literal of oracle guard limits"
    )

    common.add_argument(
        "--max-multisets",
        type=int,
        default=None,
        help="Refuse oracle cases with more candidate multisets than this"
    )

    common.add_argument(
        "--max-steps",
        type=int,
        default=None,
        help="Refuse oracle cases needing more elementary steps than this"
    )

    common.add_argument(
        '--log-level',
        default=logging.WARNING,
        type=parse_log_level,
        help='Logging level: NOTSET(0), DEBUG(10), INFO(20), WARNING(30), ERROR(40), CRITICAL(50) (default: WARNING)'
    )
    return common


def main(argv: Sequence[str], stdout: IO[str], stderr: IO[str]) -> int:

    parser = argparse.ArgumentParser(
        prog="topotype",
        description="Count topological types of fully ramified Z_p^k actions on surfaces.",
    )
    common = _common_parser()
    sub = parser.add_subparsers(dest="command", required=True)

    count = sub.add_parser("count", parents=[common],
                           help="Count types for one partition, or for all partitions of R")
    count.add_argument("--p", type=parse_prime_list, required=True, help="Prime p")
    count.add_argument("--k", type=int, choices=(1, 2), default=2, help="Rank (default: 2)")
    target = count.add_mutually_exclusive_group(required=True)
    target.add_argument("--partition", type=parse_partition,
                        help='Partition type such as "2,2,1" or "2,1^3"')
    target.add_argument("--R", type=parse_int_list, help="Number of branch points")

    total = sub.add_parser("total", parents=[common],
                           help="Per-partition breakdown and total for R branch points")
    total.add_argument("--p", type=parse_prime_list, required=True, help="Prime p")
    total.add_argument("--k", type=int, choices=(1, 2), default=2, help="Rank (default: 2)")
    total.add_argument("--R", type=parse_int_list, required=True, help="Number of branch points")

    verify = sub.add_parser("verify", parents=[common],
                            help="Compare the formulas with brute-force orbit counts")
    verify.add_argument("--p", type=parse_prime_list, required=True,
                        help='Primes, e.g. "3,5" or "3..7"')
    verify.add_argument("--k", type=int, choices=(1, 2), default=2, help="Rank (default: 2)")
    verify.add_argument("--R", type=parse_int_list, required=True,
                        help='Branch point counts, e.g. "3..6"')
    verify.add_argument("--export", type=str, default=None,
                        help="Write orbit representatives to this file, one per line")
    verify.add_argument("--workers", type=int, default=1,
                        help="Threads for the orbit sweep (default: 1)")

    table = sub.add_parser("table", parents=[common],
                           help="Rank-2 counts as polynomials in p for R branch points")
    table.add_argument("--R", type=int, required=True, help="Number of branch points")
    table.add_argument("--primes", type=parse_prime_list, default=None,
                       help="Sampled primes (default: 5..113)")

    args = parser.parse_args(argv)

    # Configure logging
    logging.basicConfig(level=args.log_level)

    return main_handler(args, stdout, stderr)


def entry_point_main():
    """Wrapper for main() for setuptools console_script entry point."""
    sys.exit(main(sys.argv[1:], sys.stdout, sys.stderr))
