"""
Real Betti - command-line entry point

Usage:
    python -m realbetti compute --rank 2 --degree 1 --genus 2 --circles 2
    python -m realbetti table rank3-g2
    python -m realbetti verify --order 100
    python -m realbetti strata list --rank 2 --degree 1 --genus 2 --max-codim 6
    python -m realbetti formula dump Rank2Moduli --genus 2 --circles 1 --order 10
    python -m realbetti cache stats
"""

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from realbetti.config import settings
from realbetti.engine.closed_forms import FormulaId, FormulaTag, expand_formula
from realbetti.engine.errors import RealBettiError
from realbetti.engine.recursion import RecursionEngine, set_engine
from realbetti.engine.series import series_to_json
from realbetti.engine.strata import enumerate_unstable_types, real_refinement_count
from realbetti.schemas import ComputeRequest, StrataRecord
from realbetti.services.compute_service import ComputeService
from realbetti.services.table_service import TableService
from realbetti.services.verification_service import VerificationService
from realbetti.utils.disk_cache import DiskCache
from realbetti.utils.logger import logger

TABLE_SECTIONS = ("rank2-g2", "rank2-g3", "rank3-g2")


# ==========================================
# PARSER
# ==========================================

def _w_vector(raw: str) -> List[int]:
    try:
        return [int(x) for x in raw.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated 0/1 values, got {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="realbetti",
        description="Z/2 Betti numbers of moduli spaces of real bundles over real curves",
    )
    parser.add_argument("--cache-dir", type=Path, help="Disk cache directory (default: REALBETTI_CACHE_DIR)")
    parser.add_argument("--no-cache", action="store_true", help="Bypass the disk cache")
    parser.add_argument("--verbose", action="store_true", help="Debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="Betti polynomial of one moduli space")
    compute.add_argument("--rank", type=int, required=True)
    compute.add_argument("--degree", type=int, required=True)
    compute.add_argument("--genus", type=int, required=True)
    compute.add_argument("--circles", type=int, required=True, help="Number of real circles a")
    compute.add_argument("--w", type=_w_vector, help="Stiefel-Whitney numbers, e.g. 0,1,1")
    compute.add_argument("--quaternionic", action="store_true")
    compute.add_argument("--allow-a0", action="store_true", help="Accept curves without real points")
    compute.add_argument("--order", type=int, help="Raise the truncation order")
    compute.add_argument("--format", choices=("text", "json", "csv"), default="text")
    compute.add_argument("--raw-degree", action="store_true", help="Memoize on d itself, not d mod r")

    table = sub.add_parser("table", help="Recompute a published table")
    table.add_argument("section", choices=TABLE_SECTIONS)
    table.add_argument("--format", choices=("text", "json"), default="text")

    verify = sub.add_parser("verify", help="Identity suite and closed-form oracle")
    verify.add_argument("--order", type=int, default=settings.identity_order)
    verify.add_argument("--perturb", action="store_true", help="Perturb every identity (must fail)")
    verify.add_argument("--format", choices=("text", "json"), default="text")

    strata = sub.add_parser("strata", help="Harder-Narasimhan strata")
    strata_sub = strata.add_subparsers(dest="strata_command", required=True)
    strata_list = strata_sub.add_parser("list", help="Unstable types up to a codimension")
    strata_list.add_argument("--rank", type=int, required=True)
    strata_list.add_argument("--degree", type=int, required=True)
    strata_list.add_argument("--genus", type=int, required=True)
    strata_list.add_argument("--max-codim", type=int, required=True)
    strata_list.add_argument("--circles", type=int, help="Real circles; a = 0 keeps even part degrees only")
    strata_list.add_argument("--refine", action="store_true", help="Print real refinement counts")

    formula = sub.add_parser("formula", help="Closed-form series")
    formula_sub = formula.add_subparsers(dest="formula_command", required=True)
    dump = formula_sub.add_parser("dump", help="Expand a closed form")
    dump.add_argument("tag", choices=[tag.value for tag in FormulaTag])
    dump.add_argument("--order", type=int, required=True)
    dump.add_argument("--genus", type=int)
    dump.add_argument("--circles", type=int)
    dump.add_argument("--rank", type=int, help="Rank r, or n for the classical groups (omit for n = infinity)")
    dump.add_argument("--format", choices=("text", "json"), default="json")

    cache = sub.add_parser("cache", help="Disk cache administration")
    cache.add_argument("action", choices=("clear", "stats"))

    return parser


# ==========================================
# COMMANDS
# ==========================================

def _cache(args: argparse.Namespace, use_cache: bool = True) -> Optional[DiskCache]:
    if not use_cache or args.no_cache or not settings.cache_enabled:
        return None
    return DiskCache(args.cache_dir or settings.cache_dir)


def _engine(args: argparse.Namespace, raw_degree: bool = False, use_cache: bool = True) -> RecursionEngine:
    config = settings.model_copy(update={"normalize_degree": False}) if raw_degree else settings
    engine = RecursionEngine(config, _cache(args, use_cache))
    set_engine(engine)
    return engine


def cmd_compute(args: argparse.Namespace) -> int:
    request = ComputeRequest(
        rank=args.rank,
        degree=args.degree,
        genus=args.genus,
        circles=args.circles,
        w=args.w,
        quaternionic=args.quaternionic,
        allow_a0=args.allow_a0,
        order=args.order,
        format=args.format,
        use_cache=not args.no_cache,
        raw_degree=args.raw_degree,
    )
    service = ComputeService(_engine(args, raw_degree=request.raw_degree, use_cache=request.use_cache))
    result, elapsed = service.compute(request)
    payload = service.to_payload(request, result)

    if request.format == "json":
        print(payload.model_dump_json())
    elif request.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["power", "coefficient"])
        for power, coefficient in enumerate(result.polynomial.coefficients):
            writer.writerow([power, coefficient])
    else:
        kind = "quaternionic" if request.quaternionic else "real"
        print(f"{kind} bundles r={request.rank} d={request.degree} over g={request.genus} a={request.circles}")
        print(f"P(t) = {result.polynomial.as_text()}")
        print(f"coefficients: {' '.join(str(c) for c in result.polynomial.coefficients)}")
        print(f"degree: {result.polynomial.degree}")
        print(f"palindromic: {'yes' if result.palindromic else 'no'}")
        print(f"strata: {result.strata_count}")
        print(f"order: {result.order}")
        print(f"time: {elapsed:.3f}s")
    return 0


def cmd_table(args: argparse.Namespace) -> int:
    rows = TableService(_engine(args)).reproduce(args.section)
    for row in rows:
        if args.format == "json":
            print(row.model_dump_json())
            continue
        status = "OK" if row.matches else f"MISMATCH (published {' '.join(map(str, row.golden.coeffs))})"
        coeffs = " ".join(str(c) for c in row.computed)
        print(f"r={row.golden.rank} d={row.golden.degree} g={row.golden.genus} a={row.golden.circles}: {coeffs}  {status}")
    mismatches = sum(1 for row in rows if not row.matches)
    if mismatches:
        print(f"error: GoldenMismatch: {mismatches} of {len(rows)} rows differ", file=sys.stderr)
        return 3
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    summary = VerificationService(_engine(args)).run(order=args.order, perturb=args.perturb)
    if args.format == "json":
        print(summary.model_dump_json())
    else:
        for check in summary.checks:
            line = f"{'PASS' if check.passed else 'FAIL'}  {check.name}"
            print(f"{line}  {check.detail}" if check.detail else line)
        print(f"{summary.passed} passed, {summary.failed} failed (order {summary.order})")
    return 0 if summary.failed == 0 else 3


def cmd_strata(args: argparse.Namespace) -> int:
    even_only = args.circles == 0
    types = enumerate_unstable_types(args.rank, args.degree, args.genus, args.max_codim, even_only)
    circles = 1 if args.circles is None else args.circles
    for hn, codim in types:
        refinements = real_refinement_count(hn, circles) if args.refine else None
        record = StrataRecord(parts=hn.as_lists(), codim=codim, refinements=refinements)
        print(record.model_dump_json(exclude_none=True))
    return 0


def cmd_formula(args: argparse.Namespace) -> int:
    fid = FormulaId(tag=FormulaTag(args.tag), genus=args.genus, circles=args.circles, rank=args.rank)
    series = expand_formula(fid, args.order)
    if args.format == "json":
        print(series_to_json(series))
    else:
        print(" ".join(str(c) for c in series.coefficients))
    return 0


def cmd_cache(args: argparse.Namespace) -> int:
    cache = DiskCache(args.cache_dir or settings.cache_dir)
    if args.action == "clear":
        print(json.dumps({"removed": cache.clear()}))
    else:
        print(cache.stats().model_dump_json())
    return 0


COMMANDS = {
    "compute": cmd_compute,
    "table": cmd_table,
    "verify": cmd_verify,
    "strata": cmd_strata,
    "formula": cmd_formula,
    "cache": cmd_cache,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand; returns the process exit code"""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        logger.set_level("DEBUG")

    try:
        return COMMANDS[args.command](args)
    except RealBettiError as e:
        print(f"error: {e.reason}", file=sys.stderr)
        return e.exit_code
    except ValidationError as e:
        first = e.errors()[0]
        print(f"error: InvalidInput: {first['msg']}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
