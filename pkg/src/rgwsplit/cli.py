"""Command-line front end.

Every command builds a JSON report plus a flat row view of it; ``--format``
picks which one is printed. Exit status: 0 on success, 1 when a check fails
or input is rejected, 2 for usage errors, 3 when the enumeration budget is
exceeded (the report then carries whatever was finished).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .acceptance import run_criterion, CRITERIA
from .characters import CharacterCache
from .errors import EnumerationTooLarge, RGWSplitError
from .hurwitz import DEFAULT_BUDGET, CoverCountQuery
from .instantiation import METHODS, half_count, insertion_family, split_check
from .jsonio import parse_profile, rational
from .partitions import Profile, partitions_of
from .series import BiSeries
from .signs import CHAINS, compose
from .tqft import InvariantTable, series_assemble, split_series, vfc_coefficient_chain

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


@dataclass
class Report:
    body: dict | list
    header: list[str]
    rows: list[list] = field(default_factory=list)
    ok: bool = True


class BudgetExceeded(Exception):
    def __init__(self, error: EnumerationTooLarge, partial):
        super().__init__(str(error))
        self.error = error
        self.partial = partial


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _json_arg(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"not valid JSON: {exc.msg}") from None


def _profile_cell(profile: Profile) -> str:
    return json.dumps(profile.to_list(), separators=(",", ":"))


def _elapsed(start: float) -> int:
    return int((time.perf_counter() - start) * 1000)


def cmd_hurwitz(args, cache, timing) -> Report:
    profile = parse_profile(args.d, args.profiles)
    q = CoverCountQuery(args.d, args.genus, profile, ordered_contacts=args.ordered)
    start = time.perf_counter()
    try:
        value = half_count(q, args.method, cache, args.budget, workers=args.workers)
    except EnumerationTooLarge as exc:
        raise BudgetExceeded(exc, {"query": q.to_json(), "chi_forced": q.chi_forced}) from None
    body = {"query": q.to_json(), "chi_forced": q.chi_forced, "value": rational(value), "method": args.method}
    row = [q.degree, q.genus, _profile_cell(profile), q.ordered_contacts, q.chi_forced, args.method,
           value.numerator, value.denominator]
    header = ["d", "genus", "profiles", "ordered", "chi_forced", "method", "num", "den"]
    if timing:
        body["elapsed_ms"] = _elapsed(start)
        header.append("elapsed_ms")
        row.append(body["elapsed_ms"])
    return Report(body, header, [row])


SPLIT_HEADER = ["d", "half_genus", "profile", "chi", "method", "smoothing_num", "smoothing_den",
                "split_num", "split_den", "match", "series_match"]


def _split_row(c) -> list:
    return [c.degree, c.half_genus, _profile_cell(c.profile), c.chi, c.method,
            c.smoothing.numerator, c.smoothing.denominator, c.split.numerator, c.split.denominator,
            c.match, c.series_match]


def cmd_split_check(args, cache, timing) -> Report:
    if args.max_d is not None:
        if args.profiles is not None:
            raise argparse.ArgumentTypeError("--profiles and --max-d are exclusive")
        cases = [(d, p) for d in range(1, args.max_d + 1) for p in insertion_family(d)]
    else:
        if args.d is None:
            raise argparse.ArgumentTypeError("split-check needs --d or --max-d")
        cases = [(args.d, parse_profile(args.d, args.profiles if args.profiles is not None else []))]
    checks = []
    for d, profile in cases:
        try:
            c = split_check(d, args.half_genus, profile, method=args.method, cache=cache, budget=args.budget)
        except EnumerationTooLarge as exc:
            raise BudgetExceeded(exc, [c.to_json() for c in checks]) from None
        checks.append(c)
        if args.write_tables:
            _write_tables(Path(args.write_tables), c, cache, args)
    ok = all(c.match and c.series_match for c in checks)
    body = {"half_genus": args.half_genus, "method": args.method, "cases": [c.to_json() for c in checks],
            "all_match": ok}
    return Report(body, SPLIT_HEADER, [_split_row(c) for c in checks], ok)


def _write_tables(directory: Path, c, cache, args) -> None:
    from .instantiation import doublet_level0_table
    from .tqft import TargetCurve

    directory.mkdir(parents=True, exist_ok=True)
    smooth = TargetCurve.doublet(c.half_genus, marked_pairs=len(c.profile))
    normal = smooth.pinch().normalization()
    tag = f"d{c.degree}-g{c.half_genus}"
    for mu in c.profile:
        tag += "-" + "".join(map(str, mu.parts))
    doublet_level0_table(smooth, [c.profile], "char", cache).save(directory / f"smoothing-{tag}.json")
    extended = [c.profile.extend(lam, lam) for lam in partitions_of(c.degree)]
    doublet_level0_table(normal, extended, "char", cache).save(directory / f"normalization-{tag}.json")


SERIES_HEADER = ["d", "profile", "t2", "u", "num", "den"]


def cmd_series(args, cache, timing) -> Report:
    table = InvariantTable.load(args.table)
    body, rows = [], []

    def emit(d, profile, s: BiSeries, extra=None):
        entry = {"d": d, "profile": profile.to_list(), **s.to_json()}
        if extra:
            entry.update(extra)
        body.append(entry)
        rows.extend([d, _profile_cell(profile), t2, u, v.numerator, v.denominator] for t2, u, v in s.terms())

    for d in table.degrees():
        if args.split:
            groups = {}
            for p in table.profiles(d):
                *mu, a, b = p.parts
                if a == b:
                    groups.setdefault(Profile(d, tuple(mu)), None)
            for mu in groups:
                per_lambda = {
                    lam: series_assemble(table, d, mu.extend(lam, lam), args.level) for lam in partitions_of(d)
                }
                emit(d, mu, split_series(per_lambda, d), {"split": True})
        else:
            for p in table.profiles(d):
                emit(d, p, series_assemble(table, d, p, args.level))
    return Report({"target": table.target.to_json(), "series": body}, SERIES_HEADER, rows)


def cmd_chain(args, cache, timing) -> Report:
    chains = [vfc_coefficient_chain(lam) for lam in partitions_of(args.d)]
    rows = [[json.dumps(c.partition.to_list(), separators=(",", ":")), c.c_split.numerator, c.c_split.denominator, c.deg_phi,
             c.deg_q0, c.holds] for c in chains]
    ok = all(c.holds for c in chains)
    return Report({"d": args.d, "rows": [c.to_json() for c in chains], "all_hold": ok},
                  ["lambda", "c_split_num", "c_split_den", "deg_phi", "deg_q0", "holds"], rows, ok)


def cmd_signs(args, cache, timing) -> Report:
    result = compose(CHAINS[args.chain](), args.ell)
    body = {"chain": args.chain, "ell": args.ell, **result.to_json()}
    rows = [[i, s.name, s.sign, s.running] for i, s in enumerate(result.steps, start=1)]
    return Report(body, ["step", "name", "sign", "running"], rows)


def cmd_suite(args, cache, timing) -> Report:
    cache_dir = str(cache.directory) if cache is not None else None
    numbers = args.only or list(range(1, len(CRITERIA) + 1))
    results = []
    for n in numbers:
        res = run_criterion(n, cache_dir)
        results.append(res)
        if not res.passed and not args.keep_going:
            break
    ok = all(r.passed for r in results) and len(results) == len(numbers)
    header = ["criterion", "name", "passed", "checked", "detail"] + (["elapsed_ms"] if timing else [])
    rows = [[r.number, r.name, "PASS" if r.passed else "FAIL", r.checked, r.detail]
            + ([r.elapsed_ms] if timing else []) for r in results]
    body = {"criteria": [r.to_json(timing) for r in results], "passed": ok}
    return Report(body, header, rows, ok)


COMMANDS = {
    "hurwitz": cmd_hurwitz,
    "split-check": cmd_split_check,
    "series": cmd_series,
    "chain": cmd_chain,
    "signs": cmd_signs,
    "suite": cmd_suite,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--cache-dir", help="character table cache (default: $RGWSPLIT_CACHE_DIR or the user cache)")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the disk cache")
    common.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET,
                        help="maximum tuple extensions for brute-force enumeration")
    common.add_argument("--no-timing", action="store_true", help="omit wall-clock fields for reproducible output")
    common.add_argument("--verbose", "-v", action="store_true")

    parser = argparse.ArgumentParser(prog="rgwsplit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("hurwitz", parents=[common], help="count branched covers of a curve")
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--genus", type=_non_negative, required=True)
    p.add_argument("--profiles", type=_json_arg, default=[], help='JSON list of partitions, e.g. "[[2],[2]]"')
    p.add_argument("--ordered", action="store_true", help="count covers with ordered contact points")
    p.add_argument("--method", choices=METHODS, default="char")
    p.add_argument("--workers", type=_positive, default=1, help="processes for the enumeration")

    p = sub.add_parser("split-check", parents=[common], help="compare both sides of the splitting rule")
    p.add_argument("--d", type=_positive)
    p.add_argument("--half-genus", type=_positive, required=True)
    p.add_argument("--profiles", type=_json_arg)
    p.add_argument("--max-d", type=_positive, help="sweep every d up to this, over the standard insertions")
    p.add_argument("--method", choices=METHODS, default="char")
    p.add_argument("--write-tables", metavar="DIR", help="also save the invariant tables used")

    p = sub.add_parser("series", parents=[common], help="generating series of an invariant table")
    p.add_argument("--table", required=True, help="table JSON file")
    p.add_argument("--level", type=int, help="override the target's line-bundle degree")
    p.add_argument("--split", action="store_true",
                   help="treat the table as a normalization and emit the split series of the smoothing")

    p = sub.add_parser("chain", parents=[common], help="coefficients relating classes under degeneration")
    p.add_argument("--d", type=_positive, required=True)

    p = sub.add_parser("signs", parents=[common], help="compose a chain of orientation identifications")
    p.add_argument("--ell", type=_non_negative, required=True, help="number of conjugate node pairs")
    p.add_argument("--chain", choices=sorted(CHAINS), default="main")

    p = sub.add_parser("suite", parents=[common], help="run the acceptance battery")
    p.add_argument("--only", type=int, nargs="+", choices=range(1, len(CRITERIA) + 1), metavar="N")
    p.add_argument("--keep-going", action="store_true", help="run every criterion even after a failure")
    return parser


def _render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.body, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(report.header)
        w.writerows(report.rows)
        return buf.getvalue()
    cells = [report.header] + [[str(c) for c in row] for row in report.rows]
    widths = [max(len(str(r[i])) for r in cells) for i in range(len(report.header))]
    return "".join("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in cells)


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _error(code: str, message: str, report=None) -> str:
    obj = {"error": code, "message": message}
    if report is not None:
        obj["report"] = report
    return json.dumps(obj, indent=2) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    cache = None if args.no_cache else CharacterCache(args.cache_dir)
    timing = not args.no_timing
    try:
        report = COMMANDS[args.command](args, cache, timing)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    except BudgetExceeded as exc:
        _emit(_error(exc.error.code, str(exc.error), exc.partial), args.output)
        return EXIT_BUDGET
    except (RGWSplitError, ValueError, KeyError, OSError) as exc:
        code = getattr(exc, "code", "invalid-input")
        message = str(exc.args[0]) if isinstance(exc, KeyError) and exc.args else str(exc)
        _emit(_error(code, message), args.output)
        return EXIT_CHECK_FAILED
    if not report.ok:
        _emit(_error("check-failed", f"{args.command}: at least one exact check failed", report.body), args.output)
        return EXIT_CHECK_FAILED
    _emit(_render(report, args.format), args.output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
