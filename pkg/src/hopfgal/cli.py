"""Command-line interface: ``hopfgal <command> ...``.

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 resource cap hit.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .catalog import (
    CatalogError,
    enumerate_transitive,
    format_catalog,
    load_catalog,
    transitive_groups,
    validate_catalog,
    catalog_file,
)
from .engine import ContextError, ExtensionContext, direct_hgs, find_hgs
from .perm import PermError, format_cycles
from .props import classify
from .report import (
    ResourceCapError,
    RunOptions,
    describe_records,
    format_details,
    format_summaries,
    run_degree,
)
from .zoo import UnsupportedOrder, groups_of_order

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

log = logging.getLogger("hopfgal")


def _common(suppress: bool) -> argparse.ArgumentParser:
    """Global flags; the copy attached to subcommands must not reset values given earlier."""

    def d(value):
        return argparse.SUPPRESS if suppress else value

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--catalog", default=d(None), help="directory holding degree<g>.txt catalog files")
    common.add_argument("--jobs", type=int, default=d(1), help="number of worker processes (default 1)")
    common.add_argument("--format", choices=("text", "json", "csv"), default=d("text"), dest="fmt")
    common.add_argument("--time-budget", type=float, default=d(None), metavar="S",
                        help="give up with exit code 3 after S seconds")
    common.add_argument("--seedless", action=argparse.BooleanOptionalAction, default=d(True),
                        help="forbid randomized shortcuts (default on; all algorithms here are deterministic)")
    common.add_argument("-v", "--verbose", action="count", default=d(0))
    return common


def build_parser() -> argparse.ArgumentParser:
    top, common = _common(False), _common(True)
    p = argparse.ArgumentParser(prog="hopfgal", description="Hopf Galois structures on separable extensions.",
                                parents=[top])
    sub = p.add_subparsers(dest="command", required=True)

    cat = sub.add_parser("catalog", help="transitive group catalogs", parents=[common])
    cat_sub = cat.add_subparsers(dest="action", required=True)
    ce = cat_sub.add_parser("enumerate", help="enumerate transitive groups of degree <= 8", parents=[common])
    ce.add_argument("--degree", type=int, required=True)
    ce.add_argument("--output", help="write the catalog here instead of stdout")
    for name in ("load", "validate"):
        c = cat_sub.add_parser(name, help=f"{name} a catalog file", parents=[common])
        src = c.add_mutually_exclusive_group(required=True)
        src.add_argument("--degree", type=int)
        src.add_argument("--file")
        if name == "validate":
            c.add_argument("--full", action=argparse.BooleanOptionalAction, default=None,
                           help="separate every pair of entries (default: on for degree <= 12)")

    h = sub.add_parser("hgs", help="list Hopf Galois structures for a degree", parents=[common])
    h.add_argument("--degree", type=int, required=True)
    h.add_argument("--group", type=int, help="catalog index k of gTk")
    h.add_argument("--type", dest="type_label", help="type label, e.g. D14")
    h.add_argument("--records", action="store_true", help="print every structure (requires --group)")

    t = sub.add_parser("table", help="summary row(s) of counts per degree", parents=[common])
    t.add_argument("--degree", type=int, nargs="+", required=True)
    t.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")

    v = sub.add_parser("verify", help="run a theorem-check suite", parents=[common])
    v.add_argument("--suite", required=True, choices=("lemma", "2pn", "2p2", "aut", "corollary", "all"))
    v.add_argument("--p", type=int, default=3)

    o = sub.add_parser("oracle", help="compare the engine with brute force (degree <= 6)", parents=[common])
    o.add_argument("--degree", type=int, required=True)
    return p


def _emit(text: str) -> None:
    sys.stdout.write(text)
    sys.stdout.flush()


def _options(args) -> RunOptions:
    if args.jobs < 1:
        raise PermError("--jobs must be at least 1")
    return RunOptions(catalog=args.catalog, jobs=args.jobs, time_budget=args.time_budget, seedless=args.seedless)


# ---------------------------------------------------------------------------
# commands

def cmd_catalog(args) -> int:
    if args.action == "enumerate":
        entries = enumerate_transitive(args.degree)
        text = format_catalog(entries, comment=f"transitive groups of degree {args.degree}, self-enumerated")
        if args.output:
            Path(args.output).write_text(text)
            _emit(f"wrote {len(entries)} groups to {args.output}\n")
        else:
            _emit(text)
        return EXIT_OK
    path = Path(args.file) if args.file else catalog_file(args.degree, args.catalog)
    if args.action == "load":
        entries = load_catalog(path, validate=True)
        if args.fmt == "json":
            _emit(json.dumps([{"id": e.ident, "order": e.order, "name": e.name,
                               "generators": [format_cycles(x.t) for x in e.generators]} for e in entries],
                             indent=2) + "\n")
        else:
            for e in entries:
                _emit(f"{e.ident}\t{e.order}\t{e.name or ''}\n")
        return EXIT_OK
    entries = load_catalog(path, validate=False)
    rep = validate_catalog(entries, full=args.full)
    if args.fmt == "json":
        _emit(json.dumps({"degree": rep.degree, "count": rep.count, "ok": rep.ok,
                          "conjugacy_checked": rep.conjugacy_checked, "errors": rep.errors,
                          "undecided": [list(x) for x in rep.undecided]}, indent=2) + "\n")
    else:
        _emit(f"degree {rep.degree}: {rep.count} entries, {'ok' if rep.ok else 'FAILED'}"
              f"{'' if rep.conjugacy_checked else ' (pairwise separation not checked)'}\n")
        for e in rep.errors:
            _emit(f"  error: {e}\n")
        for a, b in rep.undecided:
            _emit(f"  undecided: {rep.degree}T{a} vs {rep.degree}T{b}\n")
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def cmd_hgs(args) -> int:
    options = _options(args)
    if args.records:
        if args.group is None:
            raise PermError("--records requires --group")
        entries = transitive_groups(args.degree, args.catalog)
        match = [e for e in entries if e.index == args.group]
        if not match:
            raise PermError(f"no group {args.degree}T{args.group}")
        ctx = ExtensionContext.from_group(match[0].group, match[0].ident)
        out = []
        for t in groups_of_order(args.degree):
            if args.type_label and t.label != args.type_label:
                continue
            recs = find_hgs(ctx, t)
            classify(recs, ctx)
            out.extend(describe_records(recs, ctx))
        if args.fmt == "json":
            _emit(json.dumps({"group": ctx.name, "records": out}, indent=2) + "\n")
        else:
            for r in out:
                flags = ("ac " if r["almost_classical"] else "") + ("bc" if r["bijective_corr"] else "")
                _emit(f"{r['type']}\tclass {r['class_id']}\t{flags.strip() or '-'}\t{' '.join(r['generators'])}\n")
        return EXIT_OK
    result = run_degree(args.degree, options, group=args.group, type_label=args.type_label)
    _emit(format_details(result.details, args.fmt))
    return EXIT_OK


def cmd_table(args) -> int:
    options = _options(args)
    summaries = [run_degree(g, options).summary for g in args.degree]
    _emit(format_summaries(summaries, args.fmt, timing=args.timing))
    return EXIT_OK


def cmd_verify(args) -> int:
    from .twop import SUITES, run_suite

    names = SUITES if args.suite == "all" else (args.suite,)
    reports = [run_suite(n, p=args.p, time_budget=args.time_budget) for n in names]
    if args.fmt == "json":
        _emit(json.dumps([r.to_dict() for r in reports], indent=2) + "\n")
    else:
        for r in reports:
            for c in r.checks:
                _emit(f"{'PASS' if c.passed else 'FAIL'}  {r.suite}: {c.name}"
                      f"{'' if c.passed else f' (expected {c.expected}, got {c.actual})'}\n")
            for s in r.skipped:
                _emit(f"SKIP  {r.suite}: {s}\n")
            _emit(f"suite {r.suite}: {'passed' if r.passed else 'FAILED'} ({len(r.checks)} checks)\n")
    if not all(r.passed for r in reports):
        return EXIT_MISMATCH
    if any(r.skipped for r in reports):
        return EXIT_RESOURCE
    return EXIT_OK


def oracle_differences(g: int) -> list[str]:
    """Disagreements between find_hgs and direct_hgs over all transitive groups of degree g."""
    diffs = []
    for e in enumerate_transitive(g):
        ctx = ExtensionContext.from_group(e.group, e.ident)
        for t in groups_of_order(g):
            a = {r.key for r in find_hgs(ctx, t)}
            b = {r.key for r in direct_hgs(ctx, t)}
            if a != b:
                diffs.append(f"{e.ident} type {t.label}: engine {len(a)}, brute force {len(b)}, "
                             f"{len(a - b)} only in engine, {len(b - a)} only in brute force")
    return diffs


def cmd_oracle(args) -> int:
    diffs = oracle_differences(args.degree)
    if args.fmt == "json":
        _emit(json.dumps({"degree": args.degree, "differences": diffs}, indent=2) + "\n")
    else:
        for d in diffs:
            _emit(d + "\n")
        _emit(f"{len(diffs)} differences\n")
    return EXIT_MISMATCH if diffs else EXIT_OK


COMMANDS = {"catalog": cmd_catalog, "hgs": cmd_hgs, "table": cmd_table, "verify": cmd_verify, "oracle": cmd_oracle}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except ResourceCapError as e:
        print(f"hopfgal: resource cap: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except UnsupportedOrder as e:
        print(f"hopfgal: {e}", file=sys.stderr)
        return EXIT_RESOURCE if "cap" in str(e) else EXIT_USAGE
    except (CatalogError, ContextError, PermError) as e:
        print(f"hopfgal: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
