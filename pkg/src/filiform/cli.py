"""Command-line driver.

    filiform verify [selectors] [--format json|md --out PATH]
    filiform report --format json|md [--out PATH] [selectors]
    filiform list

Exit status is 0 when no selected check fails, 1 on a FAIL (or a FINDING
under ``--strict``) and 2 when the catalog cannot be loaded.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import report, verify
from .catalog import SchemaError, default_catalog_path, load_catalog
from .exact import ParseError


def _split(values):
    out = []
    for v in values or []:
        out.extend(x for x in v.split(",") if x)
    return out


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="filiform", description="Verify degenerations of 9-dimensional filiform Lie algebras.")
    p.add_argument("--catalog", help="catalog JSON (default: $FILIFORM_CATALOG or the shipped catalog)")
    sub = p.add_subparsers(dest="command", required=True)

    def selectors(sp):
        sp.add_argument("--catalog", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
        sp.add_argument("--case", action="append", help="case id, repeatable or comma separated")
        sp.add_argument("--algebra", action="append", help="algebra name such as mu9_13")
        sp.add_argument("--check", action="append", help=f"one of {', '.join(verify.KINDS)}")
        sp.add_argument("--all", action="store_true", help="run every check (the default with no selectors)")
        sp.add_argument("--samples", type=int, default=3, help="specialisations per sampled check")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--jobs", type=int, default=1, help="worker processes")
        sp.add_argument("--strict", action="store_true", help="treat FINDING as failure")
        sp.add_argument("--timings", action="store_true", help="include elapsed times in reports")

    v = sub.add_parser("verify", help="run checks and print one line per result")
    selectors(v)
    v.add_argument("--format", choices=("json", "md"), help="also write a report in this format")
    v.add_argument("--out", help="report path (default: stdout)")
    r = sub.add_parser("report", help="run checks and write a report")
    selectors(r)
    r.add_argument("--format", choices=("json", "md"), required=True)
    r.add_argument("--out", help="report path (default: stdout)")
    ls = sub.add_parser("list", help="show the catalog")
    ls.add_argument("--catalog", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    return p


def _load(args):
    path = Path(args.catalog) if args.catalog else default_catalog_path()
    return load_catalog(path), path


def _run(args, cat, path, emit_lines=True) -> int:
    out = sys.stdout
    kinds = _split(args.check)
    bad = [k for k in kinds if k not in verify.KINDS]
    if bad:
        print(f"unknown check kind(s): {', '.join(bad)}", file=sys.stderr)
        return 2
    cases, algebras = _split(args.case), _split(args.algebra)
    tasks = verify.plan(cat, kinds or None, cases or None, algebras or None)
    if not tasks:
        print("no checks match the selectors", file=sys.stderr)
        return 2
    results = verify.run(cat, tasks, args.samples, args.seed, max(1, args.jobs))
    if emit_lines:
        for res in results:
            extra = f"  {res.note}" if res.note and res.status != "PASS" else ""
            print(f"{res.status:<8} {res.case_id:<13} {res.algebra:<20} {res.check_kind}{extra}", file=out)
        counts = report.summary(results)
        print("  ".join(f"{k}={n}" for k, n in counts.items()), file=out)
    if args.format:
        text = report.render(results, args.format, catalog_sha256=report.catalog_digest(path),
                             seed=args.seed, samples=args.samples, timing=args.timings)
        if args.out:
            try:
                Path(args.out).write_text(text)
            except OSError as e:
                print(f"cannot write {args.out}: {e.strerror}", file=sys.stderr)
                return 2
        else:
            out.write(text)
    failing = {"FAIL", "FINDING"} if args.strict else {"FAIL"}
    return 1 if any(r.status in failing for r in results) else 0


def _list(cat) -> int:
    out = sys.stdout
    rank = {d.algebra for d in cat.diag}
    print(f"{'algebra':<10} {'params':<7} {'status':<22} {'cases':<10} excluded", file=out)
    for r in cat.rows:
        status = "char. nilpotent" if r.name in cat.cn_list else ("rank >= 1" if r.name in rank else "")
        excl = ", ".join(f"{e.render()} != 0" for e in r.excluded)
        extra = [f"{x.condition}" for x in cat.exclusions if x.algebra == r.name]
        if extra:
            excl = "; ".join(filter(None, [excl, "not covered: " + ", ".join(extra)]))
        print(f"{r.name:<10} {','.join(r.params) or '-':<7} {status:<22} {','.join(cat.cases_for(r.name)) or '-':<10} {excl}",
              file=out)
    print("", file=out)
    print("with a semisimple derivation (diagonal weights):", file=out)
    for d in cat.diag:
        print(f"  {d.algebra:<8} {tuple(d.weights)}", file=out)
    print(f"\n{len(cat.rows)} characteristically nilpotent algebras, {len(cat.diag)} with a semisimple derivation", file=out)
    return 0


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if not getattr(args, "catalog", None):
        args.catalog = os.environ.get("FILIFORM_CATALOG")
    try:
        cat, path = _load(args)
    except (SchemaError, ParseError, OSError) as e:
        print(f"catalog error: {e}", file=sys.stderr)
        return 2
    if args.command == "list":
        return _list(cat)
    if args.command == "report":
        return _run(args, cat, path, emit_lines=False)
    return _run(args, cat, path)


if __name__ == "__main__":
    sys.exit(main())
