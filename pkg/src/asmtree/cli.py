"""Command line interface.

    asmtree count  --family path --rule connected --n 6 --method both
    asmtree table  --family star --rule connected --n-min 2 --n-max 8 --format csv
    asmtree trees  --family complete --n 3 --rule edge --format dot
    asmtree series --which fubini-egf --order 12
    asmtree oeis   --bfile b000670.txt --family star --rule connected --offset 1

Counts print as plain decimal. "--method both" evaluates the closed form
and the brute-force counter and exits 1 if they disagree, printing both.
Identical invocations produce byte-identical stdout once the version
banner is suppressed with --no-banner.

Environment: ASMTREE_CACHE_DIR relocates the count cache (default
~/.cache/asmtree); ASMTREE_OEIS_BASE_URL enables fetching b-files that are
not present locally, storing them beside the cache.

Exit codes: 0 success, 1 verification mismatch, 2 invalid request.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import urllib.request
from pathlib import Path
from typing import Iterable

from . import __version__, assembly, formulas, series
from . import graph as graphs
from .combinat import factorial

SEQUENCE_FAMILIES = ("star", "path", "cycle", "complete")
FAMILIES = SEQUENCE_FAMILIES + ("caterpillar", "custom")
RULES = ("none", "connected", "edge")
SERIES_SELECTORS = (
    "fubini-egf",
    "super-catalan-ogf",
    "cycle-ogf",
    "td-cycle-egf",
    "td-path-funceq",
)
CACHE_FILE = "counts.txt"

_FAMILY_BUILDERS = {
    "star": graphs.star,
    "path": graphs.path,
    "cycle": graphs.cycle,
    "complete": graphs.complete,
}
_FAMILY_MIN_N = {"star": 2, "path": 1, "cycle": 3, "complete": 1}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--no-banner", action="store_true", help="suppress the version banner"
    )
    common.add_argument(
        "--no-cache", action="store_true", help="bypass the on-disk count cache"
    )

    parser = argparse.ArgumentParser(
        prog="asmtree",
        description="count, enumerate and verify assembly trees of graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    count = sub.add_parser(
        "count", parents=[common], help="count assembly trees of one graph"
    )
    _add_graph_args(count)
    count.add_argument(
        "--method",
        choices=("formula", "enumerate", "both"),
        help="formula, brute-force counter, or cross-check (default: formula when one exists)",
    )

    table = sub.add_parser(
        "table", parents=[common], help="tabulate counts over a range of n"
    )
    table.add_argument("--family", choices=SEQUENCE_FAMILIES, required=True)
    table.add_argument("--rule", choices=RULES, required=True)
    table.add_argument("--timed", action="store_true")
    table.add_argument("--n-min", type=int, required=True)
    table.add_argument("--n-max", type=int, required=True)
    table.add_argument(
        "--format", choices=("csv", "json", "markdown"), default="csv"
    )

    trees = sub.add_parser(
        "trees", parents=[common], help="stream every assembly tree of one graph"
    )
    _add_graph_args(trees)
    trees.add_argument("--format", choices=("json", "dot"), default="json")

    ser = sub.add_parser(
        "series", parents=[common], help="print generating-function coefficients"
    )
    ser.add_argument("--which", choices=SERIES_SELECTORS, required=True)
    ser.add_argument("--order", type=int, required=True)

    oeis = sub.add_parser(
        "oeis", parents=[common], help="compare a formula against an OEIS b-file"
    )
    oeis.add_argument("--bfile", required=True, help="path (or fetchable name) of the b-file")
    oeis.add_argument("--family", choices=SEQUENCE_FAMILIES, required=True)
    oeis.add_argument("--rule", choices=RULES, required=True)
    oeis.add_argument("--timed", action="store_true")
    oeis.add_argument(
        "--offset",
        type=int,
        default=0,
        help="generator argument = b-file index + offset (default 0)",
    )
    oeis.add_argument("--n-max", type=int, help="ignore terms beyond this n")

    return parser


def _add_graph_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--family", choices=FAMILIES, required=True)
    sub.add_argument("--rule", choices=RULES, required=True)
    sub.add_argument("--timed", action="store_true", help="count/enumerate timed trees")
    sub.add_argument("--n", type=int, help="number of vertices (star/path/cycle/complete)")
    sub.add_argument(
        "--legs",
        help="comma-separated pendant counts per spine vertex (family caterpillar)",
    )
    sub.add_argument("--graph-file", help="graph JSON file (family custom)")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if not args.no_banner:
        print(f"asmtree {__version__}")
    handler = {
        "count": _cmd_count,
        "table": _cmd_table,
        "trees": _cmd_trees,
        "series": _cmd_series,
        "oeis": _cmd_oeis,
    }[args.command]
    try:
        return handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())


def _parse_legs(raw: str | None) -> list[int]:
    if not raw:
        raise ValueError("--legs is required for family caterpillar")
    try:
        legs = [int(tok) for tok in raw.split(",")]
    except ValueError:
        raise ValueError(f"--legs must be comma-separated integers, got {raw!r}") from None
    return legs


def _build_graph(args: argparse.Namespace) -> graphs.Graph:
    if args.family == "custom":
        if not args.graph_file:
            raise ValueError("--graph-file is required for family custom")
        return graphs.graph_from_json(Path(args.graph_file).read_text())
    if args.family == "caterpillar":
        legs = _parse_legs(args.legs)
        return graphs.caterpillar(len(legs), legs)
    if args.n is None:
        raise ValueError(f"--n is required for family {args.family}")
    return _FAMILY_BUILDERS[args.family](args.n)


def _oracle_count(g: graphs.Graph, rule: str, timed: bool) -> int:
    if timed:
        return assembly.count_timed_trees(g, rule)
    return assembly.count_trees(g, rule)


def _request_key(args: argparse.Namespace, method: str) -> str:
    parts = [
        "count",
        f"family={args.family}",
        f"rule={args.rule}",
        f"timed={int(args.timed)}",
        f"method={method}",
    ]
    if args.family == "caterpillar":
        parts.append(f"legs={args.legs}")
    elif args.family == "custom":
        if not args.graph_file:
            raise ValueError("--graph-file is required for family custom")
        canonical = graphs.graph_to_json(graphs.graph_from_json(Path(args.graph_file).read_text()))
        digest = hashlib.sha256(canonical.encode()).hexdigest()[:16]
        parts.append(f"graph={digest}")
    else:
        parts.append(f"n={args.n}")
    return " ".join(parts)


def _cache_dir() -> Path:
    override = os.environ.get("ASMTREE_CACHE_DIR")
    if override:
        return Path(override)
    return Path.home() / ".cache" / "asmtree"


def _cache_header() -> str:
    return f"# asmtree-cache {__version__}"


def _load_cache() -> dict[str, str]:
    path = _cache_dir() / CACHE_FILE
    try:
        lines = path.read_text().splitlines()
    except OSError:
        return {}
    # A version change invalidates the whole file.
    if not lines or lines[0] != _cache_header():
        return {}
    entries = {}
    for line in lines[1:]:
        if "\t" in line:
            key, value = line.split("\t", 1)
            entries[key] = value
    return entries


def _store_cache(entries: dict[str, str]) -> None:
    directory = _cache_dir()
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / CACHE_FILE
    body = "\n".join(
        [_cache_header()] + [f"{k}\t{v}" for k, v in sorted(entries.items())]
    )
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(body + "\n")
    tmp.replace(path)


def _cmd_count(args: argparse.Namespace) -> int:
    entry = formulas.formula_for(args.family, args.rule, args.timed)
    method = args.method or ("formula" if entry else "enumerate")
    if method in ("formula", "both") and entry is None:
        raise ValueError(
            f"no closed form is known for family={args.family} rule={args.rule} "
            f"timed={str(args.timed).lower()}; use --method enumerate"
        )

    key = _request_key(args, method)
    if not args.no_cache:
        cached = _load_cache().get(key)
        if cached is not None:
            print(cached)
            return 0

    formula_value = oracle_value = None
    if method in ("formula", "both"):
        if args.n is None:
            raise ValueError(f"--n is required for family {args.family}")
        if args.n < entry.min_n:
            raise ValueError(
                f"the {args.family} formula needs n >= {entry.min_n}, got {args.n}"
            )
        formula_value = entry.fn(args.n)
    if method in ("enumerate", "both"):
        oracle_value = _oracle_count(_build_graph(args), args.rule, args.timed)

    if method == "both" and formula_value != oracle_value:
        print(f"formula={formula_value}")
        print(f"oracle={oracle_value}")
        print("error: formula and brute-force counts disagree", file=sys.stderr)
        return 1

    value = formula_value if formula_value is not None else oracle_value
    print(value)
    if not args.no_cache:
        entries = _load_cache()
        entries[key] = str(value)
        _store_cache(entries)
    return 0


def _table_rows(args: argparse.Namespace) -> list[dict]:
    entry = formulas.formula_for(args.family, args.rule, args.timed)
    rows = []
    for n in range(args.n_min, args.n_max + 1):
        formula_value = None
        if entry is not None and n >= entry.min_n:
            formula_value = entry.fn(n)
        oracle_value = None
        if n >= _FAMILY_MIN_N[args.family] and n <= assembly.ENUMERATION_LIMIT:
            g = _FAMILY_BUILDERS[args.family](n)
            oracle_value = _oracle_count(g, args.rule, args.timed)
        agree = None
        if formula_value is not None and oracle_value is not None:
            agree = formula_value == oracle_value
        rows.append(
            {"n": n, "formula": formula_value, "oracle": oracle_value, "agree": agree}
        )
    return rows


def _cmd_table(args: argparse.Namespace) -> int:
    if args.n_min > args.n_max:
        raise ValueError(f"--n-min {args.n_min} exceeds --n-max {args.n_max}")
    if args.n_min < 1:
        raise ValueError("--n-min must be at least 1")
    rows = _table_rows(args)

    def cell(value: object) -> str:
        if value is None:
            return ""
        if isinstance(value, bool):
            return str(value).lower()
        return str(value)

    if args.format == "csv":
        print("n,formula,oracle,agree")
        for row in rows:
            print(f"{row['n']},{cell(row['formula'])},{cell(row['oracle'])},{cell(row['agree'])}")
    elif args.format == "markdown":
        print("| n | formula | oracle | agree |")
        print("| --- | --- | --- | --- |")
        for row in rows:
            print(
                f"| {row['n']} | {cell(row['formula'])} | {cell(row['oracle'])} "
                f"| {cell(row['agree'])} |"
            )
    else:
        payload = {
            "family": args.family,
            "rule": args.rule,
            "timed": args.timed,
            "rows": [
                {
                    "n": row["n"],
                    "formula": None if row["formula"] is None else str(row["formula"]),
                    "oracle": None if row["oracle"] is None else str(row["oracle"]),
                    "agree": row["agree"],
                }
                for row in rows
            ],
        }
        print(json.dumps(payload, indent=2))
    return 0


def _cmd_trees(args: argparse.Namespace) -> int:
    g = _build_graph(args)
    if args.timed:
        stream: Iterable = assembly.enumerate_timed_trees(g, args.rule)
    else:
        stream = assembly.enumerate_trees(g, args.rule)
    for t in stream:
        print(assembly.serialize_tree(t, args.format))
    return 0


def _series_checks(which: str, ps: series.PowerSeries, order: int) -> list[str]:
    """Compare coefficients against the formula route; return mismatch
    descriptions (empty when everything agrees)."""
    problems = []
    if which == "fubini-egf":
        for k in range(1, order + 1):
            expected = formulas.fubini(k)
            got = ps.coefficient(k) * factorial(k)
            if got != expected:
                problems.append(f"k={k}: series gives {got}, formula gives {expected}")
    elif which == "super-catalan-ogf":
        for k in range(1, order + 1):
            if ps.coefficient(k) != formulas.super_catalan(k):
                problems.append(
                    f"k={k}: series gives {ps.coefficient(k)}, "
                    f"formula gives {formulas.super_catalan(k)}"
                )
    elif which == "cycle-ogf":
        for k in range(3, order + 1):
            if ps.coefficient(k) != formulas.connected_cycle(k):
                problems.append(
                    f"k={k}: series gives {ps.coefficient(k)}, "
                    f"formula gives {formulas.connected_cycle(k)}"
                )
    elif which == "td-cycle-egf":
        for k in range(1, order + 1):
            expected = formulas.td_connected_cycle(k)
            got = ps.coefficient(k) * factorial(k)
            if got != expected:
                problems.append(f"k={k}: series gives {got}, formula gives {expected}")
    return problems


_SERIES_BUILDERS = {
    "fubini-egf": series.egf_fubini,
    "super-catalan-ogf": series.ogf_super_catalan,
    "cycle-ogf": series.ogf_connected_cycle,
    "td-cycle-egf": series.egf_td_cycle,
}


def _cmd_series(args: argparse.Namespace) -> int:
    if args.which == "td-path-funceq":
        verdict = series.check_td_path_functional_eq(args.order)
        if verdict.ok:
            print("PASS")
            return 0
        print(f"FAIL at k={verdict.first_mismatch}")
        return 1
    ps = _SERIES_BUILDERS[args.which](args.order)
    print(series.dump_coefficients(ps))
    problems = _series_checks(args.which, ps, args.order)
    if problems:
        for line in problems:
            print(f"error: {line}", file=sys.stderr)
        return 1
    return 0


def _read_bfile(path: str) -> list[tuple[int, int]]:
    entries = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            tokens = line.split()
            if len(tokens) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'index value', got {line!r}")
            try:
                entries.append((int(tokens[0]), int(tokens[1])))
            except ValueError:
                raise ValueError(
                    f"{path}:{lineno}: non-integer entry {line!r}"
                ) from None
    if not entries:
        raise ValueError(f"{path}: no data lines found")
    return entries


def _resolve_bfile(arg: str) -> str:
    if os.path.exists(arg):
        return arg
    base = os.environ.get("ASMTREE_OEIS_BASE_URL")
    if not base:
        raise ValueError(
            f"b-file {arg!r} not found (set ASMTREE_OEIS_BASE_URL to enable fetching)"
        )
    name = os.path.basename(arg)
    directory = _cache_dir()
    directory.mkdir(parents=True, exist_ok=True)
    target = directory / name
    if not target.exists():
        url = base.rstrip("/") + "/" + name
        with urllib.request.urlopen(url) as resp:
            target.write_bytes(resp.read())
    return str(target)


def _cmd_oeis(args: argparse.Namespace) -> int:
    entry = formulas.formula_for(args.family, args.rule, args.timed)
    if entry is None:
        raise ValueError(
            f"no closed form is known for family={args.family} rule={args.rule} "
            f"timed={str(args.timed).lower()}"
        )
    terms = _read_bfile(_resolve_bfile(args.bfile))
    compared = 0
    for index, expected in sorted(terms):
        n = index + args.offset
        if n < entry.min_n:
            continue
        if args.n_max is not None and n > args.n_max:
            continue
        got = entry.fn(n)
        ok = got == expected
        print(f"{index}\t{expected}\t{got}\t{'ok' if ok else 'MISMATCH'}")
        compared += 1
        if not ok:
            print(f"FAIL at index {index}")
            return 1
    if compared == 0:
        raise ValueError("no overlapping terms between the b-file and the formula domain")
    print(f"PASS ({compared} terms)")
    return 0
