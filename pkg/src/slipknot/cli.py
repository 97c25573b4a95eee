"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 a size or resource
ceiling was hit.  Every output starts with a ``#`` header line recording the
version, knot-table checksum, seed and configuration (``--counts-only`` output
is bare).
"""

from __future__ import annotations

import argparse
import json
import os
import secrets
import sys
from contextlib import contextmanager
from typing import Iterator, TextIO

from . import __version__
from .census import (
    DIAGRAM_CLASSES, SHADOW_CLASSES, CeilingError, Indeterminate, census, enumerate_knot_diagrams,
    enumerate_shadows, growth_report, shadow_counts, unknot_diagram_counts,
    unknotting_census, unknotting_number,
)
from .knotid import ResourceLimitError, STATE_SUM_LIMIT, knot_type, open_knot_type
from .maps import DiagramError, KdgSyntaxError, classify, parse_stream, serialize
from .sampler import RejectionBudgetError, SAMPLERS, geodesic_stats, loglog_slope, sample_stream, stats_csv
from .table import table_checksum

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_RESOURCE = 0, 1, 2, 3
TYPE_CHOICES = ("spectrum", "over", "under", "min")
GROWTH_SERIES = SHADOW_CLASSES + ("unknot-diagram",)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# --------------------------------------------------------------------------
# output helpers


def header(args, extra: str = "") -> str:
    config = {k: v for k, v in sorted(vars(args).items())
              if k not in ("func", "jobs", "config") and v is not None and v is not False}
    seed = getattr(args, "seed", None)
    line = (f"# slipknot {__version__} table={table_checksum()} "
            f"seed={seed if seed is not None else '-'} config={json.dumps(config, sort_keys=True)}")
    return line + (f"\n# {extra}" if extra else "")


@contextmanager
def _sink(path: str | None, out: TextIO) -> Iterator[TextIO]:
    if path is None or path == "-":
        yield out
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        yield fh


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _diagrams(path: str):
    records = list(parse_stream(_read(path)))
    if not records:
        raise DiagramError(f"{path}: no kdg1 record")
    return records


def _ensure_seed(args) -> None:
    if getattr(args, "seed", 0) is None:
        args.seed = secrets.randbits(64)


# --------------------------------------------------------------------------
# subcommands


def cmd_validate(args, out: TextIO) -> int:
    records = _diagrams(args.path)
    print(header(args), file=out)
    for D in records:
        c = classify(D)
        print(f"{c.kind} genus={c.genus} n={D.n} faces={c.faces}", file=out)
    return EXIT_OK


def cmd_invariant(args, out: TextIO) -> int:
    records = _diagrams(args.path)
    print(header(args), file=out)
    for D in records:
        if D.open:
            for fp, p in sorted(open_knot_type(D, args.type).items(), key=lambda kv: (-kv[1], kv[0])):
                print(f"p={p} {fp}", file=out)
        else:
            print(knot_type(D, limit=args.limit), file=out)
    return EXIT_OK


def cmd_closure(args, out: TextIO) -> int:
    from .knotid import over_closure, under_closure

    records = _diagrams(args.path)
    if any(not S.open for S in records):
        raise DiagramError("closure needs a knotoid diagram")
    print(header(args), file=out)
    for S in records:
        for fp, p in sorted(open_knot_type(S, args.type).items(), key=lambda kv: (-kv[1], kv[0])):
            print(f"p={p} {fp}", file=out)
        if args.emit:
            if args.type not in ("over", "under"):
                raise UsageError("--emit needs --type over or --type under")
            D = (over_closure if args.type == "over" else under_closure)(S)
            with _sink(args.emit, out) as fh:
                fh.write(serialize(D))
    return EXIT_OK


def _emit_census(args) -> None:
    if args.cls in SHADOW_CLASSES:
        stream = enumerate_shadows(args.n, args.cls)
    else:
        stream = enumerate_knot_diagrams(args.n)
        if args.cls == "unknot-diagram":
            stream = (D for D in stream if knot_type(D).is_unknot)
    with _sink(args.emit, sys.stdout) as fh:
        fh.write(header(args) + "\n")
        for D in stream:
            fh.write(serialize(D))


def cmd_census(args, out: TextIO) -> int:
    rows = []
    if args.by_unknotting:
        u = unknotting_census(args.n, jobs=args.jobs)
        rows += [(args.n, args.cls, f"unk={k}", v) for k, v in sorted(u.c.items())]
        rows += [(args.n, args.cls, f"plus={k}", v) for k, v in sorted(u.c_plus.items())]
        rows += [(args.n, args.cls, f"minus={k}", v) for k, v in sorted(u.c_minus.items())]
        if u.indeterminate:
            rows.append((args.n, args.cls, "indeterminate", u.indeterminate))
    else:
        rows += [(r.n, r.cls, r.key, r.count)
                 for r in census(args.n, args.cls, by_distance=args.by_distance, jobs=args.jobs)]
    if not args.counts_only:
        print(header(args), file=out)
        print("n,class,key,count", file=out)
    for r in rows:
        print(",".join(map(str, r)), file=out)
    if args.emit:
        _emit_census(args)
    return EXIT_OK


def cmd_sample(args, out: TextIO) -> int:
    _ensure_seed(args)
    stats: dict = {}
    with _sink(args.emit, out) as fh:
        fh.write(header(args) + "\n")
        for D in sample_stream(args.n, args.cls, args.count, args.seed, args.budget, stats):
            fh.write(serialize(D))
        if stats:
            fh.write(f"# accepted={stats['accepted']} tried={stats['tried']} "
                     f"rate={stats['accepted'] / stats['tried']:.6f}\n")
    return EXIT_OK


def cmd_geodesic(args, out: TextIO) -> int:
    _ensure_seed(args)
    try:
        ns = [int(x) for x in args.n_list.split(",") if x]
    except ValueError as exc:
        raise UsageError(f"bad --n-list: {exc}") from None
    rows = geodesic_stats(ns, args.trials, args.seed, args.cls, jobs=args.jobs)
    slope = loglog_slope(rows) if len(rows) > 1 else float("nan")
    with _sink(args.csv, out) as fh:
        fh.write(header(args) + "\n")
        fh.write(stats_csv(rows))
        fh.write(f"# loglog_slope={slope:.6f}\n")
    return EXIT_OK


def cmd_scan(args, out: TextIO) -> int:
    from .scanner import ARC_RULE, disk_matrix, find_slipknots

    D = _diagrams(args.input)[0]
    M = disk_matrix(D, args.type)
    meta = header(args, ARC_RULE)
    with _sink(args.csv, out) as fh:
        fh.write(meta + "\n")
        fh.write(M.to_csv())
    if args.svg:
        with _sink(args.svg, out) as fh:
            fh.write("<!-- " + meta.replace("\n# ", " | ").lstrip("# ").replace("--", "- -") + " -->\n")
            fh.write(M.to_svg())
    if args.find_slipknots:
        print("inner_start,inner_len,outer_start,outer_len,knot,p_knot,p_unknot,grade", file=out)
        for r in find_slipknots(D, args.type, M):
            print(f"{r.inner.start},{r.inner.length},{r.outer.start},{r.outer.length},"
                  f"{r.knot.label},{r.p_knot},{r.p_unknot},{r.grade}", file=out)
    return EXIT_OK


def cmd_unknotting(args, out: TextIO) -> int:
    if args.path:
        records = _diagrams(args.path)
        if any(D.open for D in records):
            raise DiagramError("unknotting numbers are for closed diagrams")
        print(header(args), file=out)
        for D in records:
            print(f"unk={unknotting_number(D)}", file=out)
        return EXIT_OK
    if args.n is None:
        raise UsageError("unknotting needs a diagram file or --n")
    u = unknotting_census(args.n, jobs=args.jobs)
    print(header(args), file=out)
    print("n,key,count", file=out)
    for k, v in sorted(u.c.items()):
        print(f"{args.n},c({k}),{v}", file=out)
    for k, v in sorted(u.c_plus.items()):
        print(f"{args.n},C+({k}),{v}", file=out)
    for k, v in sorted(u.c_minus.items()):
        print(f"{args.n},C-({k}),{v}", file=out)
    print(f"{args.n},indeterminate,{u.indeterminate}", file=out)
    for ell, (a, b) in u.toggle_relation().items():
        print(f"# root toggle: |C+({ell})|={a} |C-({ell + 1})|={b}", file=out)
    return EXIT_OK


def cmd_growth(args, out: TextIO) -> int:
    values = {}
    for n in range(1, args.max_n + 1):
        if args.series == "unknot-diagram":
            values[n] = unknot_diagram_counts(n, jobs=args.jobs)["unknot"]
        else:
            values[n] = shadow_counts(n)[args.series]
    rep = growth_report(args.series, values)
    print(header(args), file=out)
    print("n,count,nth_root", file=out)
    for n in sorted(values):
        print(f"{n},{values[n]},{rep.nth_roots[n]:.6f}", file=out)
    bad = " ".join(f"({a},{b})" for a, b in rep.violations) or "none"
    print(f"# supermultiplicativity violations: {bad}", file=out)
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


def build_parser() -> tuple[_Parser, dict[str, _Parser]]:
    common = _Parser(add_help=False)
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes")
    common.add_argument("--config", help="JSON file of option defaults (flags win)")

    p = _Parser(prog="slipknot", description="Random knot and knotoid diagram toolkit.")
    p.add_argument("--version", action="store_true", help="print version and knot-table checksum")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    subs: dict[str, _Parser] = {}

    def add(name, func, help_):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.set_defaults(func=func)
        subs[name] = s
        return s

    s = add("validate", cmd_validate, "parse and classify kdg1 records")
    s.add_argument("path")

    s = add("invariant", cmd_invariant, "Jones/determinant fingerprint and table name")
    s.add_argument("path")
    s.add_argument("--limit", type=int, default=STATE_SUM_LIMIT, help="state-sum crossing ceiling")
    s.add_argument("--type", choices=TYPE_CHOICES, default="spectrum", help="open type for knotoids")

    s = add("closure", cmd_closure, "open knot type of a knotoid")
    s.add_argument("path")
    s.add_argument("--type", choices=TYPE_CHOICES, default="spectrum")
    s.add_argument("--emit", help="write the over/under closure diagram here")

    s = add("census", cmd_census, "exact rooted counts")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--class", dest="cls", choices=SHADOW_CLASSES + DIAGRAM_CLASSES, required=True)
    s.add_argument("--by-distance", action="store_true")
    s.add_argument("--by-unknotting", action="store_true")
    s.add_argument("--emit", help="write every counted object as a kdg1 stream")
    s.add_argument("--counts-only", action="store_true", help="bare CSV rows, no header")

    s = add("sample", cmd_sample, "uniform random diagrams")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--class", dest="cls", choices=tuple(SAMPLERS), default="multi-knotoid")
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--seed", type=int)
    s.add_argument("--budget", type=int, default=1_000_000, help="rejection budget per sample")
    s.add_argument("--emit", help="output path (default stdout)")

    s = add("geodesic", cmd_geodesic, "mean geodesic distance of random shadows")
    s.add_argument("--n-list", required=True, help="comma-separated sizes")
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=int)
    s.add_argument("--class", dest="cls", choices=("multi-knotoid", "knotoid"), default="multi-knotoid")
    s.add_argument("--csv", help="output path (default stdout)")

    s = add("scan", cmd_scan, "disk matrix and slipknot search")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--type", choices=TYPE_CHOICES, default="spectrum")
    s.add_argument("--csv", help="disk-matrix CSV path (default stdout)")
    s.add_argument("--svg", help="disk-matrix SVG path")
    s.add_argument("--find-slipknots", action="store_true")

    s = add("unknotting", cmd_unknotting, "diagrammatic unknotting numbers")
    s.add_argument("path", nargs="?")
    s.add_argument("--n", type=int, help="tabulate every rooted knot diagram of this size")

    s = add("growth", cmd_growth, "nth roots and supermultiplicativity of a census series")
    s.add_argument("--series", choices=GROWTH_SERIES, default="knotoid-shadow")
    s.add_argument("--max-n", type=int, default=6)

    return p, subs


def _config_path(argv: list[str]) -> str | None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    return known.config


def _apply_config(path: str, argv: list[str], subs: dict[str, _Parser]) -> None:
    """Config keys are flag names (``class``, ``n-list`` ...); they become subparser defaults."""
    try:
        cfg = json.loads(_read(path))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    command = next((a for a in argv if a in subs), None)
    if command is None:
        return
    sp = subs[command]
    by_flag = {}
    for action in sp._actions:
        for opt in action.option_strings:
            by_flag[opt.lstrip("-")] = action
        by_flag.setdefault(action.dest, action)
    defaults = {}
    for key, value in cfg.items():
        action = by_flag.get(key) or by_flag.get(key.replace("_", "-"))
        if action is None or action.dest in ("help", "config"):
            raise UsageError(f"unknown config key {key!r} for {command}")
        action.required = False
        defaults[action.dest] = value
    sp.set_defaults(**defaults)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = sys.stdout
    parser, subs = build_parser()
    try:
        config = _config_path(argv)
        if config:
            _apply_config(config, argv, subs)
        args = parser.parse_args(argv)
        if args.version:
            print(f"slipknot {__version__} table={table_checksum()}", file=out)
            return EXIT_OK
        if not args.command:
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be positive")
        return args.func(args, out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (KdgSyntaxError, DiagramError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (CeilingError, ResourceLimitError, RejectionBudgetError, Indeterminate) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
