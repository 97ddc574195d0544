"""Command-line entry point: ``shi <command> ...``.

Exit status: 0 on success, 1 when a verification or cross-check fails,
2 on a usage error (bad flags, out-of-range input, unsupported size).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .bijections import RegionAddress, phi, phi_inverse
from .errors import ResourceLimitError, ValidationError
from .geometry import build_arrangement, format_fraction, geometric_census, make_hyperplane
from .identities import STATISTICS, SUITES, gf_statistic, verify
from .model import format_partition, format_sequence, format_window, parse_sequence, windows
from .posets import antichain_arcs, antichain_count_total, antichains, floors_of, root_poset

SCHEMA = 1

CSV_COLUMNS = (
    "family",
    "n",
    "copy",
    "window",
    "antichain",
    "ceilings",
    "floors",
    "partition",
    "sequence",
    "sign_vector",
    "witness",
)

# largest n for which `count` without --method also runs the geometric check
AUTO_GEOMETRIC = {"A": 4, "C": 2}


class UsageError(Exception):
    pass


def _family(text: str) -> str:
    f = text.lower()
    if f not in ("shi-a", "shi-c"):
        raise argparse.ArgumentTypeError(f"family must be shi-a or shi-c, got {text!r}")
    return f


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _fam(args) -> str:
    return "A" if args.family == "shi-a" else "C"


def thread_count() -> int:
    raw = os.environ.get("SHI_THREADS")
    if raw is None or raw == "":
        return 1
    try:
        v = int(raw)
    except ValueError:
        v = 0
    if v < 1:
        raise UsageError(f"SHI_THREADS must be a positive integer, got {raw!r}")
    return v


# -- records ----------------------------------------------------------------------------


def _hyperplane_labels(family: str, n: int) -> dict:
    arr = build_arrangement(family, n)
    return {(h.normal, h.offset): h.label for h in arr.hyperplanes}


def _labels_of(p, elements, labels) -> list[str]:
    return [labels[(h.normal, h.offset)] for h in (make_hyperplane(*p.hyperplane(e)) for e in elements)]


def region_record(family: str, addr: RegionAddress, labels: dict, region=None) -> dict:
    p = root_poset(addr.family, addr.window)
    rec = {
        "family": family,
        "n": addr.n,
        "copy": addr.copy,
        "window": format_window(addr.window),
        "antichain": [list(a) for a in antichain_arcs(p, addr.antichain)],
        "ceilings": _labels_of(p, addr.antichain, labels),
        "floors": _labels_of(p, floors_of(p, addr.antichain), labels),
        "partition": format_partition(addr.partition),
        "sequence": list(phi(addr)),
    }
    if region is not None:
        rec["sign_vector"] = list(region.signs)
        rec["witness"] = [format_fraction(x) for x in region.witness]
    return rec


def _copy_arg(args, fam: str):
    if args.copy is None:
        return None
    if fam == "C":
        raise UsageError("--copy applies to shi-a only")
    if not 1 <= args.copy <= args.n + 1:
        raise UsageError(f"--copy must lie in [1, {args.n + 1}]")
    return args.copy


def geometric_records(family: str, n: int, copy=None) -> list[dict]:
    fam = "A" if family == "shi-a" else "C"
    if fam == "A" and copy is None:
        copy = 1
    labels = _hyperplane_labels(family, n)
    census = geometric_census(fam, n)
    out = []
    for region, label in census.table:
        addr = RegionAddress(fam, label.window, label.antichain, copy if fam == "A" else None)
        out.append(region_record(family, addr, labels, region))
    return out


def combinatorial_records(family: str, n: int, copy=None) -> list[dict]:
    fam = "A" if family == "shi-a" else "C"
    copies = [None] if fam == "C" else ([copy] if copy is not None else range(1, n + 2))
    labels = _hyperplane_labels(family, n)
    out = []
    for k in copies:
        for w in windows(fam, n):
            for a in antichains(root_poset(fam, w)):
                out.append(region_record(family, RegionAddress(fam, w, a, k), labels))
    return out


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, list):
        if value and isinstance(value[0], list):
            return " ".join(f"({','.join(str(x) for x in v)})" for v in value)
        return " ".join(str(v) for v in value)
    return str(value)


def render_records(records: list[dict], fmt: str, command: str, family: str, n: int) -> str:
    if fmt == "json":
        doc = {"schema": SCHEMA, "command": command, "family": family, "n": n, "records": records}
        return json.dumps(doc, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow([_csv_cell(rec.get(col)) for col in CSV_COLUMNS])
    return buf.getvalue()


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


# -- commands ---------------------------------------------------------------------------


def cmd_count(args) -> int:
    fam = _fam(args)
    workers = thread_count()
    results = {}
    method = args.method
    if method in (None, "combinatorial"):
        results["combinatorial"] = antichain_count_total(fam, args.n, workers=workers)
    if method == "geometric" or (method is None and args.n <= AUTO_GEOMETRIC[fam]):
        results["geometric"] = geometric_census(fam, args.n).total
    values = set(results.values())
    if len(values) > 1:
        detail = ", ".join(f"{k}={v}" for k, v in sorted(results.items()))
        print(f"error: methods disagree: {detail}", file=sys.stderr)
        return 1
    print(values.pop())
    return 0


def cmd_regions(args) -> int:
    copy = _copy_arg(args, _fam(args))
    records = geometric_records(args.family, args.n, copy)
    _emit(render_records(records, args.format, "regions", args.family, args.n), args.output)
    return 0


def cmd_bijection(args) -> int:
    copy = _copy_arg(args, _fam(args))
    records = combinatorial_records(args.family, args.n, copy)
    _emit(render_records(records, args.format, "bijection", args.family, args.n), args.output)
    return 0


def cmd_invert(args) -> int:
    fam = _fam(args)
    try:
        seq = parse_sequence(args.sequence)
    except ValueError:
        raise UsageError(f"cannot parse sequence {args.sequence!r}") from None
    if len(seq) != args.n:
        raise UsageError(f"sequence {args.sequence!r} has length {len(seq)}, expected {args.n}")
    addr = phi_inverse(fam, seq, args.n)
    if phi(addr) != seq:
        print(f"error: phi does not send the inverse image back to {args.sequence}", file=sys.stderr)
        return 1
    if args.format == "json":
        rec = region_record(args.family, addr, _hyperplane_labels(args.family, args.n))
        _emit(json.dumps({"schema": SCHEMA, "command": "invert", **rec}, indent=1) + "\n", args.output)
        return 0
    p = root_poset(fam, addr.window)
    arcs = "".join(f"({i},{j})" for i, j in antichain_arcs(p, addr.antichain))
    lines = []
    if fam == "A":
        lines.append(f"copy: {addr.copy}")
    lines += [
        f"window: {format_window(addr.window)}",
        f"arcs: {arcs}",
        f"partition: {format_partition(addr.partition)}",
        f"sequence: {format_sequence(seq)}",
    ]
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_stats(args) -> int:
    poly = gf_statistic(_fam(args), args.n, args.statistic, args.method or "combinatorial")
    print(json.dumps(list(poly.coefficients)))
    return 0


def cmd_verify(args) -> int:
    report = verify(args.suite, args.max_n)
    text = report.to_json() + "\n" if args.format == "json" else report.table() + "\n"
    _emit(text, args.output)
    return 0 if report.ok else 1


def cmd_plot(args) -> int:
    from .plot import PLOTTABLE, render_svg

    if (args.family, args.n) not in PLOTTABLE:
        supported = ", ".join(f"{f} n={n}" for f, n in sorted(PLOTTABLE))
        raise UsageError(f"plot supports {supported} only")
    _emit(render_svg(args.family, args.n), args.output)
    return 0


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shi", description="Regions of the Shi arrangements of types A and C.")
    sub = parser.add_subparsers(dest="command", required=True)

    def base(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--family", type=_family, required=True, help="shi-a or shi-c")
        p.add_argument("--n", type=_positive, required=True)
        return p

    p = base("count", "number of regions")
    p.add_argument("--method", choices=("geometric", "combinatorial"))
    p.set_defaults(func=cmd_count)

    for name, func, help_text in (
        ("regions", cmd_regions, "geometric regions with witnesses and labels"),
        ("bijection", cmd_bijection, "combinatorial region addresses and their sequences"),
    ):
        p = base(name, help_text)
        p.add_argument("--copy", type=int, help="copy index (shi-a only)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("-o", "--output")
        p.set_defaults(func=func)

    p = base("invert", "region address of a sequence")
    p.add_argument("--sequence", required=True, help="comma separated, e.g. 1,3,1")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_invert)

    p = base("stats", "coefficient list of a statistic's generating polynomial")
    p.add_argument("--statistic", choices=STATISTICS, default="ceilings")
    p.add_argument("--method", choices=("geometric", "combinatorial"))
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--max-n", type=_positive, default=3)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_verify)

    p = base("plot", "SVG picture of a planar Shi arrangement")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValidationError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
