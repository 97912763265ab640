"""Command-line interface: ``symtopo info|export|histogram|compare|verify``.

Exit status: 0 success, 2 usage, 3 capacity, 4 I/O, 5 verification failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence, TextIO

import numpy as np

from . import config
from .errors import CapacityError, DomainError, SpecParseError
from .lattice import TopologySpec, all_coords, node_count
from .metrics import (
    PathLengthHistogram,
    density_ratio,
    pairwise_distances,
    path_length_histogram,
    path_length_histogram_sampled,
    summary,
)
from .oracle import verify_distances
from .topology import edge_arrays

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_IO = 4
EXIT_VERIFY = 5

DENSE_CSV_LIMIT = 5000


def _spec_arg(text: str) -> TopologySpec:
    try:
        return TopologySpec.parse(text)
    except SpecParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _render_summary(spec: TopologySpec, kv: bool) -> str:
    s = summary(spec).as_dict()
    if kv:
        return "".join(f"{k}={v!r}\n" if isinstance(v, float) else f"{k}={v}\n" for k, v in s.items())
    width = max(len(k) for k in s)
    return "".join(
        f"{k.ljust(width)}  {v!r}\n" if isinstance(v, float) else f"{k.ljust(width)}  {v}\n" for k, v in s.items()
    )


# -- export writers ---------------------------------------------------------


def _write_edgelist(spec: TopologySpec, fh: TextIO, budget_edges: int | None) -> None:
    u, v, _ = edge_arrays(spec, budget=budget_edges)
    for a, b in zip(u.tolist(), v.tolist()):
        fh.write(f"{a} {b}\n")


def _write_edges_csv(spec: TopologySpec, fh: TextIO, budget_edges: int | None) -> None:
    u, v, _ = edge_arrays(spec, budget=budget_edges)
    fh.write("u,v\n")
    for a, b in zip(u.tolist(), v.tolist()):
        fh.write(f"{a},{b}\n")


def _write_adjacency_mm(spec: TopologySpec, fh: TextIO, budget_edges: int | None) -> None:
    u, v, _ = edge_arrays(spec, budget=budget_edges)
    nu = node_count(spec)
    # symmetric storage keeps the lower triangle (row > col), 1-based, column-major
    fh.write("%%MatrixMarket matrix coordinate pattern symmetric\n")
    fh.write(f"% {spec}\n")
    fh.write(f"{nu} {nu} {u.shape[0]}\n")
    for a, b in zip(u.tolist(), v.tolist()):
        fh.write(f"{b + 1} {a + 1}\n")


def _dense_adjacency(spec: TopologySpec, budget_edges: int | None) -> np.ndarray:
    nu = node_count(spec)
    if nu > DENSE_CSV_LIMIT:
        raise CapacityError(f"{spec}: dense CSV limited to {DENSE_CSV_LIMIT} nodes, got {nu}")
    u, v, _ = edge_arrays(spec, budget=budget_edges)
    dense = np.zeros((nu, nu), dtype=np.int8)
    dense[u, v] = 1
    dense[v, u] = 1
    return dense


def _write_dense_csv(mat: np.ndarray, fh: TextIO) -> None:
    for row in mat.tolist():
        fh.write(",".join(str(x) for x in row) + "\n")


def _distance_rows(spec: TopologySpec, budget_pairs: int | None):
    nu = node_count(spec)
    limit = config.budget_pairs(budget_pairs)
    if nu * (nu - 1) // 2 > limit:
        raise CapacityError(f"{spec}: {nu * (nu - 1) // 2} pairs exceeds the pair budget {limit}")
    coords = all_coords(spec)
    for i in range(nu):
        yield i, pairwise_distances(coords[i : i + 1], coords, spec)[0]


def _write_distances(spec: TopologySpec, fmt: str, fh: TextIO, budget_pairs: int | None) -> None:
    nu = node_count(spec)
    if fmt == "matrixmarket":
        fh.write("%%MatrixMarket matrix coordinate integer general\n")
        fh.write(f"% {spec}\n")
        fh.write(f"{nu} {nu} {nu * (nu - 1)}\n")
        for i, row in _distance_rows(spec, budget_pairs):
            for j, d in enumerate(row.tolist()):
                if j != i:
                    fh.write(f"{i + 1} {j + 1} {d}\n")
    elif fmt == "csv":
        if nu > DENSE_CSV_LIMIT:
            raise CapacityError(f"{spec}: dense CSV limited to {DENSE_CSV_LIMIT} nodes, got {nu}")
        for _, row in _distance_rows(spec, budget_pairs):
            fh.write(",".join(str(x) for x in row.tolist()) + "\n")
    else:
        for i, row in _distance_rows(spec, budget_pairs):
            for j, d in enumerate(row.tolist()[i + 1 :], start=i + 1):
                fh.write(f"{i} {j} {d}\n")


def export(spec: TopologySpec, what: str, fmt: str, fh: TextIO, *, budget_edges=None, budget_pairs=None) -> None:
    if what == "distances":
        _write_distances(spec, fmt, fh, budget_pairs)
    elif fmt == "edgelist":
        _write_edgelist(spec, fh, budget_edges)
    elif fmt == "matrixmarket":
        _write_adjacency_mm(spec, fh, budget_edges)
    elif what == "edges":
        _write_edges_csv(spec, fh, budget_edges)
    else:
        _write_dense_csv(_dense_adjacency(spec, budget_edges), fh)


# -- commands ---------------------------------------------------------------


def _histogram(spec: TopologySpec, args) -> PathLengthHistogram:
    if args.sample is not None:
        return path_length_histogram_sampled(spec, args.sample, args.seed, threads=args.threads)
    return path_length_histogram(spec, budget=args.budget_pairs, threads=args.threads)


def _open_out(path: str | None):
    if path is None or path == "-":
        return None
    return open(path, "w", encoding="ascii", newline="\n")


def cmd_info(args, out: TextIO) -> int:
    out.write(_render_summary(args.spec, args.kv))
    return EXIT_OK


def cmd_export(args, out: TextIO) -> int:
    fh = _open_out(args.out)
    try:
        export(
            args.spec,
            args.what,
            args.format,
            fh or out,
            budget_edges=args.budget_edges,
            budget_pairs=args.budget_pairs,
        )
    finally:
        if fh is not None:
            fh.close()
    return EXIT_OK


def cmd_histogram(args, out: TextIO) -> int:
    h = _histogram(args.spec, args)
    text = h.to_csv()
    if args.out is None or args.out == "-":
        out.write(text)
    else:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
        out.write(f"wrote {args.out} (mean={h.mean!r}, total_pairs={h.total_pairs})\n")
    return EXIT_OK


def _default_csv_name(spec: TopologySpec) -> str:
    return str(spec).replace(":", "_").replace(",", "_").replace("=", "") + ".csv"


def cmd_compare(args, out: TextIO) -> int:
    a, b = args.a, args.b
    sa, sb = summary(a).as_dict(), summary(b).as_dict()
    ha, hb = _histogram(a, args), _histogram(b, args)
    sa["mean"], sb["mean"] = ha.mean, hb.mean
    rows = ["spec", "nu", "L", "eps_max", "eps_min", "rho", "mean"]

    def fmt(v) -> str:
        return repr(v) if isinstance(v, float) else str(v)

    w0 = max(len(r) for r in rows)
    w1 = max(len(fmt(sa[r])) for r in rows)
    for r in rows:
        out.write(f"{r.ljust(w0)}  {fmt(sa[r]).ljust(w1)}  {fmt(sb[r])}\n")
    out.write(f"{'rho_a/rho_b'.ljust(w0)}  {density_ratio(a, b)!r}\n")
    os.makedirs(args.out_dir, exist_ok=True)
    for spec, h, name in ((a, ha, args.out_a), (b, hb, args.out_b)):
        path = os.path.join(args.out_dir, name or _default_csv_name(spec))
        h.write_csv(path)
        out.write(f"wrote {path}\n")
    return EXIT_OK


def cmd_verify(args, out: TextIO) -> int:
    report = verify_distances(args.spec, budget_nodes=args.budget_nodes, threads=args.threads)
    out.write(report.render())
    if args.mismatches_csv:
        with open(args.mismatches_csv, "w", encoding="ascii", newline="\n") as fh:
            fh.write(report.mismatches_csv())
    return EXIT_OK if report.certified else EXIT_VERIFY


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return value


def _add_mode_flags(p: argparse.ArgumentParser) -> None:
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="all node pairs (default)")
    mode.add_argument("--sample", type=_positive_int, metavar="SIZE", help="number of sampled pairs")
    p.add_argument("--seed", type=_nonneg_int, default=0, help="seed for --sample (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symtopo",
        description="Mesh, hypercube and symplectic interconnect topologies.",
        epilog="Specs: mesh:mu=<int>,n=<int> | hypercube:n=<int> | symplectic:M=<int>,n=<int>",
    )
    parser.add_argument("--budget-edges", type=_positive_int, default=None, help="edge enumeration budget")
    parser.add_argument("--budget-pairs", type=_positive_int, default=None, help="node-pair budget")
    parser.add_argument("--threads", type=_positive_int, default=1, help="worker threads")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="node count, diameter, degree extrema and density")
    p.add_argument("spec", type=_spec_arg)
    p.add_argument("--kv", action="store_true", help="key=value lines")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("export", help="write edges, adjacency or distances")
    p.add_argument("spec", type=_spec_arg)
    p.add_argument("--what", choices=["edges", "adjacency", "distances"], default="adjacency")
    p.add_argument("--format", choices=["edgelist", "matrixmarket", "csv"], default="matrixmarket")
    p.add_argument("--out", "-o", default=None, help="output file (default stdout)")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("histogram", help="path-length histogram as CSV")
    p.add_argument("spec", type=_spec_arg)
    _add_mode_flags(p)
    p.add_argument("--out", "-o", default=None, help="output CSV (default stdout)")
    p.set_defaults(func=cmd_histogram)

    p = sub.add_parser("compare", help="two topologies side by side")
    p.add_argument("a", type=_spec_arg)
    p.add_argument("b", type=_spec_arg)
    _add_mode_flags(p)
    p.add_argument("--out-dir", default=".", help="directory for the two histogram CSVs")
    p.add_argument("--out-a", default=None, help="file name for the first histogram")
    p.add_argument("--out-b", default=None, help="file name for the second histogram")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", help="all-pairs BFS check of the closed-form distance")
    p.add_argument("spec", type=_spec_arg)
    p.add_argument("--budget-nodes", type=_positive_int, default=None, help="verification node budget")
    p.add_argument("--mismatches-csv", default=None, help="write mismatches to this CSV")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except CapacityError as exc:
        print(f"symtopo: capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except OSError as exc:
        print(f"symtopo: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (DomainError, ValueError) as exc:
        print(f"symtopo: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
