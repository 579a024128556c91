"""``kcgds`` command-line entry point."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bench, datasets
from .cliquegraph import build_k_clique_graph
from .cliques import list_k_cliques, list_triangles
from .errors import KcgdsError, PreconditionError, ResourceLimitError
from .keywords import extract_keywords

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_LIMIT = 0, 2, 3, 4


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _dump(obj, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(obj, out, indent=2)
        out.write("\n")
    elif fmt == "tsv":
        for key, value in obj.items():
            if isinstance(value, (list, dict)):
                value = json.dumps(value)
            out.write(f"{key}\t{value}\n")
    else:
        width = max(map(len, obj), default=0)
        for key, value in obj.items():
            if isinstance(value, list) and key != "trajectory":
                value = " ".join(map(str, value))
            out.write(f"{key.ljust(width)}  {value}\n")


def cmd_triangles(args, out) -> int:
    g = datasets.load_dataset(args.graph)
    rows = list_triangles(g) if args.k == 3 else list_k_cliques(g, args.k, args.cap)
    if args.list:
        for row in rows.tolist():
            out.write(" ".join(map(str, g.to_original(row))) + "\n")
    out.write(f"{len(rows)}\n" if not args.list else f"# {len(rows)} cliques\n")
    return EXIT_OK


def cmd_densest(args, out) -> int:
    g = datasets.load_dataset(args.graph)
    res = bench.run_method(g, args.method, k=args.k, alpha=args.alpha,
                           limit=args.limit_exact, trajectory=args.trajectory)
    _dump(bench.density_report(g, res, args.method, dataset=args.graph), args.format, out)
    return EXIT_OK


def cmd_keywords(args, out) -> int:
    if args.text == "-":
        text = sys.stdin.read()
    else:
        with open(args.text, encoding="utf-8") as fh:
            text = fh.read()
    words = extract_keywords(text, window=args.window, drop_stopwords=args.stopwords,
                             min_length=args.min_length)
    if args.format == "json":
        json.dump(words, out)
        out.write("\n")
    else:
        out.write("".join(w + "\n" for w in words))
    return EXIT_OK


def cmd_clique_graph(args, out) -> int:
    g = datasets.load_dataset(args.graph)
    cg = build_k_clique_graph(g, args.k)
    cg.write_edges(out, "json" if args.format == "json" else "text")
    return EXIT_OK


def cmd_bench(args, out) -> int:
    spec = bench.BenchSpec.load(args.spec)
    if args.timeout is not None:
        spec.limits["timeout"] = args.timeout
    result = bench.run_bench(spec)
    machine = json.dumps(result, indent=2) + "\n"
    if spec.output:
        with open(spec.output, "w", encoding="utf-8") as fh:
            fh.write(machine)
    if args.format == "json":
        out.write(machine)
    elif args.format == "tsv":
        out.write(bench.render_tsv(result))
    else:
        out.write(bench.render_text(result))
    return EXIT_OK


def cmd_datasets(args, out) -> int:
    for name in datasets.ALL:
        where = str(datasets.resolve(name)) if datasets.available(name) else "missing"
        out.write(f"{name}\t{where}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kcgds", description="Dense subgraph discovery on k-clique graphs.")
    sub = p.add_subparsers(dest="command", required=True)
    fmt = dict(choices=("json", "tsv", "text"))

    t = sub.add_parser("triangles", help="count or list triangles (or k-cliques)")
    t.add_argument("graph", help="edge-list path or dataset name")
    t.add_argument("--list", action="store_true", help="print every clique")
    t.add_argument("--k", type=int, default=3)
    t.add_argument("--cap", type=int, default=10**8, help="maximum number of cliques")
    t.set_defaults(func=cmd_triangles)

    d = sub.add_parser("densest", help="extract a dense subgraph")
    d.add_argument("graph", help="edge-list path or dataset name")
    d.add_argument("--method", default="tgds", choices=bench.METHODS)
    d.add_argument("--k", type=int, default=3)
    d.add_argument("--alpha", type=_fraction, default=Fraction(1, 3))
    d.add_argument("--limit-exact", type=int, default=None,
                   help="largest universe the exact oracles accept")
    d.add_argument("--trajectory", action="store_true", help="include the per-step objective")
    d.add_argument("--format", default="json", **fmt)
    d.set_defaults(func=cmd_densest)

    k = sub.add_parser("keywords", help="keywords of a text document")
    k.add_argument("text", nargs="?", default="-", help="file path, or - for stdin")
    k.add_argument("--window", type=int, default=3)
    k.add_argument("--stopwords", action="store_true", help="drop English stopwords")
    k.add_argument("--min-length", type=int, default=1)
    k.add_argument("--format", default="text", **fmt)
    k.set_defaults(func=cmd_keywords)

    c = sub.add_parser("clique-graph", help="export the labeled k-clique graph")
    c.add_argument("graph")
    c.add_argument("--k", type=int, default=3)
    c.add_argument("--format", default="text", **fmt)
    c.set_defaults(func=cmd_clique_graph)

    b = sub.add_parser("bench", help="run a benchmark spec and render the tables")
    b.add_argument("spec", help="JSON benchmark spec")
    b.add_argument("--timeout", type=float, default=None, help="seconds per cell")
    b.add_argument("--format", default="text", **fmt)
    b.set_defaults(func=cmd_bench)

    ds = sub.add_parser("datasets", help="list known datasets and where they are")
    ds.set_defaults(func=cmd_datasets)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (KcgdsError, OSError) as exc:
        print(f"kcgds: error: {exc}", file=sys.stderr)
        return exit_code(exc)


def exit_code(exc: BaseException) -> int:
    if isinstance(exc, PreconditionError):
        return EXIT_PRECONDITION
    if isinstance(exc, ResourceLimitError):
        return EXIT_LIMIT
    return EXIT_INPUT  # InputError, unreadable files


if __name__ == "__main__":
    sys.exit(main())
