#!/usr/bin/env python3
"""Time the compiled kernels against the pure-Python fallback.

Both modules are imported directly, so the comparison does not depend on
which backend ``kcgds`` selected. Outputs are checked for equality first.

    python benchmarks/bench_backends.py [--blocks 4] [--size 40] [--p 0.5]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from kcgds import _pycore
from kcgds.cliquegraph import build_triangle_graph
from kcgds.cliques import list_triangles
from kcgds.graph import Graph

try:
    from kcgds import _core
except ImportError:  # extension not built
    _core = None


def block_graph(blocks: int, size: int, p: float, seed: int = 0) -> Graph:
    """Disjoint G(size, p) blocks joined in a ring by single edges."""
    rng = np.random.default_rng(seed)
    iu = np.triu_indices(size, 1)
    parts = []
    for b in range(blocks):
        keep = rng.random(len(iu[0])) < p
        parts.append(np.stack([iu[0][keep], iu[1][keep]], axis=1) + b * size)
    ring = np.array([[b * size, ((b + 1) % blocks) * size + 1] for b in range(blocks)])
    return Graph.from_edges(blocks * size, np.concatenate(parts + [ring]))


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--blocks", type=int, default=4)
    ap.add_argument("--size", type=int, default=40)
    ap.add_argument("--p", type=float, default=0.5)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _core is None:
        print("compiled extension not built; nothing to compare")
        return 1

    g = block_graph(args.blocks, args.size, args.p)
    tris = list_triangles(g)
    cg = build_triangle_graph(g)
    print(f"graph: n={g.n} m={g.m} triangles={len(tris)} clique-graph edges={cg.edge_count()}")

    cases = {
        "list_triangles": lambda k: k.list_triangles(g.indptr, g.indices),
        "peel_min_degree": lambda k: k.peel_min_degree(g.indptr, g.indices),
        "peel_triangles": lambda k: k.peel_triangles(g.n, tris),
        "peel_clique_graph": lambda k: k.peel_clique_graph(cg.labels, cg.n_labels),
    }
    print(f"{'kernel':<20}{'cython s':>12}{'python s':>12}{'speedup':>10}")
    for name, call in cases.items():
        a, b = call(_core), call(_pycore)
        a = a if isinstance(a, tuple) else (a,)
        b = b if isinstance(b, tuple) else (b,)
        if name == "list_triangles":  # row order is unspecified
            same = np.array_equal(np.unique(a[0], axis=0), np.unique(b[0], axis=0))
        else:
            same = all(np.array_equal(x, y) for x, y in zip(a, b))
        if not same:
            print(f"{name}: outputs differ")
            return 1
        tc = best_of(lambda: call(_core), args.repeat)
        tp = best_of(lambda: call(_pycore), args.repeat)
        print(f"{name:<20}{tc:>12.4f}{tp:>12.4f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
