"""Triangle and k-clique enumeration.

Cliques are returned as ``(count, k)`` int arrays. Each row is a strictly
increasing vertex tuple and rows are in lexicographic order, so the row
index is a canonical clique id.
"""
from __future__ import annotations

import numpy as np

from ._backend import kernels
from .errors import ParameterError, ResourceLimitError
from .graph import Graph

DEFAULT_CLIQUE_CAP = 10**8


def _lexsorted(rows: np.ndarray) -> np.ndarray:
    if len(rows) == 0:
        return rows
    return rows[np.lexsort(rows.T[::-1])]


def list_triangles(g: Graph) -> np.ndarray:
    """Every triangle of ``g`` exactly once, as sorted ``(a, b, c)`` rows.

    Degree-ordered orientation keeps the work within O(m^1.5).
    """
    tris = kernels.list_triangles(g.indptr, g.indices)
    return _lexsorted(np.asarray(tris, dtype=np.int64).reshape(-1, 3))


def triangle_edges(tri) -> tuple[tuple[int, int], ...]:
    a, b, c = (int(x) for x in tri)
    return ((a, b), (a, c), (b, c))


def edge_triangle_counts(g: Graph, triangles: np.ndarray) -> np.ndarray:
    """Triangle count of every edge, aligned with ``g.edges()``."""
    if len(triangles) == 0:
        return np.zeros(g.m, dtype=np.int64)
    t = triangles
    idx = g.edge_index(
        np.concatenate([t[:, 0], t[:, 0], t[:, 1]]),
        np.concatenate([t[:, 1], t[:, 2], t[:, 2]]),
    )
    return np.bincount(idx, minlength=g.m).astype(np.int64)


def triangle_counts_per_edge(g: Graph, triangles: np.ndarray) -> dict[tuple[int, int], int]:
    """Map each canonical edge ``(u, v)`` to the number of triangles on it.

    Edges in no triangle are present with count 0.
    """
    counts = edge_triangle_counts(g, triangles)
    return {(int(u), int(v)): int(c) for (u, v), c in zip(g.edges(), counts)}


def degeneracy_order(g: Graph) -> np.ndarray:
    """Smallest-last vertex order (repeatedly remove a minimum-degree vertex)."""
    order, _ = kernels.peel_min_degree(g.indptr, g.indices)
    return np.asarray(order)


def list_k_cliques(g: Graph, k: int, cap: int = DEFAULT_CLIQUE_CAP) -> np.ndarray:
    """All k-cliques of ``g``, canonical rows in lexicographic order.

    Each vertex is extended only through later neighbours in a degeneracy
    order, so every clique is produced once. Raises ``ResourceLimitError``
    when more than ``cap`` cliques would be produced.
    """
    if k < 3:
        raise ParameterError(f"k must be at least 3, got {k}")
    if k == 3:
        tris = list_triangles(g)
        if len(tris) > cap:
            raise ResourceLimitError(f"more than {cap} cliques of order 3", cap)
        return tris
    rank = np.empty(g.n, dtype=np.int64)
    rank[degeneracy_order(g)] = np.arange(g.n)
    later = [
        {int(w) for w in g.neighbors(v) if rank[w] > rank[v]} for v in range(g.n)
    ]
    found: list[tuple[int, ...]] = []

    def extend(clique: list[int], cand: set[int]) -> None:
        if len(clique) == k:
            if len(found) >= cap:
                raise ResourceLimitError(f"more than {cap} cliques of order {k}", cap)
            found.append(tuple(sorted(clique)))
            return
        if len(clique) + len(cand) < k:
            return
        for w in cand:
            clique.append(w)
            extend(clique, cand & later[w])
            clique.pop()

    for v in range(g.n):
        extend([v], later[v])
    rows = np.array(found, dtype=np.int64).reshape(-1, k)
    return _lexsorted(rows)
