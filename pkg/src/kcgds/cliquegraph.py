"""Labeled k-clique graphs (triangle graphs for k = 3).

One vertex per k-clique of the base graph; two vertices are adjacent when
their cliques share a (k-1)-subclique, and the edge carries that subclique
as its label. Every vertex owns exactly k labels, its (k-1)-subcliques.

Cliques sharing a label are pairwise adjacent, so a label shared by ``c``
cliques yields ``C(c, 2)`` edges. The default representation stores only
per-label member lists, which answers every label-degree query; the
explicit edge list is materialised on request.
"""
from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations

import numpy as np

from .cliques import DEFAULT_CLIQUE_CAP, list_k_cliques, list_triangles
from .errors import InvalidVertexSetError, ParameterError, UndefinedMetricError
from .graph import Graph


class CliqueGraph:
    __slots__ = ("base", "k", "cliques", "labels", "label_keys", "label_indptr", "label_members")

    def __init__(self, base: Graph, k: int, cliques: np.ndarray, labels: np.ndarray,
                 label_keys: np.ndarray):
        self.base = base
        self.k = k
        self.cliques = cliques
        self.labels = labels
        self.label_keys = label_keys
        flat = labels.ravel()
        order = np.argsort(flat, kind="stable")
        self.label_members = (order // k).astype(np.int64)
        self.label_indptr = np.zeros(len(label_keys) + 1, dtype=np.int64)
        np.cumsum(np.bincount(flat, minlength=len(label_keys)), out=self.label_indptr[1:])

    @property
    def n(self) -> int:
        return len(self.cliques)

    @property
    def n_labels(self) -> int:
        return len(self.label_keys)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"CliqueGraph(k={self.k}, vertices={self.n}, labels={self.n_labels}, edges={self.edge_count()})"

    def members(self, label: int) -> np.ndarray:
        return self.label_members[self.label_indptr[label]:self.label_indptr[label + 1]]

    def label_sizes(self) -> np.ndarray:
        return np.diff(self.label_indptr)

    def edge_count(self) -> int:
        c = self.label_sizes()
        return int(np.sum(c * (c - 1) // 2))

    def mask(self, s=None) -> np.ndarray:
        if s is None:
            return np.ones(self.n, dtype=bool)
        ids = np.fromiter((int(v) for v in s), dtype=np.int64)
        if len(ids) and (ids.min() < 0 or ids.max() >= self.n):
            raise InvalidVertexSetError(f"clique-graph vertex outside 0..{self.n - 1}")
        m = np.zeros(self.n, dtype=bool)
        m[ids] = True
        return m

    def live_counts(self, s=None) -> np.ndarray:
        """Number of members of ``s`` carrying each label."""
        m = self.mask(s)
        return np.bincount(self.labels[m].ravel(), minlength=self.n_labels)

    def label_degree(self, v: int, label: int, s=None) -> int:
        """Edges labeled ``label`` at ``v`` inside ``s`` (implicit form)."""
        m = self.mask(s)
        if not m[v] or label not in self.labels[v]:
            return 0
        return int(np.count_nonzero(m[self.members(label)])) - 1

    def q_values(self, s=None) -> np.ndarray:
        """Minimum label degree of every vertex; entries outside ``s`` are -1."""
        m = self.mask(s)
        counts = np.bincount(self.labels[m].ravel(), minlength=self.n_labels)
        q = np.full(self.n, -1, dtype=np.int64)
        if self.n:
            q[m] = counts[self.labels[m]].min(axis=1) - 1
        return q

    def explicit_edges(self) -> np.ndarray:
        """All edges as ``(u, v, label)`` rows with ``u < v``, sorted."""
        rows = []
        for lab in range(self.n_labels):
            mem = self.members(lab)
            if len(mem) > 1:
                rows.extend((int(a), int(b), lab) for a, b in combinations(sorted(mem.tolist()), 2))
        e = np.array(rows, dtype=np.int64).reshape(-1, 3)
        if len(e):
            e = e[np.lexsort((e[:, 2], e[:, 1], e[:, 0]))]
        return e

    def clique_ids(self, v: int) -> list[int]:
        return self.base.to_original(self.cliques[v])

    def label_ids(self, label: int) -> list[int]:
        return self.base.to_original(self.label_keys[label])

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "vertices": [self.clique_ids(v) for v in range(self.n)],
            "labels": [self.label_ids(lab) for lab in range(self.n_labels)],
            "edges": self.explicit_edges().tolist(),
        }

    def write_edges(self, dest, fmt: str = "text") -> None:
        """Export the explicit form, ``u v label`` per line or as JSON."""
        if fmt == "json":
            dest.write(json.dumps(self.to_json()) + "\n")
            return
        join = lambda ids: ",".join(map(str, ids))  # noqa: E731
        for u, v, lab in self.explicit_edges().tolist():
            dest.write(f"{join(self.clique_ids(u))} {join(self.clique_ids(v))} {join(self.label_ids(lab))}\n")


def _subclique_columns(k: int) -> list[list[int]]:
    # drop the last column first, which lists (k-1)-subsets in lexicographic order
    return [[c for c in range(k) if c != drop] for drop in range(k - 1, -1, -1)]


def clique_graph_from_cliques(g: Graph, cliques: np.ndarray, k: int) -> CliqueGraph:
    cliques = np.asarray(cliques, dtype=np.int64).reshape(-1, k)
    t = len(cliques)
    keys = np.stack([cliques[:, cols] for cols in _subclique_columns(k)], axis=1)
    keys = keys.reshape(t * k, k - 1)
    if k == 3:
        n = max(g.n, 1)
        code = keys[:, 0] * n + keys[:, 1]
        uniq, inverse = np.unique(code, return_inverse=True)
        label_keys = np.stack([uniq // n, uniq % n], axis=1)
    else:
        label_keys, inverse = np.unique(keys, axis=0, return_inverse=True)
        label_keys = label_keys.reshape(-1, k - 1)
    labels = np.asarray(inverse, dtype=np.int64).reshape(t, k)
    return CliqueGraph(g, k, cliques, labels, label_keys.astype(np.int64))


def build_triangle_graph(g: Graph) -> CliqueGraph:
    """Triangle graph of ``g``; labels are the canonical edges of ``g``."""
    return clique_graph_from_cliques(g, list_triangles(g), 3)


def build_k_clique_graph(g: Graph, k: int, cap: int = DEFAULT_CLIQUE_CAP) -> CliqueGraph:
    if k < 3:
        raise ParameterError(f"k must be at least 3, got {k}")
    if k == 3:
        return build_triangle_graph(g)
    return clique_graph_from_cliques(g, list_k_cliques(g, k, cap), k)


def q_value(cg: CliqueGraph, v: int, s) -> int:
    """Smallest label degree of ``v`` within ``s``; labels unused in ``s`` count 0."""
    s = set(int(x) for x in s)
    if int(v) not in s:
        raise InvalidVertexSetError(f"vertex {v} is not in the set")
    return int(cg.q_values(s)[v])


def d_value(cg: CliqueGraph, s) -> int:
    """Sum of q-values over ``s``."""
    q = cg.q_values(s)
    return int(q[q >= 0].sum())


def triangle_graph_density(cg: CliqueGraph, s) -> Fraction:
    """Average q-value over ``s``."""
    m = cg.mask(s)
    size = int(np.count_nonzero(m))
    if size == 0:
        raise UndefinedMetricError("clique-graph density of the empty set")
    return Fraction(d_value(cg, np.flatnonzero(m)), size)


def project(cg: CliqueGraph, s) -> tuple[int, ...]:
    """Base-graph vertices covered by the cliques in ``s``."""
    m = cg.mask(s)
    return tuple(int(v) for v in np.unique(cg.cliques[m]))
