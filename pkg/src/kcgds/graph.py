"""Simple undirected graphs, edge-list I/O, induced subgraphs and density metrics.

Vertices are compacted to ``0..n-1`` on load; ``Graph.labels`` keeps the
original id of every compact vertex so reports can be translated back.
Edges are identified by their canonical endpoint pair ``(min, max)``.
"""
from __future__ import annotations

import io
import os
from fractions import Fraction
from math import comb
from typing import IO, Iterable, Sequence

import numpy as np

from .errors import (
    EmptyGraphError,
    GraphFormatError,
    InvalidVertexSetError,
    ParameterError,
    UndefinedMetricError,
)

_COMMENT_PREFIXES = ("#", "%")


class Graph:
    """Immutable simple undirected graph in CSR form.

    ``indptr``/``indices`` hold the symmetric adjacency with every list
    strictly increasing. ``labels[v]`` is the original id of vertex ``v``.
    """

    __slots__ = ("indptr", "indices", "labels", "_edges")

    def __init__(self, indptr, indices, labels=None):
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        n = len(self.indptr) - 1
        if labels is None:
            labels = np.arange(n, dtype=np.int64)
        self.labels = np.asarray(labels, dtype=np.int64)
        self._edges = None
        for arr in (self.indptr, self.indices, self.labels):
            arr.setflags(write=False)

    @classmethod
    def from_edges(cls, n: int, edges, labels=None) -> "Graph":
        """Build a graph on ``n`` vertices, simplifying ``edges`` on the way.

        Self-loops are dropped and duplicate or reversed pairs are merged.
        """
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if len(e) and (e.min() < 0 or e.max() >= n):
            raise InvalidVertexSetError(f"edge endpoint outside 0..{n - 1}")
        e = e[e[:, 0] != e[:, 1]]
        lo = np.minimum(e[:, 0], e[:, 1])
        hi = np.maximum(e[:, 0], e[:, 1])
        code = np.unique(lo * max(n, 1) + hi)
        lo, hi = code // max(n, 1), code % max(n, 1)
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(indptr, dst, labels)

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < len(nb) and nb[i] == v)

    def edges(self) -> np.ndarray:
        """All edges as an ``(m, 2)`` array of canonical pairs, sorted."""
        if self._edges is None:
            src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())
            keep = src < self.indices
            e = np.stack([src[keep], self.indices[keep]], axis=1)
            e.setflags(write=False)
            self._edges = e
        return self._edges

    def edge_index(self, u, v):
        """Row of ``edges()`` holding the canonical pair of ``(u, v)``.

        Works elementwise on arrays. Missing edges raise ``KeyError``.
        """
        u, v = np.minimum(u, v), np.maximum(u, v)
        e = self.edges()
        code = e[:, 0] * self.n + e[:, 1]
        want = np.asarray(u, dtype=np.int64) * self.n + np.asarray(v, dtype=np.int64)
        if len(code) == 0:
            raise KeyError("graph has no edges")
        idx = np.searchsorted(code, want)
        if not np.all(code[np.minimum(idx, len(code) - 1)] == want):
            raise KeyError("not an edge")
        return idx

    def to_original(self, vertices: Iterable[int]) -> list[int]:
        return [int(self.labels[v]) for v in vertices]


def _open_text(source) -> IO[str]:
    if isinstance(source, (str, os.PathLike)):
        return open(source, "r", encoding="utf-8", errors="replace")
    if isinstance(source, (bytes, bytearray)):
        return io.StringIO(source.decode("utf-8", errors="replace"))
    if isinstance(source, io.TextIOBase):
        return source
    return io.TextIOWrapper(source, encoding="utf-8", errors="replace")


def load_edge_list(source, directed: bool = False) -> Graph:
    """Read a whitespace-separated edge list (SNAP/UCI/KONECT style).

    ``source`` is a path, raw bytes, or a binary or text stream. Lines starting
    with ``#`` or ``%`` are comments and a third (weight) column is ignored.
    Directions are always dropped; ``directed`` only records that reciprocal
    pairs are expected and changes nothing in the result.
    """
    ids: dict[int, int] = {}
    src: list[int] = []
    dst: list[int] = []
    fh = _open_text(source)
    try:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith(_COMMENT_PREFIXES):
                continue
            parts = line.split()
            if len(parts) < 2:
                raise GraphFormatError(f"expected two vertex ids, got {line!r}", lineno)
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphFormatError(f"non-integer vertex id in {line!r}", lineno) from None
            src.append(ids.setdefault(a, len(ids)))
            dst.append(ids.setdefault(b, len(ids)))
    finally:
        if fh is not source:
            fh.close()
    if not ids:
        raise EmptyGraphError("edge list contains no edges")
    labels = np.fromiter(ids.keys(), dtype=np.int64, count=len(ids))
    return Graph.from_edges(len(ids), np.stack([src, dst], axis=1), labels)


def write_edge_list(g: Graph, dest, original_ids: bool = True) -> None:
    """Write one ``u v`` line per edge in canonical sorted order."""
    e = g.edges()
    if original_ids:
        e = g.labels[e]
        e = np.sort(e, axis=1)
        e = e[np.lexsort((e[:, 1], e[:, 0]))]
    text = "".join(f"{u} {v}\n" for u, v in e.tolist())
    if isinstance(dest, (str, os.PathLike)):
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        dest.write(text)


def _as_members(g: Graph, s) -> np.ndarray:
    members = np.unique(np.fromiter((int(v) for v in s), dtype=np.int64))
    if len(members) and (members[0] < 0 or members[-1] >= g.n):
        raise InvalidVertexSetError(f"vertex id outside 0..{g.n - 1}")
    return members


def induced_subgraph(g: Graph, s) -> Graph:
    """The subgraph on ``s`` with every edge of ``g`` inside ``s``.

    Vertices are renumbered in increasing order of their id in ``g`` and keep
    their original labels.
    """
    members = _as_members(g, s)
    remap = np.full(g.n, -1, dtype=np.int64)
    remap[members] = np.arange(len(members))
    e = g.edges()
    a, b = remap[e[:, 0]], remap[e[:, 1]]
    keep = (a >= 0) & (b >= 0)
    return Graph.from_edges(len(members), np.stack([a[keep], b[keep]], axis=1), g.labels[members])


def edge_count(g: Graph, s) -> int:
    members = _as_members(g, s)
    mask = np.zeros(g.n, dtype=bool)
    mask[members] = True
    e = g.edges()
    return int(np.count_nonzero(mask[e[:, 0]] & mask[e[:, 1]]))


def triangle_count(g: Graph, s=None) -> int:
    from .cliques import list_triangles

    sub = g if s is None else induced_subgraph(g, s)
    return len(list_triangles(sub))


def density_delta(g: Graph, s) -> Fraction:
    """Fraction of vertex pairs of ``s`` joined by an edge."""
    members = _as_members(g, s)
    if len(members) < 2:
        raise UndefinedMetricError("edge density needs at least 2 vertices")
    return Fraction(edge_count(g, members), comb(len(members), 2))


def density_tau(g: Graph, s) -> Fraction:
    """Fraction of vertex triples of ``s`` forming a triangle."""
    members = _as_members(g, s)
    if len(members) < 3:
        raise UndefinedMetricError("triangle density needs at least 3 vertices")
    return Fraction(triangle_count(g, members), comb(len(members), 3))


def degree_density(g: Graph, s) -> Fraction:
    members = _as_members(g, s)
    if len(members) == 0:
        raise UndefinedMetricError("degree density of the empty set")
    return Fraction(2 * edge_count(g, members), len(members))


def triangle_density(g: Graph, s) -> Fraction:
    members = _as_members(g, s)
    if len(members) == 0:
        raise UndefinedMetricError("triangle density of the empty set")
    return Fraction(triangle_count(g, members), len(members))


def check_alpha(alpha) -> Fraction:
    a = Fraction(alpha)
    if not 0 < a < 1:
        raise ParameterError(f"alpha must lie in (0, 1), got {alpha}")
    return a


def oqc_objective(g: Graph, s, alpha=Fraction(1, 3)) -> Fraction:
    """Edge surplus ``|E(S)| - alpha * C(|S|, 2)``."""
    a = check_alpha(alpha)
    members = _as_members(g, s)
    if len(members) == 0:
        raise UndefinedMetricError("quasi-clique objective of the empty set")
    return edge_count(g, members) - a * comb(len(members), 2)


def complete_graph(n: int) -> Graph:
    iu = np.triu_indices(n, 1)
    return Graph.from_edges(n, np.stack(iu, axis=1))


def graph_from_pairs(pairs: Sequence[tuple[int, int]]) -> Graph:
    """Convenience constructor using first-appearance compaction of ``pairs``."""
    text = "".join(f"{u} {v}\n" for u, v in pairs)
    return load_edge_list(text.encode())
