"""Dense subgraph extraction: greedy peeling algorithms and exact oracles.

All greedy routines peel one vertex at a time (smallest score first, ties by
smallest id) down to the empty set and return the best prefix. Among prefixes
with the same objective value the larger one wins.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import NamedTuple

import numpy as np

from ._backend import kernels
from .cliquegraph import CliqueGraph, build_k_clique_graph, project, q_value, triangle_graph_density
from .cliques import DEFAULT_CLIQUE_CAP, list_triangles
from .errors import (
    EmptyGraphError,
    NoCliquesError,
    NoTrianglesError,
    ParameterError,
    ResourceLimitError,
)
from .graph import Graph, check_alpha

OBJECTIVES = ("ds", "tds", "oqc", "tgds", "kgds")
OBJECTIVE_NAMES = {"ds": "degree_density", "tds": "triangle_density", "oqc": "oqc",
                   "tgds": "tgds", "kgds": "kgds"}
DEFAULT_EXACT_LIMIT = 25
DEFAULT_ENUM_LIMIT = 20


class Step(NamedTuple):
    iteration: int
    removed: int
    objective: Fraction  # value of the set the vertex is removed from


@dataclass(frozen=True)
class PeelingResult:
    selected: tuple[int, ...]
    objective_value: Fraction
    objective_name: str
    params: dict = field(default_factory=dict)
    trajectory: tuple[Step, ...] | None = None
    witness: tuple[int, ...] | None = None
    elapsed: float = field(default=0.0, compare=False)

    @property
    def size(self) -> int:
        return len(self.selected)


def _best_prefix(approx: np.ndarray, exact) -> int:
    """First index with the exact maximum; ``approx`` only narrows the search."""
    top = float(np.max(approx))
    cand = np.flatnonzero(approx >= top - 1e-9 * max(1.0, abs(top)))
    best_i, best_v = int(cand[0]), exact(int(cand[0]))
    for i in cand[1:]:
        v = exact(int(i))
        if v > best_v:
            best_i, best_v = int(i), v
    return best_i


def _trajectory(order, value_at) -> tuple[Step, ...]:
    return tuple(Step(i, int(v), value_at(i)) for i, v in enumerate(order))


def peel_clique_graph(cg: CliqueGraph, trajectory: bool = False, name: str = "tgds") -> PeelingResult:
    """Greedy peeling on a prebuilt clique graph by minimum q-value."""
    start = time.perf_counter()
    if cg.n == 0:
        if cg.k == 3:
            raise NoTrianglesError("graph has no triangles")
        raise NoCliquesError(f"graph has no cliques of order {cg.k}")
    order, dsum = kernels.peel_clique_graph(cg.labels, cg.n_labels)
    order, dsum = np.asarray(order), np.asarray(dsum)
    sizes = cg.n - np.arange(cg.n)
    value_at = lambda i: Fraction(int(dsum[i]), int(sizes[i]))  # noqa: E731
    i = _best_prefix(dsum / sizes, value_at)
    witness = tuple(sorted(int(v) for v in order[i:]))
    return PeelingResult(
        selected=project(cg, witness),
        objective_value=value_at(i),
        objective_name=name,
        params={"k": cg.k},
        trajectory=_trajectory(order, value_at) if trajectory else None,
        witness=witness,
        elapsed=time.perf_counter() - start,
    )


def greedy_kgds(g: Graph, k: int = 3, trajectory: bool = False,
                cap: int = DEFAULT_CLIQUE_CAP) -> PeelingResult:
    """Greedy k-clique-graph densest subgraph.

    Builds the k-clique graph, repeatedly drops the clique whose smallest
    label degree is lowest and keeps the prefix with the highest average
    q-value. Selected vertices are the projection onto ``g``.
    """
    start = time.perf_counter()
    cg = build_k_clique_graph(g, k, cap)
    res = peel_clique_graph(cg, trajectory, name="tgds" if k == 3 else "kgds")
    return _with_elapsed(res, start)


def greedy_tgds(g: Graph, trajectory: bool = False) -> PeelingResult:
    return greedy_kgds(g, 3, trajectory)


def _with_elapsed(res: PeelingResult, start: float) -> PeelingResult:
    object.__setattr__(res, "elapsed", time.perf_counter() - start)
    return res


def _peel_degrees(g: Graph):
    if g.n == 0:
        raise EmptyGraphError("graph has no vertices")
    order, edges = kernels.peel_min_degree(g.indptr, g.indices)
    return np.asarray(order), np.asarray(edges), g.n - np.arange(g.n)


def greedy_ds(g: Graph, trajectory: bool = False) -> PeelingResult:
    """Min-degree peeling for the densest subgraph (average degree)."""
    start = time.perf_counter()
    order, edges, sizes = _peel_degrees(g)
    value_at = lambda i: Fraction(2 * int(edges[i]), int(sizes[i]))  # noqa: E731
    i = _best_prefix(edges / sizes, value_at)
    return PeelingResult(
        selected=tuple(sorted(int(v) for v in order[i:])),
        objective_value=value_at(i),
        objective_name=OBJECTIVE_NAMES["ds"],
        trajectory=_trajectory(order, value_at) if trajectory else None,
        elapsed=time.perf_counter() - start,
    )


def greedy_oqc(g: Graph, alpha=Fraction(1, 3), trajectory: bool = False) -> PeelingResult:
    """Min-degree peeling scored by the edge surplus ``|E(S)| - alpha C(|S|,2)``."""
    start = time.perf_counter()
    a = check_alpha(alpha)
    order, edges, sizes = _peel_degrees(g)
    value_at = lambda i: int(edges[i]) - a * comb(int(sizes[i]), 2)  # noqa: E731
    approx = edges - float(a) * sizes * (sizes - 1) / 2
    i = _best_prefix(approx, value_at)
    return PeelingResult(
        selected=tuple(sorted(int(v) for v in order[i:])),
        objective_value=value_at(i),
        objective_name="oqc",
        params={"alpha": str(a)},
        trajectory=_trajectory(order, value_at) if trajectory else None,
        elapsed=time.perf_counter() - start,
    )


def greedy_tds(g: Graph, trajectory: bool = False) -> PeelingResult:
    """Peel the vertex in the fewest live triangles; keep the best t(S)/|S|."""
    start = time.perf_counter()
    tris = list_triangles(g)
    if len(tris) == 0:
        raise NoTrianglesError("graph has no triangles")
    order, tcount = kernels.peel_triangles(g.n, tris)
    order, tcount = np.asarray(order), np.asarray(tcount)
    sizes = g.n - np.arange(g.n)
    value_at = lambda i: Fraction(int(tcount[i]), int(sizes[i]))  # noqa: E731
    i = _best_prefix(tcount / sizes, value_at)
    return PeelingResult(
        selected=tuple(sorted(int(v) for v in order[i:])),
        objective_value=value_at(i),
        objective_name=OBJECTIVE_NAMES["tds"],
        trajectory=_trajectory(order, value_at) if trajectory else None,
        elapsed=time.perf_counter() - start,
    )


def run_greedy(g: Graph, method: str, k: int = 3, alpha=Fraction(1, 3),
               trajectory: bool = False) -> PeelingResult:
    if method == "ds":
        return greedy_ds(g, trajectory)
    if method == "tds":
        return greedy_tds(g, trajectory)
    if method == "oqc":
        return greedy_oqc(g, alpha, trajectory)
    if method == "tgds":
        return greedy_tgds(g, trajectory)
    if method == "kgds":
        return greedy_kgds(g, k, trajectory)
    raise ParameterError(f"unknown method {method!r}")


# -- exact search -----------------------------------------------------------
#
# Each objective is written as combine(sum of per-vertex scores, |S|) where the
# score of a vertex can only drop when the set shrinks (label degree, degree,
# triangle count). For I <= S <= C this bounds value(S) by the best combination
# of the scores measured in C.


class _Problem:
    def __init__(self, universe: int, scores, combine):
        self.universe = universe
        self.scores = scores      # mask -> {vertex: score} over members of mask
        self.combine = combine    # (score sum, size) -> Fraction


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _adjacency_masks(g: Graph) -> list[int]:
    masks = []
    for v in range(g.n):
        m = 0
        for w in g.neighbors(v).tolist():
            m |= 1 << w
        masks.append(m)
    return masks


def _problem(g: Graph, objective: str, alpha, k: int, limit: int):
    """Return (problem, clique graph or None)."""
    if objective in ("ds", "oqc", "tds"):
        if g.n > limit:
            raise ResourceLimitError(f"graph has {g.n} vertices, exact limit is {limit}", limit)
        if g.n == 0:
            raise EmptyGraphError("graph has no vertices")
    if objective in ("ds", "oqc"):
        adj = _adjacency_masks(g)

        def scores(mask):
            return {v: (mask & adj[v]).bit_count() for v in _bits(mask)}

        if objective == "ds":
            return _Problem(g.n, scores, lambda s, n: Fraction(s, n)), None
        a = check_alpha(alpha)
        return _Problem(g.n, scores, lambda s, n: Fraction(s, 2) - a * comb(n, 2)), None
    if objective == "tds":
        tris = list_triangles(g)
        if len(tris) == 0:
            raise NoTrianglesError("graph has no triangles")
        tmasks = [(1 << a) | (1 << b) | (1 << c) for a, b, c in tris.tolist()]
        tverts = tris.tolist()

        def scores(mask):
            out = dict.fromkeys(_bits(mask), 0)
            for tm, vs in zip(tmasks, tverts):
                if tm & mask == tm:
                    for v in vs:
                        out[v] += 1
            return out

        return _Problem(g.n, scores, lambda s, n: Fraction(s, 3 * n)), None
    if objective in ("tgds", "kgds"):
        cg = build_k_clique_graph(g, 3 if objective == "tgds" else k)
        if cg.n == 0:
            raise NoTrianglesError("graph has no triangles") if cg.k == 3 else NoCliquesError(
                f"graph has no cliques of order {cg.k}")
        if cg.n > limit:
            raise ResourceLimitError(f"clique graph has {cg.n} vertices, exact limit is {limit}", limit)
        lmasks = [0] * cg.n_labels
        for v, ls in enumerate(cg.labels.tolist()):
            for lab in ls:
                lmasks[lab] |= 1 << v
        vlabels = cg.labels.tolist()

        def scores(mask):
            cnt = [(lm & mask).bit_count() for lm in lmasks]
            return {v: min(cnt[lab] for lab in vlabels[v]) - 1 for v in _bits(mask)}

        return _Problem(cg.n, scores, lambda s, n: Fraction(s, n)), cg
    raise ParameterError(f"unknown objective {objective!r}")


def _better(val, members, best) -> bool:
    if best is None:
        return True
    bval, bmembers = best
    if val != bval:
        return val > bval
    if len(members) != len(bmembers):
        return len(members) > len(bmembers)
    return members < bmembers


def _branch_and_bound(p: _Problem):
    best = None  # (value, sorted member tuple)

    def bound(inc: int, sc: dict, size_c: int):
        s_in = sum(sc[v] for v in _bits(inc))
        n_in = inc.bit_count()
        rest = sorted((sc[v] for v in sc if not inc >> v & 1), reverse=True)
        ub = None
        acc = s_in
        if n_in:
            ub = p.combine(acc, n_in)
        for j, r in enumerate(rest, 1):
            acc += r
            val = p.combine(acc, n_in + j)
            if ub is None or val > ub:
                ub = val
        return ub

    def visit(inc: int, cand: int, sc: dict):
        nonlocal best
        size_c = cand.bit_count()
        if cand == inc:
            return
        ub = bound(inc, sc, size_c)
        if best is not None and (ub < best[0] or (ub == best[0] and size_c <= len(best[1]))):
            return
        free = [v for v in sc if not inc >> v & 1]
        v = min(free, key=lambda x: (sc[x], x))
        smaller = cand & ~(1 << v)
        if smaller:
            sc2 = p.scores(smaller)
            members = tuple(sorted(sc2))
            val = p.combine(sum(sc2.values()), len(members))
            if _better(val, members, best):
                best = (val, members)
            visit(inc, smaller, sc2)
        visit(inc | (1 << v), cand, sc)

    full = (1 << p.universe) - 1
    sc = p.scores(full)
    best = (p.combine(sum(sc.values()), p.universe), tuple(range(p.universe)))
    visit(0, full, sc)
    return best


def exact_oracle(g: Graph, objective: str = "tgds", limit: int = DEFAULT_EXACT_LIMIT,
                 alpha=Fraction(1, 3), k: int = 3) -> PeelingResult:
    """Global maximiser by branch and bound over vertex subsets.

    For ``tgds``/``kgds`` the search runs over clique-graph vertices and the
    result is projected. Ties go to the larger set, then the lexicographically
    smallest one. Instances above ``limit`` raise ``ResourceLimitError``.
    """
    start = time.perf_counter()
    p, cg = _problem(g, objective, alpha, k, limit)
    value, members = _branch_and_bound(p)
    return _exact_result(objective, value, members, cg, alpha, k, start)


def _exact_result(objective, value, members, cg, alpha, k, start) -> PeelingResult:
    params = {}
    if objective == "oqc":
        params["alpha"] = str(Fraction(alpha))
    name = OBJECTIVE_NAMES[objective]
    if cg is not None:
        params["k"] = cg.k
        name = "tgds" if cg.k == 3 else "kgds"
        return PeelingResult(project(cg, members), value, name, params, None,
                             tuple(members), time.perf_counter() - start)
    return PeelingResult(tuple(members), value, name, params, None, None,
                         time.perf_counter() - start)


def enumerate_exact(g: Graph, objective: str = "tgds", limit: int = DEFAULT_ENUM_LIMIT,
                    alpha=Fraction(1, 3), k: int = 3) -> PeelingResult:
    """Exhaustive maximiser over all nonempty subsets, with no pruning.

    Vectorised over subset bitmasks; only practical for universes of about
    20 elements. Same tie rule as ``exact_oracle``.
    """
    start = time.perf_counter()
    cg = None
    if objective in ("tgds", "kgds"):
        cg = build_k_clique_graph(g, 3 if objective == "tgds" else k)
        universe = cg.n
        if universe == 0:
            if cg.k == 3:
                raise NoTrianglesError("graph has no triangles")
            raise NoCliquesError(f"graph has no cliques of order {cg.k}")
    else:
        universe = g.n
        if universe == 0:
            raise EmptyGraphError("graph has no vertices")
    if universe > limit:
        raise ResourceLimitError(f"{universe} elements exceed enumeration limit {limit}", limit)
    masks = np.arange(1, 1 << universe, dtype=np.int64)
    size = np.bitwise_count(masks).astype(np.int64)

    def has(v):
        return (masks >> v) & 1

    if objective in ("tgds", "kgds"):
        lmask = np.zeros(cg.n_labels, dtype=np.int64)
        for v, ls in enumerate(cg.labels.tolist()):
            for lab in ls:
                lmask[lab] |= 1 << v
        num = np.zeros(len(masks), dtype=np.int64)
        for v, ls in enumerate(cg.labels.tolist()):
            q = np.min([np.bitwise_count(masks & lmask[lab]).astype(np.int64) for lab in ls], axis=0) - 1
            num += np.where(has(v) == 1, q, 0)
        den = size
    elif objective in ("ds", "oqc"):
        e = np.zeros(len(masks), dtype=np.int64)
        for u, v in g.edges().tolist():
            e += has(u) & has(v)
        if objective == "ds":
            num, den = 2 * e, size
        else:
            a = check_alpha(alpha)
            num = 2 * a.denominator * e - a.numerator * size * (size - 1)
            den = np.full(len(masks), 2 * a.denominator, dtype=np.int64)
    elif objective == "tds":
        tris = list_triangles(g)
        if len(tris) == 0:
            raise NoTrianglesError("graph has no triangles")
        t = np.zeros(len(masks), dtype=np.int64)
        for a_, b_, c_ in tris.tolist():
            t += has(a_) & has(b_) & has(c_)
        num, den = t, size
    else:
        raise ParameterError(f"unknown objective {objective!r}")

    approx = num / den
    top = approx.max()
    cand = np.flatnonzero(approx >= top - 1e-9 * max(1.0, abs(top)))
    vals = [Fraction(int(num[i]), int(den[i])) for i in cand]
    best_val = max(vals)
    ties = [int(masks[i]) for i, v in zip(cand, vals) if v == best_val]
    members = min((tuple(_bits(m)) for m in ties), key=lambda t: (-len(t), t))
    return _exact_result(objective, best_val, members, cg, alpha, k, start)


# -- approximation bound ----------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    greedy_value: Fraction
    optimum: Fraction
    optimal_size: int
    kept_size: int          # |S_I|: set just before the first optimal vertex goes
    first_removed: int | None
    first_removed_q: int
    bound: Fraction
    kept_value: Fraction
    holds: bool
    degenerate: bool = False


def verify_theorem1(g: Graph, limit: int = DEFAULT_EXACT_LIMIT) -> BoundReport:
    """Check the greedy triangle-graph guarantee against the exact optimum.

    Replays the peeling order to find the last set still containing the whole
    optimum and the optimal vertex removed from it, then tests
    ``f(greedy) >= r f* + (1 - r) q(u)`` with ``r = |S*| / |S_I|``.
    """
    cg = build_k_clique_graph(g, 3)
    greedy = peel_clique_graph(cg, trajectory=True)
    opt = exact_oracle(g, "tgds", limit)
    star = set(opt.witness)
    order = [step.removed for step in greedy.trajectory]
    first = next((i for i, v in enumerate(order) if v in star), None)
    if first is None:
        return BoundReport(greedy.objective_value, opt.objective_value, len(star), len(star),
                           None, 0, opt.objective_value, opt.objective_value,
                           greedy.objective_value >= opt.objective_value, degenerate=True)
    kept = order[first:]
    u = order[first]
    qu = q_value(cg, u, kept)
    r = Fraction(len(star), len(kept))
    bound = r * opt.objective_value + (1 - r) * qu
    kept_value = triangle_graph_density(cg, kept)
    return BoundReport(
        greedy_value=greedy.objective_value,
        optimum=opt.objective_value,
        optimal_size=len(star),
        kept_size=len(kept),
        first_removed=u,
        first_removed_q=qu,
        bound=bound,
        kept_value=kept_value,
        holds=greedy.objective_value >= bound and kept_value >= bound,
    )
