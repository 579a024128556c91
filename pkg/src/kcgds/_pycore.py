"""Pure-Python kernels. Same signatures and outputs as the compiled ``_core``.

Every peeling kernel removes all vertices one at a time, always taking the
smallest key and breaking ties by the smallest id, and reports for each step
the removed vertex plus the running numerator of the objective *before* the
removal.
"""
import heapq

import numpy as np


def list_triangles(indptr, indices):
    """Unordered triangles as an ``(t, 3)`` array, each row increasing.

    Edges are oriented from lower to higher (degree, id) rank, so every
    out-neighbourhood has size O(sqrt(m)).
    """
    indptr = indptr.tolist()
    indices = indices.tolist()
    n = len(indptr) - 1
    deg = [indptr[v + 1] - indptr[v] for v in range(n)]
    out = []
    for u in range(n):
        du = deg[u]
        out.append([w for w in indices[indptr[u]:indptr[u + 1]]
                    if deg[w] > du or (deg[w] == du and w > u)])
    mark = [-1] * n
    tris = []
    for u in range(n):
        ou = out[u]
        for w in ou:
            mark[w] = u
        for v in ou:
            for w in out[v]:
                if mark[w] == u:
                    tris.append(sorted((u, v, w)))
    return np.array(tris, dtype=np.int64).reshape(-1, 3)


def peel_min_degree(indptr, indices):
    indptr = indptr.tolist()
    indices = indices.tolist()
    n = len(indptr) - 1
    deg = [indptr[v + 1] - indptr[v] for v in range(n)]
    edges = sum(deg) // 2
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    alive = [True] * n
    order = np.empty(n, dtype=np.int64)
    before = np.empty(n, dtype=np.int64)
    i = 0
    while heap:
        d, v = heapq.heappop(heap)
        if not alive[v] or d != deg[v]:
            continue
        order[i] = v
        before[i] = edges
        i += 1
        alive[v] = False
        edges -= d
        for w in indices[indptr[v]:indptr[v + 1]]:
            if alive[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return order, before


def peel_triangles(n, tris):
    tris = tris.tolist()
    inc = [[] for _ in range(n)]
    for j, (a, b, c) in enumerate(tris):
        inc[a].append(j)
        inc[b].append(j)
        inc[c].append(j)
    count = [len(x) for x in inc]
    total = len(tris)
    tri_alive = [True] * len(tris)
    heap = [(c, v) for v, c in enumerate(count)]
    heapq.heapify(heap)
    alive = [True] * n
    order = np.empty(n, dtype=np.int64)
    before = np.empty(n, dtype=np.int64)
    i = 0
    while heap:
        c, v = heapq.heappop(heap)
        if not alive[v] or c != count[v]:
            continue
        order[i] = v
        before[i] = total
        i += 1
        alive[v] = False
        total -= c
        for j in inc[v]:
            if not tri_alive[j]:
                continue
            tri_alive[j] = False
            for w in tris[j]:
                if w != v:
                    count[w] -= 1
                    heapq.heappush(heap, (count[w], w))
    return order, before


def peel_clique_graph(labels, nlabels):
    """Peel clique-graph vertices by minimum label degree.

    ``labels[v]`` lists the k label ids of clique ``v``. The label degree of a
    live clique is the number of *other* live cliques carrying that label, so
    only per-label live counts are stored.
    """
    labels = labels.tolist()
    t = len(labels)
    members = [[] for _ in range(nlabels)]
    for v, ls in enumerate(labels):
        for lab in ls:
            members[lab].append(v)
    cnt = [len(x) for x in members]
    q = [min(cnt[lab] for lab in ls) - 1 for ls in labels]
    dsum = sum(q)
    heap = [(qv, v) for v, qv in enumerate(q)]
    heapq.heapify(heap)
    alive = [True] * t
    order = np.empty(t, dtype=np.int64)
    before = np.empty(t, dtype=np.int64)
    i = 0
    while heap:
        qv, v = heapq.heappop(heap)
        if not alive[v] or qv != q[v]:
            continue
        order[i] = v
        before[i] = dsum
        i += 1
        alive[v] = False
        dsum -= qv
        for lab in labels[v]:
            cnt[lab] -= 1
            for w in members[lab]:
                if not alive[w]:
                    continue
                nq = min(cnt[x] for x in labels[w]) - 1
                if nq < q[w]:
                    dsum += nq - q[w]
                    q[w] = nq
                    heapq.heappush(heap, (nq, w))
    return order, before
