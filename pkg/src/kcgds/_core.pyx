# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled kernels. Mirrors ``_pycore`` exactly, including tie-breaking."""
import numpy as np
cimport numpy as cnp
from libcpp.vector cimport vector
from libcpp.queue cimport priority_queue
from libcpp.pair cimport pair

ctypedef long long i64
# max-heap on negated (key, id) pops the smallest key, then the smallest id
ctypedef pair[i64, i64] entry

cnp.import_array()


def list_triangles(const i64[::1] indptr, const i64[::1] indices):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t u, v, w, j, jj
    cdef i64 du, dw
    cdef i64[::1] deg = np.diff(np.asarray(indptr))
    # forward adjacency: neighbours of higher (degree, id) rank
    cdef i64[::1] optr = np.zeros(n + 1, dtype=np.int64)
    for u in range(n):
        du = deg[u]
        optr[u + 1] = optr[u]
        for j in range(indptr[u], indptr[u + 1]):
            w = indices[j]
            dw = deg[w]
            if dw > du or (dw == du and w > u):
                optr[u + 1] += 1
    cdef i64[::1] oidx = np.empty(optr[n], dtype=np.int64)
    cdef Py_ssize_t pos
    for u in range(n):
        du = deg[u]
        pos = optr[u]
        for j in range(indptr[u], indptr[u + 1]):
            w = indices[j]
            dw = deg[w]
            if dw > du or (dw == du and w > u):
                oidx[pos] = w
                pos += 1
    cdef i64[::1] mark = np.full(n, -1, dtype=np.int64)
    cdef vector[i64] out
    cdef i64 a, b, c, tmp
    for u in range(n):
        for j in range(optr[u], optr[u + 1]):
            mark[oidx[j]] = u
        for j in range(optr[u], optr[u + 1]):
            v = oidx[j]
            for jj in range(optr[v], optr[v + 1]):
                w = oidx[jj]
                if mark[w] == u:
                    a, b, c = u, v, w
                    if a > b:
                        tmp = a; a = b; b = tmp
                    if b > c:
                        tmp = b; b = c; c = tmp
                    if a > b:
                        tmp = a; a = b; b = tmp
                    out.push_back(a)
                    out.push_back(b)
                    out.push_back(c)
    cdef Py_ssize_t size = out.size()
    res = np.empty(size, dtype=np.int64)
    cdef i64[::1] rv = res
    for j in range(size):
        rv[j] = out[j]
    return res.reshape(-1, 3)


def peel_min_degree(const i64[::1] indptr, const i64[::1] indices):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef i64[::1] deg = np.diff(np.asarray(indptr))
    cdef i64 edges = indices.shape[0] // 2
    cdef cnp.uint8_t[::1] alive = np.ones(n, dtype=np.uint8)
    order_a = np.empty(n, dtype=np.int64)
    before_a = np.empty(n, dtype=np.int64)
    cdef i64[::1] order = order_a
    cdef i64[::1] before = before_a
    cdef priority_queue[i64] heap  # packed -(deg * n + id), deg < n
    cdef Py_ssize_t v, w, j, i = 0
    cdef i64 d, key
    for v in range(n):
        heap.push(-(deg[v] * n + v))
    while not heap.empty():
        key = -heap.top()
        heap.pop()
        d = key // n
        v = key % n
        if not alive[v] or d != deg[v]:
            continue
        order[i] = v
        before[i] = edges
        i += 1
        alive[v] = 0
        edges -= d
        for j in range(indptr[v], indptr[v + 1]):
            w = indices[j]
            if alive[w]:
                deg[w] -= 1
                heap.push(-(deg[w] * n + w))
    return order_a, before_a


def peel_triangles(Py_ssize_t n, tris_in):
    cdef const i64[:, ::1] tris = np.ascontiguousarray(tris_in, dtype=np.int64)
    cdef Py_ssize_t t = tris.shape[0]
    cdef Py_ssize_t v, w, j, jj, r, i = 0
    cdef i64[::1] count = np.zeros(n, dtype=np.int64)
    for j in range(t):
        for r in range(3):
            count[tris[j, r]] += 1
    cdef i64[::1] iptr = np.zeros(n + 1, dtype=np.int64)
    for v in range(n):
        iptr[v + 1] = iptr[v] + count[v]
    cdef i64[::1] fill = np.array(iptr[:n], dtype=np.int64)
    cdef i64[::1] inc = np.empty(3 * t, dtype=np.int64)
    for j in range(t):
        for r in range(3):
            v = tris[j, r]
            inc[fill[v]] = j
            fill[v] += 1
    cdef cnp.uint8_t[::1] tri_alive = np.ones(t, dtype=np.uint8)
    cdef cnp.uint8_t[::1] alive = np.ones(n, dtype=np.uint8)
    order_a = np.empty(n, dtype=np.int64)
    before_a = np.empty(n, dtype=np.int64)
    cdef i64[::1] order = order_a
    cdef i64[::1] before = before_a
    cdef i64 total = t, c
    # triangle counts can reach n**2, so keys stay as (count, id) pairs
    cdef priority_queue[entry] heap
    cdef entry top
    for v in range(n):
        heap.push(entry(-count[v], -v))
    while not heap.empty():
        top = heap.top()
        heap.pop()
        c = -top.first
        v = -top.second
        if not alive[v] or c != count[v]:
            continue
        order[i] = v
        before[i] = total
        i += 1
        alive[v] = 0
        total -= c
        for jj in range(iptr[v], iptr[v + 1]):
            j = inc[jj]
            if not tri_alive[j]:
                continue
            tri_alive[j] = 0
            for r in range(3):
                w = tris[j, r]
                if w != v:
                    count[w] -= 1
                    heap.push(entry(-count[w], -w))
    return order_a, before_a


def peel_clique_graph(labels_in, Py_ssize_t nlabels):
    cdef const i64[:, ::1] labels = np.ascontiguousarray(labels_in, dtype=np.int64)
    cdef Py_ssize_t t = labels.shape[0]
    cdef Py_ssize_t k = labels.shape[1] if labels.ndim == 2 else 0
    cdef Py_ssize_t v, w, j, jj, r, lab, i = 0
    cdef i64[::1] cnt = np.zeros(nlabels, dtype=np.int64)
    for v in range(t):
        for r in range(k):
            cnt[labels[v, r]] += 1
    cdef i64[::1] lptr = np.zeros(nlabels + 1, dtype=np.int64)
    for lab in range(nlabels):
        lptr[lab + 1] = lptr[lab] + cnt[lab]
    cdef i64[::1] fill = np.array(lptr[:nlabels], dtype=np.int64)
    cdef i64[::1] members = np.empty(t * k, dtype=np.int64)
    for v in range(t):
        for r in range(k):
            lab = labels[v, r]
            members[fill[lab]] = v
            fill[lab] += 1
    cdef i64[::1] q = np.empty(t, dtype=np.int64)
    cdef i64 dsum = 0, qv, nq
    for v in range(t):
        qv = cnt[labels[v, 0]]
        for r in range(1, k):
            if cnt[labels[v, r]] < qv:
                qv = cnt[labels[v, r]]
        q[v] = qv - 1
        dsum += qv - 1
    cdef cnp.uint8_t[::1] alive = np.ones(t, dtype=np.uint8)
    order_a = np.empty(t, dtype=np.int64)
    before_a = np.empty(t, dtype=np.int64)
    cdef i64[::1] order = order_a
    cdef i64[::1] before = before_a
    # q < t, so (q, id) packs into one int64 ordered the same way
    cdef priority_queue[i64] heap
    cdef i64 key
    for v in range(t):
        heap.push(-(q[v] * t + v))
    while not heap.empty():
        key = -heap.top()
        heap.pop()
        qv = key // t
        v = key % t
        if not alive[v] or qv != q[v]:
            continue
        order[i] = v
        before[i] = dsum
        i += 1
        alive[v] = 0
        dsum -= qv
        for r in range(k):
            lab = labels[v, r]
            cnt[lab] -= 1
            for jj in range(lptr[lab], lptr[lab + 1]):
                w = members[jj]
                if not alive[w]:
                    continue
                nq = cnt[labels[w, 0]]
                for j in range(1, k):
                    if cnt[labels[w, j]] < nq:
                        nq = cnt[labels[w, j]]
                nq -= 1
                if nq < q[w]:
                    dsum += nq - q[w]
                    q[w] = nq
                    heap.push(-(nq * t + w))
    return order_a, before_a
