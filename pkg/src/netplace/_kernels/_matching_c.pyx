# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled Hopcroft-Karp maximum bipartite matching.

Step-for-step transliteration of ``_matching_py.hopcroft_karp``; both
kernels must keep identical vertex and edge orderings so they return the
same canonical matching.
"""

import numpy as np


def hopcroft_karp(int n_left, int n_right, object indptr_arr, object indices_arr):
    """Maximum matching of a bipartite graph in CSR form.

    Same contract as the pure-Python kernel: returns
    ``(size, left_match, right_match)`` with -1 for unmatched vertices.
    """
    cdef long[:] indptr = np.ascontiguousarray(indptr_arr, dtype=np.int64)
    cdef int[:] indices = np.ascontiguousarray(indices_arr, dtype=np.int32)

    left_match_arr = np.full(n_left, -1, dtype=np.int32)
    right_match_arr = np.full(n_right, -1, dtype=np.int32)
    cdef int[:] left_match = left_match_arr
    cdef int[:] right_match = right_match_arr

    cdef int[:] dist = np.empty(n_left, dtype=np.int32)
    cdef int[:] queue = np.empty(n_left, dtype=np.int32)
    cdef long[:] ptr = np.empty(n_left, dtype=np.int64)
    cdef int[:] stack = np.empty(n_left + 1, dtype=np.int32)
    cdef int[:] path_r = np.empty(n_left + 1, dtype=np.int32)

    cdef int INF = 2 ** 30
    cdef int size = 0
    cdef int u, u0, r, w, layer, step, depth, qhead, qtail, i
    cdef long e

    while True:
        qhead = 0
        qtail = 0
        for u in range(n_left):
            if left_match[u] == -1:
                dist[u] = 0
                queue[qtail] = u
                qtail += 1
            else:
                dist[u] = INF
        layer = INF
        while qhead < qtail:
            u = queue[qhead]
            qhead += 1
            if dist[u] >= layer:
                continue
            for e in range(indptr[u], indptr[u + 1]):
                r = indices[e]
                w = right_match[r]
                if w == -1:
                    if layer == INF:
                        layer = dist[u] + 1
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    queue[qtail] = w
                    qtail += 1
        if layer == INF:
            break

        for u in range(n_left):
            ptr[u] = indptr[u]
        for u0 in range(n_left):
            if left_match[u0] != -1:
                continue
            depth = 0
            stack[0] = u0
            depth = 1
            while depth > 0:
                u = stack[depth - 1]
                step = -1
                while ptr[u] < indptr[u + 1]:
                    e = ptr[u]
                    ptr[u] += 1
                    r = indices[e]
                    w = right_match[r]
                    if w == -1:
                        if dist[u] + 1 == layer:
                            path_r[depth - 1] = r
                            step = 1
                            break
                    elif dist[w] == dist[u] + 1:
                        path_r[depth - 1] = r
                        stack[depth] = w
                        depth += 1
                        step = 0
                        break
                if step == 1:
                    for i in range(depth):
                        left_match[stack[i]] = path_r[i]
                        right_match[path_r[i]] = stack[i]
                    size += 1
                    depth = 0
                elif step == -1:
                    dist[u] = INF
                    depth -= 1

    return size, left_match_arr, right_match_arr
