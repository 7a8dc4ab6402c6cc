"""Pure-Python Hopcroft-Karp maximum bipartite matching.

Reference implementation for the compiled kernel in ``_matching_c.pyx``.
Both follow the exact same vertex and edge orderings (left vertices
ascending, neighbours in CSR order), so they produce identical matchings,
not just identical sizes.  Downstream alternating-path searches rely on
that canonical witness.
"""

from __future__ import annotations

from collections import deque

import numpy as np

_INF = 2**30


def hopcroft_karp(
    n_left: int,
    n_right: int,
    indptr: np.ndarray,
    indices: np.ndarray,
) -> tuple[int, np.ndarray, np.ndarray]:
    """Maximum matching of a bipartite graph in CSR form.

    ``indices[indptr[u]:indptr[u + 1]]`` lists the right-side neighbours of
    left vertex ``u``.  Returns ``(size, left_match, right_match)`` where the
    match arrays hold partner indices, -1 for unmatched vertices.
    """
    left_match = np.full(n_left, -1, dtype=np.int32)
    right_match = np.full(n_right, -1, dtype=np.int32)
    dist = np.empty(n_left, dtype=np.int32)
    size = 0

    while True:
        # BFS phase: layer the graph starting from every free left vertex.
        queue: deque[int] = deque()
        for u in range(n_left):
            if left_match[u] == -1:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = _INF
        layer = _INF
        while queue:
            u = queue.popleft()
            if dist[u] >= layer:
                continue
            for e in range(indptr[u], indptr[u + 1]):
                r = indices[e]
                w = right_match[r]
                if w == -1:
                    if layer == _INF:
                        layer = dist[u] + 1
                elif dist[w] == _INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if layer == _INF:
            break

        # DFS phase: augment along shortest paths, free left vertices in
        # ascending order, edges in CSR order (current-arc pointers).
        ptr = np.array(indptr[:n_left], dtype=np.int64)
        stack: list[int] = []
        path_r: list[int] = []
        for u0 in range(n_left):
            if left_match[u0] != -1:
                continue
            stack.append(u0)
            while stack:
                u = stack[-1]
                step = -1  # -1 exhausted, 0 descend, 1 augment
                while ptr[u] < indptr[u + 1]:
                    e = ptr[u]
                    ptr[u] += 1
                    r = indices[e]
                    w = right_match[r]
                    if w == -1:
                        if dist[u] + 1 == layer:
                            path_r.append(r)
                            step = 1
                            break
                    elif dist[w] == dist[u] + 1:
                        path_r.append(r)
                        stack.append(w)
                        step = 0
                        break
                if step == 1:
                    for i in range(len(stack)):
                        left_match[stack[i]] = path_r[i]
                        right_match[path_r[i]] = stack[i]
                    size += 1
                    stack.clear()
                    path_r.clear()
                elif step == -1:
                    dist[u] = _INF
                    stack.pop()
                    if stack:
                        path_r.pop()

    return size, left_match, right_match
