"""Directed-graph data model, SCC decomposition, and accessibility checks.

Node ids are 0-based throughout the library; 1-based ids exist only at the
CLI boundary.  Edge weights are stored but every structural computation
depends on the zero/nonzero pattern alone.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np


@dataclass(frozen=True)
class DiGraph:
    """Immutable directed weighted graph on nodes ``0..n-1``.

    ``edges`` holds ``(source, target, weight)`` triples with strictly
    nonzero weights and no duplicate (source, target) pairs.  Self-loops
    are allowed.
    """

    n: int
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("node count must be positive")
        seen: set[tuple[int, int]] = set()
        normalized = []
        for src, dst, w in self.edges:
            if not (0 <= src < self.n and 0 <= dst < self.n):
                raise ValueError(f"edge ({src}, {dst}) endpoint out of range 0..{self.n - 1}")
            if w == 0:
                raise ValueError(f"edge ({src}, {dst}) has zero weight")
            if (src, dst) in seen:
                raise ValueError(f"duplicate edge ({src}, {dst})")
            seen.add((src, dst))
            normalized.append((int(src), int(dst), float(w)))
        normalized.sort(key=lambda e: (e[0], e[1]))
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        """Out-neighbour lists, each sorted ascending."""
        succ: list[list[int]] = [[] for _ in range(self.n)]
        for src, dst, _ in self.edges:
            succ[src].append(dst)
        return tuple(tuple(s) for s in succ)

    @cached_property
    def successor_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR (indptr int64, indices int32) of the out-neighbour lists."""
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        for src, _, _ in self.edges:
            indptr[src + 1] += 1
        np.cumsum(indptr, out=indptr)
        indices = np.empty(len(self.edges), dtype=np.int32)
        fill = indptr[:-1].copy()
        for src, dst, _ in self.edges:  # edges sorted, so per-row order is ascending
            indices[fill[src]] = dst
            fill[src] += 1
        return indptr, indices

    def system_matrix(self) -> np.ndarray:
        """Dense dynamics matrix A with ``A[i, j] = weight of edge j -> i``."""
        a = np.zeros((self.n, self.n))
        for src, dst, w in self.edges:
            a[dst, src] = w
        return a


def from_adjacency(matrix: np.ndarray) -> DiGraph:
    """Build the graph of a dynamics matrix.

    Entry ``matrix[i, j] != 0`` declares a directed edge from node j to
    node i carrying that weight (the state-space convention: column index
    feeds row index).
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"adjacency matrix must be square, got shape {a.shape}")
    n = a.shape[0]
    rows, cols = np.nonzero(a)
    edges = tuple((int(j), int(i), float(a[i, j])) for i, j in zip(rows, cols))
    return DiGraph(n, edges)


@dataclass(frozen=True)
class SccDecomposition:
    """Partition of the nodes into strongly connected components.

    Components are each sorted ascending and ordered by smallest member.
    ``source_components`` are the indices of components with no incoming
    edge from another component; every nonempty graph has at least one.
    """

    components: tuple[tuple[int, ...], ...]
    component_of: tuple[int, ...]
    source_components: tuple[int, ...]

    @property
    def is_strongly_connected(self) -> bool:
        return len(self.components) == 1


def scc(g: DiGraph) -> SccDecomposition:
    """Strongly connected components via iterative two-pass DFS (Kosaraju)."""
    n = g.n
    succ = g.successors
    pred: list[list[int]] = [[] for _ in range(n)]
    for src, dst, _ in g.edges:
        pred[dst].append(src)

    # Pass 1: forward DFS, record finish order.
    order: list[int] = []
    state = [0] * n  # 0 unvisited, 1 on stack, 2 finished
    for start in range(n):
        if state[start]:
            continue
        stack: list[tuple[int, int]] = [(start, 0)]
        state[start] = 1
        while stack:
            node, idx = stack.pop()
            if idx < len(succ[node]):
                stack.append((node, idx + 1))
                nxt = succ[node][idx]
                if not state[nxt]:
                    state[nxt] = 1
                    stack.append((nxt, 0))
            else:
                state[node] = 2
                order.append(node)

    # Pass 2: reverse DFS in decreasing finish order.
    comp_of = [-1] * n
    raw_components: list[list[int]] = []
    for start in reversed(order):
        if comp_of[start] != -1:
            continue
        cid = len(raw_components)
        members = [start]
        comp_of[start] = cid
        stack2 = [start]
        while stack2:
            node = stack2.pop()
            for nxt in pred[node]:
                if comp_of[nxt] == -1:
                    comp_of[nxt] = cid
                    members.append(nxt)
                    stack2.append(nxt)
        raw_components.append(members)

    # Canonical order: by smallest member, nodes ascending within a component.
    ordered = sorted((sorted(c) for c in raw_components), key=lambda c: c[0])
    remap = {comp_of[comp[0]]: new for new, comp in enumerate(ordered)}
    component_of = tuple(remap[comp_of[v]] for v in range(n))

    has_incoming = [False] * len(ordered)
    for src, dst, _ in g.edges:
        if component_of[src] != component_of[dst]:
            has_incoming[component_of[dst]] = True
    sources = tuple(i for i, flag in enumerate(has_incoming) if not flag)

    return SccDecomposition(
        components=tuple(tuple(c) for c in ordered),
        component_of=component_of,
        source_components=sources,
    )


def is_accessible(g: DiGraph, s: Iterable[int]) -> bool:
    """True when every node is reachable by a directed path from ``s``.

    Nodes of ``s`` reach themselves by the empty path.  Multi-source BFS.
    """
    sources = _validated_set(g, s)
    if not sources:
        return False
    succ = g.successors
    seen = bytearray(g.n)
    queue = deque()
    for v in sources:
        seen[v] = 1
        queue.append(v)
    count = len(sources)
    while queue:
        v = queue.popleft()
        for w in succ[v]:
            if not seen[w]:
                seen[w] = 1
                count += 1
                queue.append(w)
    return count == g.n


def is_controllable_numeric(g: DiGraph, s: Iterable[int], tol: float = 1e-9) -> bool:
    """Numerical-rank controllability test, used as an oracle in tests.

    Forms ``P = [B, AB, ..., A^(n-1)B]`` with ``B = diag(indicator(s))`` and
    checks whether the singular values above ``tol * sigma_max`` count to n.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    nodes = _validated_set(g, s)
    n = g.n
    a = g.system_matrix()
    b = np.zeros((n, n))
    for v in nodes:
        b[v, v] = 1.0
    blocks = []
    m = b
    for _ in range(n):
        blocks.append(m)
        m = a @ m
    p = np.hstack(blocks)
    sigma = np.linalg.svd(p, compute_uv=False)
    if sigma[0] == 0.0:
        return False
    return int(np.sum(sigma > tol * sigma[0])) == n


def _validated_set(g: DiGraph, s: Iterable[int]) -> frozenset[int]:
    nodes = frozenset(int(v) for v in s)
    for v in nodes:
        if not 0 <= v < g.n:
            raise ValueError(f"node id {v} out of range 0..{g.n - 1}")
    return nodes
