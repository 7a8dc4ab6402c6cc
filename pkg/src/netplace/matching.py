"""Actuator-augmented bipartite graph and dilation-freeness tests.

Dilation-freeness of an actuator set reduces to a perfect matching in an
auxiliary bipartite graph: left vertices are the graph nodes plus one
actuator copy per selected node, right vertices are primed copies of the
nodes, and edges mirror the directed edges plus one edge per actuator
copy.  The two membership predicates below are the feasibility tests the
greedy placement algorithms call in their inner loop.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from . import _kernels
from .graph import DiGraph, _validated_set, is_accessible


@dataclass(frozen=True, eq=False)
class AuxiliaryBipartite:
    """Bipartite graph whose perfect matchings certify dilation-freeness.

    Left vertices ``0..n-1`` are the graph nodes; left vertices
    ``n..n+len(actuators)-1`` are actuator copies, one per actuator in
    ascending node order.  Right vertices ``0..n-1`` are the primed node
    copies.  Stored in CSR form over the left side.
    """

    n: int
    actuators: tuple[int, ...]
    indptr: np.ndarray
    indices: np.ndarray

    @property
    def n_left(self) -> int:
        return self.n + len(self.actuators)

    @property
    def n_right(self) -> int:
        return self.n

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        out = []
        for u in range(self.n_left):
            for e in range(self.indptr[u], self.indptr[u + 1]):
                out.append((u, int(self.indices[e])))
        return tuple(out)


@dataclass(frozen=True, eq=False)
class Matching:
    """A matching as partner maps; -1 marks an unmatched vertex."""

    left_match: np.ndarray
    right_match: np.ndarray

    @property
    def size(self) -> int:
        return int(np.count_nonzero(self.right_match >= 0))

    @property
    def is_perfect(self) -> bool:
        """True when every right vertex (primed node copy) is covered."""
        return bool(np.all(self.right_match >= 0))

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (u, int(r)) for u, r in enumerate(self.left_match) if r >= 0
        )


def build_aux(g: DiGraph, s: Iterable[int]) -> AuxiliaryBipartite:
    """Auxiliary bipartite graph for actuator set ``s``.

    Left vertex i connects to right vertex j when the directed edge
    i -> j exists; the actuator copy of node k connects to right vertex k.
    """
    actuators = tuple(sorted(_validated_set(g, s)))
    base_indptr, base_indices = g.successor_csr
    k = len(actuators)
    if k == 0:
        return AuxiliaryBipartite(g.n, actuators, base_indptr, base_indices)
    indptr = np.concatenate(
        [base_indptr, base_indptr[-1] + np.arange(1, k + 1, dtype=np.int64)]
    )
    indices = np.concatenate([base_indices, np.asarray(actuators, dtype=np.int32)])
    return AuxiliaryBipartite(g.n, actuators, indptr, indices)


def max_matching(b: AuxiliaryBipartite) -> Matching:
    """Maximum-cardinality matching with a canonical deterministic witness.

    The witness follows lowest-index augmentation order, so repeated calls
    return the same matching and downstream alternating-path searches are
    reproducible.
    """
    _, left_match, right_match = _kernels.hopcroft_karp(
        b.n_left, b.n_right, b.indptr, b.indices
    )
    left_match.setflags(write=False)
    right_match.setflags(write=False)
    return Matching(left_match, right_match)


def matching_size(g: DiGraph, s: Iterable[int]) -> int:
    """Size of a maximum matching in the auxiliary bipartite graph of ``s``."""
    b = build_aux(g, s)
    size, _, _ = _kernels.hopcroft_karp(b.n_left, b.n_right, b.indptr, b.indices)
    return size


def is_feasible_set(g: DiGraph, s: Iterable[int], k: int) -> bool:
    """True when ``s`` has exactly ``k`` nodes and is dilation-free.

    Dilation-freeness holds when the auxiliary bipartite graph of ``s``
    has a perfect matching (size n).
    """
    if k < 1:
        raise ValueError("budget k must be >= 1")
    nodes = _validated_set(g, s)
    return len(nodes) == k and matching_size(g, nodes) == g.n


def is_extendable_set(g: DiGraph, s: Iterable[int], k: int) -> bool:
    """True when ``s`` can be grown into a dilation-free set of size ``k``.

    Matching criterion: ``|s| <= k`` and the maximum matching covers at
    least ``n - k + |s|`` right vertices.  This is the feasibility test the
    greedy algorithms run on every candidate expansion.
    """
    if k < 1:
        raise ValueError("budget k must be >= 1")
    nodes = _validated_set(g, s)
    if len(nodes) > k:
        return False
    return matching_size(g, nodes) >= g.n - k + len(nodes)


def min_dilation_free_size(g: DiGraph) -> int:
    """Smallest actuator count for which a dilation-free set exists.

    Equals ``n - max_matching(empty set)``, floored at 1 because any
    controllability notion needs a nonempty input set.
    """
    return max(g.n - matching_size(g, ()), 1)


def is_structurally_controllable(g: DiGraph, s: Iterable[int]) -> bool:
    """Accessibility plus dilation-freeness for actuator set ``s``."""
    nodes = _validated_set(g, s)
    if not nodes:
        return False
    return is_accessible(g, nodes) and matching_size(g, nodes) == g.n
