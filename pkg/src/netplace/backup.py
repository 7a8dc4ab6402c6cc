"""Backup actuator planning against single-actuator failures.

An actuator is essential when removing it breaks structural
controllability.  For each essential actuator the feasible replacement
positions are characterized without re-running a matching per candidate:
in the auxiliary bipartite graph, dropping the failed actuator exposes its
primed copy, and every node whose primed copy is reachable by an
alternating path (non-matching edge right-to-left, matching edge
left-to-right) from the exposed vertex can restore the lost perfect
matching.  One breadth-first sweep finds them all.  If the failed actuator
was also the only one in its source component, replacements are restricted
to that component to preserve accessibility.

Choosing the smallest backup set that covers every essential actuator's
family is a minimum hitting set, solved exactly by branch and bound at
desk scale, greedily above.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EmptyFamilyError, InfeasibleBackupError, NotControllableError
from .graph import DiGraph, _validated_set, scc
from .matching import (
    AuxiliaryBipartite,
    Matching,
    build_aux,
    is_structurally_controllable,
    matching_size,
    max_matching,
)

EXACT_GROUND_LIMIT = 25


@dataclass(frozen=True)
class BackupPlan:
    """Minimal backup positions and a per-actuator replacement certificate.

    ``families`` maps each essential actuator to its feasible replacement
    positions; ``chosen`` intersects every family.  ``certificates`` names
    one verified replacement per primary actuator (non-essential actuators
    certify themselves: losing them costs nothing).
    """

    primary: tuple[int, ...]
    essential: tuple[int, ...]
    families: dict[int, tuple[int, ...]]
    chosen: tuple[int, ...]
    mode: str
    certificates: dict[int, int]


def essential_actuators(g: DiGraph, s: Iterable[int]) -> tuple[int, ...]:
    """Actuators whose individual removal destroys structural controllability."""
    nodes = _validated_set(g, s)
    if not is_structurally_controllable(g, nodes):
        raise NotControllableError(
            f"actuator set {tuple(sorted(nodes))} is not structurally controllable"
        )
    return tuple(
        v for v in sorted(nodes)
        if not is_structurally_controllable(g, nodes - {v})
    )


def dilation_recovery_positions(g: DiGraph, s: Iterable[int], v_off: int) -> tuple[int, ...]:
    """Nodes whose substitution for ``v_off`` restores dilation-freeness.

    Requires a perfect matching in the auxiliary graph of ``s``.  When the
    matching survives the removal of ``v_off`` every node qualifies;
    otherwise an alternating breadth-first search from the exposed primed
    copy of ``v_off`` finds exactly the recovering positions in O(n + l).
    """
    nodes = _validated_set(g, s)
    v_off = int(v_off)
    if v_off not in nodes:
        raise ValueError(f"offline node {v_off} is not in the actuator set")
    aux = build_aux(g, nodes)
    matching = max_matching(aux)
    if not matching.is_perfect:
        raise ValueError(
            f"actuator set {tuple(sorted(nodes))} is not dilation-free"
        )
    if matching_size(g, nodes - {v_off}) == g.n:
        return tuple(range(g.n))
    reached = _alternating_reach(aux, matching, v_off)
    return tuple(sorted(reached))


def _alternating_reach(aux: AuxiliaryBipartite, matching: Matching, v_off: int) -> set[int]:
    """Right vertices reachable by alternating paths from exposed ``v_off``.

    The matching necessarily pairs the actuator copy of ``v_off`` with its
    primed copy; that edge is dropped, exposing right vertex ``v_off``.
    Traversal alternates non-matching edges (right to left) with matching
    edges (left to right).
    """
    left_match = matching.left_match.copy()
    right_match = matching.right_match.copy()
    copy_index = aux.n + aux.actuators.index(v_off)
    assert right_match[v_off] == copy_index, "perfect matching must use the actuator copy"
    left_match[copy_index] = -1
    right_match[v_off] = -1

    rev: list[list[int]] = [[] for _ in range(aux.n_right)]
    for u in range(aux.n_left):
        for e in range(aux.indptr[u], aux.indptr[u + 1]):
            rev[int(aux.indices[e])].append(u)

    reached = {v_off}
    queue = deque([v_off])
    while queue:
        r = queue.popleft()
        for u in rev[r]:
            if u == right_match[r]:
                continue
            nxt = int(left_match[u])
            if nxt >= 0 and nxt not in reached:
                reached.add(nxt)
                queue.append(nxt)
    return reached


def feasible_backup_positions(g: DiGraph, s: Iterable[int], v_off: int) -> tuple[int, ...]:
    """Replacement positions preserving full structural controllability.

    Dilation recovery, restricted to the source component of ``v_off``
    when it hosted the only actuator there (otherwise part of the graph
    would become inaccessible).
    """
    nodes = _validated_set(g, s)
    recovering = dilation_recovery_positions(g, nodes, v_off)
    decomposition = scc(g)
    cid = decomposition.component_of[int(v_off)]
    if cid in decomposition.source_components:
        component = set(decomposition.components[cid])
        if nodes & component == {int(v_off)}:
            return tuple(v for v in recovering if v in component)
    return recovering


def min_hitting_set(
    families: Sequence[Iterable[int]],
    ground: Iterable[int],
    mode: str = "exact",
) -> tuple[int, ...]:
    """Smallest set of ground elements intersecting every family.

    ``mode="exact"`` runs branch and bound (elements ordered by coverage
    frequency, greedy incumbent, disjoint-family lower bound);
    ``mode="greedy"`` takes the classical most-coverage-first heuristic.
    ``mode="auto"`` picks exact up to 25 ground elements, greedy above.
    """
    ground_set = sorted(set(int(v) for v in ground))
    fams = [frozenset(int(v) for v in fam) for fam in families]
    for fam in fams:
        if not fam:
            raise EmptyFamilyError("a family is empty; no hitting set exists")
        if not fam <= set(ground_set):
            raise ValueError("families must be subsets of the ground set")
    if mode == "auto":
        mode = "exact" if len(ground_set) <= EXACT_GROUND_LIMIT else "greedy"
    if mode not in ("exact", "greedy"):
        raise ValueError(f'mode must be "exact", "greedy", or "auto", got {mode!r}')
    if not fams:
        return ()

    if mode == "greedy":
        return _greedy_hitting_set(fams)
    return _exact_hitting_set(fams, ground_set)


def _greedy_hitting_set(fams: list[frozenset[int]]) -> tuple[int, ...]:
    unhit = list(range(len(fams)))
    chosen: list[int] = []
    while unhit:
        counts: dict[int, int] = {}
        for i in unhit:
            for v in fams[i]:
                counts[v] = counts.get(v, 0) + 1
        best = max(counts, key=lambda v: (counts[v], -v))
        chosen.append(best)
        unhit = [i for i in unhit if best not in fams[i]]
    return tuple(sorted(chosen))


def _exact_hitting_set(fams: list[frozenset[int]], ground_set: list[int]) -> tuple[int, ...]:
    incumbent = list(_greedy_hitting_set(fams))
    frequency = {v: sum(1 for fam in fams if v in fam) for v in ground_set}

    def disjoint_bound(unhit: list[frozenset[int]]) -> int:
        # Greedily count pairwise-disjoint unhit families; each needs its
        # own element, so this lower-bounds the remaining cost.
        taken: set[int] = set()
        count = 0
        for fam in sorted(unhit, key=len):
            if not fam & taken:
                count += 1
                taken |= fam
        return count

    def search(unhit: list[frozenset[int]], chosen: list[int]) -> None:
        nonlocal incumbent
        if not unhit:
            if len(chosen) < len(incumbent):
                incumbent = sorted(chosen)
            return
        if len(chosen) + disjoint_bound(unhit) >= len(incumbent):
            return
        # Branch on the smallest unhit family, most-covering elements first.
        target = min(unhit, key=lambda fam: (len(fam), sorted(fam)))
        order = sorted(target, key=lambda v: (-frequency[v], v))
        for v in order:
            search([fam for fam in unhit if v not in fam], chosen + [v])

    search(fams, [])
    return tuple(incumbent)


def backup_plan(g: DiGraph, s: Iterable[int], mode: str = "auto") -> BackupPlan:
    """Solve the minimal-backup problem for primary set ``s``.

    Builds the feasible-replacement family of each essential actuator,
    solves the hitting set, and re-verifies every certificate with a full
    structural-controllability check before returning.  ``mode="auto"``
    solves exactly up to 25 nodes, greedily above.
    """
    nodes = _validated_set(g, s)
    if mode == "auto":
        mode = "exact" if g.n <= EXACT_GROUND_LIMIT else "greedy"
    essential = essential_actuators(g, nodes)  # also checks the precondition
    families = {
        v: feasible_backup_positions(g, nodes, v) for v in essential
    }
    for v, fam in families.items():
        if not fam:
            raise InfeasibleBackupError(
                f"no single-node backup can replace essential actuator {v}"
            )
    chosen = min_hitting_set(list(families.values()), range(g.n), mode) if essential else ()

    certificates: dict[int, int] = {}
    for v in sorted(nodes):
        if v in families:
            witness = min(set(chosen) & set(families[v]))
        else:
            witness = v
        if not is_structurally_controllable(g, (nodes - {v}) | {witness}):
            raise InfeasibleBackupError(
                f"certificate {witness} for actuator {v} failed re-verification"
            )
        certificates[v] = witness

    return BackupPlan(
        primary=tuple(sorted(nodes)),
        essential=essential,
        families=families,
        chosen=chosen,
        mode=mode,
        certificates=certificates,
    )
