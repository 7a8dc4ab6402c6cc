"""Greedy actuator placement under a structural-controllability constraint.

Three algorithms:

* ``forward_greedy`` adds the node with the best marginal metric decrease,
  skipping nodes whose addition cannot be extended to a feasible budget-k
  set.  Rejected nodes stay rejected: extendability is downward closed, so
  a node infeasible against the current set stays infeasible forever.
* ``initial_set`` seeds one actuator in every source component so that the
  whole graph becomes accessible, choosing the cheapest feasible node per
  component.
* ``long_horizon_greedy`` scores each candidate by the metric of a full
  forward-greedy rollout from the expanded set instead of the immediate
  gain.  With the rollout depth left at "full" the final set is never
  worse than plain forward greedy under the same tie-break.

All candidate scans share one deterministic tie-break (lowest node index,
metric ties resolved at absolute tolerance 1e-12), and metric evaluations
are memoized per canonical set for the duration of a run.
"""

from __future__ import annotations

import os
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import EmptyCandidateError, InfeasibleBudgetError
from .graph import DiGraph, scc
from .matching import (
    is_extendable_set,
    is_feasible_set,
    is_structurally_controllable,
    min_dilation_free_size,
)
from .metrics import SetMetric

TIE_TOL = 1e-12


@dataclass(frozen=True)
class TraceEntry:
    """One accepted node: which, when, out of how many candidates."""

    iteration: int
    node: int
    candidates: int
    metric_after: float
    rollout_value: float | None = None


@dataclass(frozen=True)
class PlacementResult:
    initial_set: tuple[int, ...]
    final_set: tuple[int, ...]
    metric_value: float
    trace: tuple[TraceEntry, ...]
    in_feasible_set: bool
    structurally_controllable: bool
    wall_time_s: float


@dataclass(frozen=True)
class PlacementConfig:
    """Knobs for the placement pipeline.

    ``horizon`` bounds the embedded rollout of the long-horizon method
    ("full" resolves to budget minus seed size, fixed at pipeline start).
    ``depth`` bounds the number of forward-greedy additions ("unbounded"
    lets the budget and the candidate supply terminate the loop).
    ``threads`` caps parallel candidate evaluation; None reads
    NETPLACE_THREADS, 0 or 1 runs serially.  Parallel runs are
    bit-identical to serial ones because selection happens after the scan.
    """

    k: int
    horizon: int | str = "full"
    depth: int | str = "unbounded"
    tie_break: str = "lowest-index"
    threads: int | None = None

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("budget k must be >= 1")
        if isinstance(self.horizon, str) and self.horizon != "full":
            raise ValueError('horizon must be an integer >= 0 or "full"')
        if isinstance(self.horizon, int) and self.horizon < 0:
            raise ValueError("horizon must be >= 0")
        if isinstance(self.depth, str) and self.depth != "unbounded":
            raise ValueError('depth must be an integer >= 0 or "unbounded"')
        if isinstance(self.depth, int) and self.depth < 0:
            raise ValueError("depth must be >= 0")
        if self.tie_break != "lowest-index":
            raise ValueError(f"unknown tie-break rule: {self.tie_break!r}")


class _CachedMetric(SetMetric):
    """Per-run memoization wrapper around a metric.

    Long-horizon rollouts re-evaluate heavily overlapping sets; caching by
    canonical frozenset makes embedded and outer scans see bit-identical
    values.  Plain dict get/set is atomic under CPython, which covers
    concurrent insertion from the candidate-scan thread pool.
    """

    def __init__(self, inner: SetMetric):
        self.inner = inner
        self.n = inner.n
        self.monotone = inner.monotone
        self._cache: dict[frozenset[int], float] = {}

    def evaluate(self, s: Iterable[int]) -> float:
        key = frozenset(s)
        value = self._cache.get(key)
        if value is None:
            value = self.inner.evaluate(key)
            self._cache[key] = value
        return value


def _ensure_cached(f: SetMetric) -> SetMetric:
    return f if isinstance(f, _CachedMetric) else _CachedMetric(f)


def _thread_count(threads: int | None) -> int:
    if threads is None:
        raw = os.environ.get("NETPLACE_THREADS", "0")
        try:
            threads = int(raw)
        except ValueError:
            threads = 0
    return max(0, threads)


def _map_candidates(fn: Callable, items: Sequence, threads: int) -> list:
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _argbest(candidates: Sequence[int], values: Sequence[float], minimize: bool) -> int:
    """Index of the best value; ties within TIE_TOL go to the lowest node id.

    Candidates are scanned in ascending node order, so the first strict
    improvement wins and equal-within-tolerance values keep the earlier
    (lower-index) candidate.
    """
    best = 0
    for i in range(1, len(values)):
        if minimize:
            if values[i] < values[best] - TIE_TOL:
                best = i
        else:
            if values[i] > values[best] + TIE_TOL:
                best = i
    return best


def forward_greedy(
    g: DiGraph,
    s0: Iterable[int],
    depth: int | str,
    k: int,
    f: SetMetric,
    threads: int | None = None,
) -> PlacementResult:
    """Myopic greedy expansion of ``s0`` up to ``depth`` additions.

    Each pass scores every unprocessed node by its marginal metric
    decrease and membership-tests only the winner: accepted winners join
    the set, rejected ones are never reconsidered.  The returned set is
    always extendable to budget ``k`` and is a complete feasible set when
    it reaches size ``k``.
    """
    start = time.perf_counter()
    seed = tuple(sorted(set(int(v) for v in s0)))
    if not is_extendable_set(g, seed, k):
        raise ValueError(
            f"initial set {seed} cannot be extended to a dilation-free set of size {k}"
        )
    f = _ensure_cached(f)
    nthreads = _thread_count(threads)
    if depth == "unbounded":
        max_adds = g.n
    else:
        max_adds = int(depth)
        if max_adds < 0:
            raise ValueError("depth must be >= 0")

    current = set(seed)
    processed = set(seed)
    trace: list[TraceEntry] = []
    t = 1
    while len(processed) < g.n and len(current) < k and t <= max_adds:
        candidates = [v for v in range(g.n) if v not in processed]
        base = f.evaluate(current)
        values = _map_candidates(
            lambda v: base - f.evaluate(current | {v}), candidates, nthreads
        )
        winner = candidates[_argbest(candidates, values, minimize=False)]
        if is_extendable_set(g, current | {winner}, k):
            current.add(winner)
            processed.add(winner)
            trace.append(
                TraceEntry(t, winner, len(candidates), f.evaluate(current))
            )
            t += 1
        else:
            processed.add(winner)

    return _finish(g, seed, current, f, trace, k, start)


def initial_set(g: DiGraph, k: int, f: SetMetric, threads: int | None = None) -> tuple[int, ...]:
    """One feasible actuator per source component, cheapest first.

    Visits source components in ascending order of their smallest node and
    picks, within each, the feasible node minimizing the metric of the
    accumulated set.  Raises EmptyCandidateError naming the component when
    no node of a source component keeps the set extendable.
    """
    f = _ensure_cached(f)
    nthreads = _thread_count(threads)
    decomposition = scc(g)
    chosen: list[int] = []
    for cid in decomposition.source_components:
        component = decomposition.components[cid]
        feasible = [v for v in component if is_extendable_set(g, {*chosen, v}, k)]
        if not feasible:
            raise EmptyCandidateError(
                f"no feasible actuator in source component {component}; "
                f"budget {k} is too small for this graph",
                component=component,
            )
        values = _map_candidates(
            lambda v: f.evaluate({*chosen, v}), feasible, nthreads
        )
        chosen.append(feasible[_argbest(feasible, values, minimize=True)])
    return tuple(sorted(chosen))


def long_horizon_greedy(
    g: DiGraph,
    s0: Iterable[int],
    horizon: int | str,
    k: int,
    f: SetMetric,
    threads: int | None = None,
) -> PlacementResult:
    """Greedy expansion scored by forward-greedy rollouts.

    Every feasible candidate is expanded by an embedded forward-greedy run
    of depth ``horizon`` ("full" fixes it to k - |s0|); the candidate whose
    rollout reaches the lowest metric wins.  With the full horizon the
    result is never worse than plain forward greedy from the same seed;
    truncated horizons trade that guarantee for speed.
    """
    start = time.perf_counter()
    seed = tuple(sorted(set(int(v) for v in s0)))
    if not is_extendable_set(g, seed, k):
        raise ValueError(
            f"initial set {seed} cannot be extended to a dilation-free set of size {k}"
        )
    f = _ensure_cached(f)
    nthreads = _thread_count(threads)
    if horizon == "full":
        rollout_depth = k - len(seed)
    else:
        rollout_depth = int(horizon)
        if rollout_depth < 0:
            raise ValueError("horizon must be >= 0")

    current = set(seed)
    trace: list[TraceEntry] = []
    t = 1
    while len(current) < k:
        candidates = [
            v for v in range(g.n)
            if v not in current and is_extendable_set(g, current | {v}, k)
        ]
        if not candidates:
            raise EmptyCandidateError(
                f"no feasible expansion of {tuple(sorted(current))} within budget {k}"
            )

        def rollout(v: int) -> float:
            result = forward_greedy(g, current | {v}, rollout_depth, k, f, threads=0)
            return result.metric_value

        values = _map_candidates(rollout, candidates, nthreads)
        winner_idx = _argbest(candidates, values, minimize=True)
        winner = candidates[winner_idx]
        current.add(winner)
        trace.append(
            TraceEntry(
                t, winner, len(candidates), f.evaluate(current), values[winner_idx]
            )
        )
        t += 1

    return _finish(g, seed, current, f, trace, k, start)


def place(
    g: DiGraph,
    f: SetMetric,
    method: str,
    config: PlacementConfig,
) -> PlacementResult:
    """End-to-end pipeline for arbitrary graphs.

    Strongly connected graphs start from the empty seed (any nonempty set
    is accessible there); otherwise the seed comes from ``initial_set`` so
    every source component hosts an actuator.  The selected greedy then
    expands to the budget.
    """
    if method not in ("fg", "lhfg"):
        raise ValueError(f'method must be "fg" or "lhfg", got {method!r}')
    k = config.k
    if k > g.n:
        raise ValueError(f"budget k={k} exceeds node count n={g.n}")
    needed = min_dilation_free_size(g)
    if k < needed:
        raise InfeasibleBudgetError(
            f"budget k={k} is below the minimum actuator count {needed}"
        )

    start = time.perf_counter()
    f = _ensure_cached(f)
    decomposition = scc(g)
    if decomposition.is_strongly_connected:
        seed: tuple[int, ...] = ()
    else:
        n_sources = len(decomposition.source_components)
        if not (g.n > k >= needed + n_sources):
            warnings.warn(
                f"budget k={k} outside the guaranteed range "
                f"[{needed + n_sources}, {g.n - 1}] for a graph with "
                f"{n_sources} source components; the seed construction may fail "
                "or the result may not be structurally controllable",
                RuntimeWarning,
                stacklevel=2,
            )
        seed = initial_set(g, k, f, threads=config.threads)

    if method == "fg":
        depth = k - len(seed) if config.depth == "unbounded" else config.depth
        result = forward_greedy(g, seed, depth, k, f, threads=config.threads)
    else:
        result = long_horizon_greedy(g, seed, config.horizon, k, f, threads=config.threads)
    return PlacementResult(
        initial_set=result.initial_set,
        final_set=result.final_set,
        metric_value=result.metric_value,
        trace=result.trace,
        in_feasible_set=result.in_feasible_set,
        structurally_controllable=result.structurally_controllable,
        wall_time_s=time.perf_counter() - start,
    )


def _finish(
    g: DiGraph,
    seed: tuple[int, ...],
    current: set[int],
    f: SetMetric,
    trace: list[TraceEntry],
    k: int,
    start: float,
) -> PlacementResult:
    final = tuple(sorted(current))
    return PlacementResult(
        initial_set=seed,
        final_set=final,
        metric_value=f.evaluate(final),
        trace=tuple(trace),
        in_feasible_set=is_feasible_set(g, final, k),
        structurally_controllable=is_structurally_controllable(g, final),
        wall_time_s=time.perf_counter() - start,
    )
