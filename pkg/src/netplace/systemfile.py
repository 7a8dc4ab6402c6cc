"""System description files and machine-readable reports.

A system file is a JSON object describing the network and, optionally, a
default metric.  Node ids in files and reports are 1-based; the library
works 0-based, and this module owns the translation.

Grammar (all JSON, UTF-8)::

    {
      "version": 1,
      "n": <int >= 1>,
      "matrix": [[...], ...]            # n x n, row-major; matrix[i][j] = w
                                        # declares edge (j+1) -> (i+1), w != 0
      # or, exclusively:
      "edges": [[j, i, w], ...]         # 1-based, meaning matrix[i-1][j-1] = w
      "labels": ["...", ...],           # optional, n strings
      "metric": {                       # optional
        "kind": "gramian",              # with optional T > 0, epsilon > 0
        "kind": "modular"               # with weights (n numbers >= 0),
                                        # optional base
      }
    }
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import SystemFileError
from .graph import DiGraph, from_adjacency
from .metrics import GramianMetric, ModularMetric, SetMetric

FORMAT_VERSION = 1


@dataclass(frozen=True)
class SystemFile:
    """Parsed system description plus the raw-byte hash for report echoes."""

    graph: DiGraph
    labels: tuple[str, ...] | None = None
    metric_block: dict[str, Any] | None = None
    sha256: str = ""


def loads(text: str) -> SystemFile:
    """Parse a system file, raising SystemFileError with position info."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SystemFileError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(data, dict):
        raise SystemFileError("top-level value must be an object")
    if data.get("version") != FORMAT_VERSION:
        raise SystemFileError(f'"version" must be {FORMAT_VERSION}')
    n = data.get("n")
    if not isinstance(n, int) or n < 1:
        raise SystemFileError('"n" must be an integer >= 1')
    if ("matrix" in data) == ("edges" in data):
        raise SystemFileError('exactly one of "matrix" or "edges" must be present')

    if "matrix" in data:
        matrix = data["matrix"]
        if (
            not isinstance(matrix, list)
            or len(matrix) != n
            or any(not isinstance(row, list) or len(row) != n for row in matrix)
        ):
            raise SystemFileError(f'"matrix" must be an {n}x{n} array of numbers')
        try:
            a = np.asarray(matrix, dtype=float)
        except (TypeError, ValueError) as exc:
            raise SystemFileError(f'"matrix" contains a non-numeric entry: {exc}') from exc
        graph = from_adjacency(a)
    else:
        a = np.zeros((n, n))
        seen: set[tuple[int, int]] = set()
        for pos, triple in enumerate(data["edges"]):
            if not (isinstance(triple, list) and len(triple) == 3):
                raise SystemFileError(f"edge {pos}: expected [source, target, weight]")
            j, i, w = triple
            if not (isinstance(j, int) and isinstance(i, int)):
                raise SystemFileError(f"edge {pos}: node ids must be integers")
            if not (1 <= j <= n and 1 <= i <= n):
                raise SystemFileError(f"edge {pos}: node ids must lie in 1..{n}")
            if not isinstance(w, (int, float)) or w == 0:
                raise SystemFileError(f"edge {pos}: weight must be a nonzero number")
            if (j, i) in seen:
                raise SystemFileError(f"edge {pos}: duplicate edge ({j}, {i})")
            seen.add((j, i))
            a[i - 1, j - 1] = float(w)
        graph = from_adjacency(a)

    labels = data.get("labels")
    if labels is not None:
        if not (isinstance(labels, list) and len(labels) == n
                and all(isinstance(x, str) for x in labels)):
            raise SystemFileError(f'"labels" must be an array of {n} strings')
        labels = tuple(labels)

    metric_block = data.get("metric")
    if metric_block is not None:
        _validate_metric_block(metric_block, n)

    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    return SystemFile(graph=graph, labels=labels, metric_block=metric_block, sha256=digest)


def load(path: str) -> SystemFile:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return loads(handle.read())
    except OSError as exc:
        raise SystemFileError(f"cannot read {path}: {exc}") from exc


def dumps(system: SystemFile) -> str:
    """Canonical serialization (sorted 1-based edge list form)."""
    payload: dict[str, Any] = {
        "version": FORMAT_VERSION,
        "n": system.graph.n,
        "edges": [[src + 1, dst + 1, w] for src, dst, w in system.graph.edges],
    }
    if system.labels is not None:
        payload["labels"] = list(system.labels)
    if system.metric_block is not None:
        payload["metric"] = system.metric_block
    return json.dumps(payload, indent=2) + "\n"


def _validate_metric_block(block: Any, n: int) -> None:
    if not isinstance(block, dict):
        raise SystemFileError('"metric" must be an object')
    kind = block.get("kind")
    if kind == "gramian":
        for key in ("T", "epsilon"):
            if key in block and not (
                isinstance(block[key], (int, float)) and block[key] > 0
            ):
                raise SystemFileError(f'metric "{key}" must be a positive number')
    elif kind == "modular":
        weights = block.get("weights")
        if weights is not None and not (
            isinstance(weights, list)
            and len(weights) == n
            and all(isinstance(x, (int, float)) and x >= 0 for x in weights)
        ):
            raise SystemFileError(f'metric "weights" must be {n} nonnegative numbers')
        if "base" in block and not isinstance(block["base"], (int, float)):
            raise SystemFileError('metric "base" must be a number')
    else:
        raise SystemFileError('metric "kind" must be "gramian" or "modular"')


def resolve_metric(
    system: SystemFile,
    kind: str | None = None,
    horizon: float | None = None,
    epsilon: float | None = None,
    weights: list[float] | None = None,
    base: float | None = None,
) -> SetMetric:
    """Build the metric from the file's block with CLI overrides on top.

    Priority: explicit arguments, then the file's metric block, then the
    defaults (gramian, T=1, epsilon=1e-12).
    """
    block = dict(system.metric_block or {})
    kind = kind or block.get("kind") or "gramian"
    n = system.graph.n
    if kind == "gramian":
        t_val = horizon if horizon is not None else block.get("T", 1.0)
        eps = epsilon if epsilon is not None else block.get("epsilon", 1e-12)
        return GramianMetric(system.graph.system_matrix(), float(t_val), float(eps))
    if kind == "modular":
        w = weights if weights is not None else block.get("weights")
        if w is None:
            raise SystemFileError(
                "modular metric needs weights (file metric block or --weights)"
            )
        if len(w) != n:
            raise SystemFileError(f"expected {n} weights, got {len(w)}")
        b = base if base is not None else block.get("base", 0.0)
        return ModularMetric([float(x) for x in w], float(b))
    raise SystemFileError(f'unknown metric kind {kind!r}')


def metric_params(metric: SetMetric) -> dict[str, Any]:
    """Report-facing parameter echo for a metric."""
    if isinstance(metric, GramianMetric):
        return {
            "kind": "gramian",
            "T": format_value(metric.horizon),
            "epsilon": format_value(metric.epsilon),
        }
    if isinstance(metric, ModularMetric):
        return {
            "kind": "modular",
            "base": format_value(metric.base),
            "weights": [format_value(w) for w in metric.weights],
        }
    return {"kind": type(metric).__name__}


def format_value(value: float) -> str:
    """Metric values as decimal strings with 12 significant digits.

    Keeps reports byte-stable across platforms regardless of repr drift.
    """
    return f"{float(value):.12g}"


def to_external(nodes) -> list[int]:
    """Sorted 1-based node array for reports."""
    return [int(v) + 1 for v in sorted(nodes)]


def parse_actuators(raw: str, n: int) -> tuple[int, ...]:
    """Parse a 1-based comma-separated actuator list into 0-based ids."""
    raw = raw.strip()
    if not raw:
        return ()
    out = []
    for part in raw.split(","):
        part = part.strip()
        try:
            v = int(part)
        except ValueError:
            raise SystemFileError(f"invalid node id {part!r}") from None
        if not 1 <= v <= n:
            raise SystemFileError(f"node id {v} out of range 1..{n}")
        out.append(v - 1)
    if len(set(out)) != len(out):
        raise SystemFileError("duplicate node ids in actuator list")
    return tuple(sorted(out))
