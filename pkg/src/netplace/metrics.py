"""Set metrics for actuator selection, including the Gramian energy metric.

The energy metric is trace((W_T(S) + eps*I)^-1) where W_T(S) is the
finite-horizon controllability Gramian of the pair (A, diag(indicator(S))).
The Gramian is computed through an augmented 2n x 2n matrix exponential
rather than quadrature: one exponential per set evaluation.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.linalg

from .errors import FactorizationError


class SetMetric(ABC):
    """Deterministic set function f: 2^V -> R to be minimized.

    ``monotone`` declares (without enforcing) that supersets never score
    worse: s subset of s' implies evaluate(s') <= evaluate(s).
    """

    n: int
    monotone: bool = False

    @abstractmethod
    def evaluate(self, s: Iterable[int]) -> float:
        """Metric value of the node set ``s`` (presentation-order independent)."""

    def _canonical(self, s: Iterable[int]) -> tuple[int, ...]:
        nodes = sorted(set(int(v) for v in s))
        if nodes and not (0 <= nodes[0] and nodes[-1] < self.n):
            raise ValueError(f"node ids must lie in 0..{self.n - 1}")
        return tuple(nodes)


class ModularMetric(SetMetric):
    """Modular baseline metric: f(s) = base - sum of per-node weights.

    Marginal gains are set-independent, which makes greedy behaviour easy
    to predict in tests and gives the CLI a cheap metric option.
    """

    monotone = True

    def __init__(self, weights: Sequence[float] | Mapping[int, float], base: float = 0.0):
        if isinstance(weights, Mapping):
            n = (max(weights) + 1) if weights else 0
            w = np.zeros(n)
            for v, val in weights.items():
                w[v] = val
        else:
            w = np.asarray(weights, dtype=float)
        if np.any(w < 0):
            raise ValueError("modular weights must be nonnegative")
        self.weights = w
        self.base = float(base)
        self.n = len(w)

    def evaluate(self, s: Iterable[int]) -> float:
        nodes = self._canonical(s)
        return self.base - float(self.weights[list(nodes)].sum()) if nodes else self.base


class GramianMetric(SetMetric):
    """Average steering energy trace((W_T(s) + eps*I)^-1).

    The eps shift keeps the metric finite on sets that are not yet
    controllable, so greedy algorithms can score partial selections.
    """

    monotone = True

    def __init__(self, a: np.ndarray, horizon: float = 1.0, epsilon: float = 1e-12):
        a = np.asarray(a, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"system matrix must be square, got shape {a.shape}")
        if horizon <= 0:
            raise ValueError("horizon must be positive")
        if epsilon <= 0:
            raise ValueError("epsilon must be positive")
        self.a = a
        self.horizon = float(horizon)
        self.epsilon = float(epsilon)
        self.n = a.shape[0]

    def evaluate(self, s: Iterable[int]) -> float:
        nodes = self._canonical(s)
        w = controllability_gramian(self.a, nodes, self.horizon)
        shifted = w + self.epsilon * np.eye(self.n)
        # Trace of the inverse through an SPD factorization: n triangular
        # solves against identity columns, never an explicit inverse.
        try:
            factor = scipy.linalg.cho_factor(shifted, lower=True, check_finite=False)
        except scipy.linalg.LinAlgError as exc:
            raise FactorizationError(
                "Gramian + epsilon*I is not numerically positive definite; "
                "raise epsilon"
            ) from exc
        inv = scipy.linalg.cho_solve(factor, np.eye(self.n), check_finite=False)
        return float(np.trace(inv))


def matrix_exponential(m: np.ndarray) -> np.ndarray:
    """Matrix exponential e^M (scaling-and-squaring, Pade core).

    Raises on non-square or non-finite input, and on overflow of the
    result to non-finite entries.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    out = scipy.linalg.expm(m)
    if not np.all(np.isfinite(out)):
        raise OverflowError("matrix exponential overflowed to non-finite entries")
    return out


def controllability_gramian(a: np.ndarray, s: Iterable[int], horizon: float) -> np.ndarray:
    """Finite-horizon controllability Gramian of (A, diag(indicator(s))).

    W = integral_0^T e^(A tau) B B^T e^(A^T tau) d tau, evaluated through
    the exponential of the augmented block matrix [[-A, B B^T], [0, A^T]]:
    with blocks [[F, G], [0, H]] = expm(block * T), W = H^T G.  The result
    is symmetrized before returning.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"system matrix must be square, got shape {a.shape}")
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    n = a.shape[0]
    nodes = sorted(set(int(v) for v in s))
    if nodes and not (0 <= nodes[0] and nodes[-1] < n):
        raise ValueError(f"node ids must lie in 0..{n - 1}")
    bbt = np.zeros((n, n))
    for v in nodes:
        bbt[v, v] = 1.0
    block = np.zeros((2 * n, 2 * n))
    block[:n, :n] = -a
    block[:n, n:] = bbt
    block[n:, n:] = a.T
    phi = matrix_exponential(block * horizon)
    g = phi[:n, n:]
    h = phi[n:, n:]
    w = h.T @ g
    return (w + w.T) / 2.0
