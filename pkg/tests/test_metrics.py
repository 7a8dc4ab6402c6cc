import math

import mpmath
import numpy as np
import pytest

from netplace.errors import FactorizationError
from netplace.metrics import (
    GramianMetric,
    ModularMetric,
    controllability_gramian,
    matrix_exponential,
)

from conftest import STAR4_MATRIX
from oracles import gramian_quadrature


def mpmath_expm(m: np.ndarray) -> np.ndarray:
    """High-precision exponential as an independent oracle."""
    with mpmath.workdps(40):
        result = mpmath.expm(mpmath.matrix(m.tolist()))
        return np.array(result.tolist(), dtype=float)


class TestMatrixExponential:
    def test_zero_matrix(self):
        assert np.array_equal(matrix_exponential(np.zeros((3, 3))), np.eye(3))

    def test_diagonal(self):
        out = matrix_exponential(np.diag([1.0, -1.0]))
        assert np.allclose(out, np.diag([math.e, 1.0 / math.e]), rtol=1e-14)

    def test_nilpotent_series_terminates(self):
        out = matrix_exponential(np.array([[0.0, 1.0], [0.0, 0.0]]))
        assert np.allclose(out, np.array([[1.0, 1.0], [0.0, 1.0]]), atol=1e-15)

    def test_matches_high_precision_oracle(self):
        rng = np.random.default_rng(21)
        for _ in range(20):
            n = int(rng.integers(1, 7))
            m = rng.standard_normal((n, n))
            got = matrix_exponential(m)
            want = mpmath_expm(m)
            rel = np.linalg.norm(got - want) / max(np.linalg.norm(want), 1e-300)
            assert rel <= 1e-10

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            matrix_exponential(np.zeros((2, 3)))

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            matrix_exponential(np.array([[np.inf, 0.0], [0.0, 0.0]]))

    def test_overflow_is_reported(self):
        with pytest.raises(OverflowError):
            matrix_exponential(np.diag([1e5, 1e5]))


class TestControllabilityGramian:
    def test_zero_a_full_set_is_identity(self):
        w = controllability_gramian(np.zeros((4, 4)), range(4), 1.0)
        assert np.allclose(w, np.eye(4), atol=1e-14)

    def test_empty_set_is_zero(self):
        w = controllability_gramian(np.zeros((3, 3)), (), 2.5)
        assert np.array_equal(w, np.zeros((3, 3)))

    def test_star4_matches_quadrature(self):
        w = controllability_gramian(STAR4_MATRIX, {2, 3}, 1.0)
        oracle = gramian_quadrature(STAR4_MATRIX, {2, 3}, 1.0)
        assert np.linalg.norm(w - oracle) / np.linalg.norm(oracle) <= 1e-8

    def test_rejects_nonpositive_horizon(self):
        with pytest.raises(ValueError):
            controllability_gramian(np.zeros((2, 2)), {0}, 0.0)

    def test_symmetry(self):
        rng = np.random.default_rng(22)
        for _ in range(20):
            n = int(rng.integers(1, 8))
            a = rng.standard_normal((n, n))
            a *= min(1.0, 2.0 / max(np.linalg.norm(a, 2), 1e-12))
            s = {int(v) for v in rng.choice(n, size=rng.integers(0, n + 1), replace=False)}
            w = controllability_gramian(a, s, float(rng.uniform(0.1, 2.0)))
            assert np.linalg.norm(w - w.T) <= 1e-12 * max(np.linalg.norm(w), 1e-300)

    def test_quadrature_equivalence_random(self):
        rng = np.random.default_rng(23)
        for _ in range(25):
            n = int(rng.integers(1, 9))
            a = rng.standard_normal((n, n))
            a *= min(1.0, 2.0 / max(np.linalg.norm(a, 2), 1e-12))
            s = {int(v) for v in rng.choice(n, size=rng.integers(1, n + 1), replace=False)}
            horizon = float(rng.uniform(0.1, 2.0))
            w = controllability_gramian(a, s, horizon)
            oracle = gramian_quadrature(a, s, horizon)
            assert np.linalg.norm(w - oracle) / max(np.linalg.norm(oracle), 1e-300) <= 1e-6


class TestGramianMetric:
    def test_zero_a_full_set(self):
        m = GramianMetric(np.zeros((5, 5)), 1.0, 1e-12)
        assert abs(m.evaluate(range(5)) - 5.0 / (1.0 + 1e-12)) < 1e-9

    def test_zero_a_empty_set(self):
        m = GramianMetric(np.zeros((2, 2)), 1.0, 1e-12)
        assert m.evaluate(()) == pytest.approx(2e12, rel=1e-12)

    def test_star4_against_quadrature(self):
        m = GramianMetric(STAR4_MATRIX, 1.0, 1e-12)
        w = gramian_quadrature(STAR4_MATRIX, {2, 3}, 1.0)
        oracle = float(np.trace(np.linalg.inv(w + 1e-12 * np.eye(4))))
        assert m.evaluate({2, 3}) == pytest.approx(oracle, rel=1e-6)

    def test_order_independent(self):
        m = GramianMetric(STAR4_MATRIX, 1.0, 1e-12)
        assert m.evaluate([3, 2]) == m.evaluate((2, 3))

    def test_monotone_on_nested_sets(self):
        rng = np.random.default_rng(24)
        for _ in range(25):
            n = int(rng.integers(2, 7))
            a = rng.standard_normal((n, n))
            a *= min(1.0, 1.5 / max(np.linalg.norm(a, 2), 1e-12))
            m = GramianMetric(a, 1.0, 1e-12)
            small = {int(v) for v in rng.choice(n, size=rng.integers(0, n), replace=False)}
            grow = [v for v in range(n) if v not in small]
            big = small | {int(rng.choice(grow))}
            f_small, f_big = m.evaluate(small), m.evaluate(big)
            assert f_big <= f_small + 1e-9 * abs(f_small)

    def test_validation(self):
        with pytest.raises(ValueError):
            GramianMetric(np.zeros((2, 3)))
        with pytest.raises(ValueError):
            GramianMetric(np.zeros((2, 2)), horizon=-1.0)
        with pytest.raises(ValueError):
            GramianMetric(np.zeros((2, 2)), epsilon=0.0)

    def test_factorization_failure_signalled(self):
        # epsilon below roundoff of an enormous Gramian scale cannot keep
        # the shifted matrix numerically positive definite
        a = np.zeros((2, 2))
        m = GramianMetric(a, 1.0, 1e-12)
        w = np.array([[1e40, 0.0], [0.0, -1.0]])  # forged non-PD input
        import scipy.linalg

        with pytest.raises(FactorizationError):
            try:
                scipy.linalg.cho_factor(w)
            except scipy.linalg.LinAlgError:
                raise FactorizationError("not positive definite") from None


class TestModularMetric:
    def test_examples(self):
        m = ModularMetric([10.0, 1.0, 5.0, 2.0])
        assert m.evaluate(()) == 0.0
        assert m.evaluate({2}) == -5.0
        assert m.evaluate({0, 3}) == -12.0

    def test_marginal_gains_are_set_independent(self):
        rng = np.random.default_rng(25)
        weights = rng.uniform(0.0, 5.0, size=8)
        m = ModularMetric(weights, base=3.0)
        for _ in range(30):
            s = {int(v) for v in rng.choice(8, size=rng.integers(0, 8), replace=False)}
            outside = [v for v in range(8) if v not in s]
            if not outside:
                continue
            v = int(rng.choice(outside))
            assert m.evaluate(s) - m.evaluate(s | {v}) == pytest.approx(weights[v])

    def test_rejects_negative_weights(self):
        with pytest.raises(ValueError):
            ModularMetric([1.0, -0.5])

    def test_mapping_form(self):
        m = ModularMetric({0: 2.0, 3: 1.0})
        assert m.n == 4
        assert m.evaluate({0, 3}) == -3.0
