import numpy as np
import pytest

from netplace.graph import (
    DiGraph,
    from_adjacency,
    is_accessible,
    is_controllable_numeric,
    scc,
)

from oracles import brute_reachable, random_digraph


class TestFromAdjacency:
    def test_star4_orientation(self, star4):
        # column feeds row: entry (0, 1) nonzero means edge 1 -> 0
        assert {(s, d) for s, d, _ in star4.edges} == {
            (1, 0), (2, 0), (3, 0), (0, 1), (0, 2), (0, 3),
        }
        weights = {(s, d): w for s, d, w in star4.edges}
        assert weights[(1, 0)] == -0.5
        assert weights[(3, 0)] == -0.6

    def test_zero_matrix(self):
        g = from_adjacency(np.zeros((3, 3)))
        assert g.n == 3 and g.edge_count == 0

    def test_identity_gives_self_loops(self):
        g = from_adjacency(np.eye(2))
        assert {(s, d) for s, d, _ in g.edges} == {(0, 0), (1, 1)}

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            from_adjacency(np.zeros((2, 3)))

    def test_system_matrix_round_trip(self, star4):
        assert np.array_equal(
            from_adjacency(star4.system_matrix()).edges, star4.edges
        )


class TestDiGraphValidation:
    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            DiGraph(2, ((0, 2, 1.0),))

    def test_rejects_zero_weight(self):
        with pytest.raises(ValueError):
            DiGraph(2, ((0, 1, 0.0),))

    def test_rejects_duplicate_edge(self):
        with pytest.raises(ValueError):
            DiGraph(2, ((0, 1, 1.0), (0, 1, 2.0)))

    def test_rejects_empty_graph(self):
        with pytest.raises(ValueError):
            DiGraph(0, ())


class TestScc:
    def test_star4_single_component(self, star4):
        d = scc(star4)
        assert d.components == ((0, 1, 2, 3),)
        assert d.source_components == (0,)
        assert d.is_strongly_connected

    def test_path_is_singletons(self, path3):
        d = scc(path3)
        assert d.components == ((0,), (1,), (2,))
        assert d.source_components == (0,)

    def test_two_disjoint_cycles(self):
        g = DiGraph(4, ((0, 1, 1.0), (1, 0, 1.0), (2, 3, 1.0), (3, 2, 1.0)))
        d = scc(g)
        assert d.components == ((0, 1), (2, 3))
        assert d.source_components == (0, 1)

    def test_component_of_consistent(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            g = random_digraph(rng, int(rng.integers(1, 10)), 0.25)
            d = scc(g)
            flattened = sorted(v for comp in d.components for v in comp)
            assert flattened == list(range(g.n))
            for cid, comp in enumerate(d.components):
                for v in comp:
                    assert d.component_of[v] == cid

    def test_mutual_reachability_characterization(self):
        # same component iff reachable both ways
        rng = np.random.default_rng(4)
        for _ in range(25):
            g = random_digraph(rng, int(rng.integers(2, 9)), 0.3)
            d = scc(g)
            reach = [brute_reachable(g, {v}) for v in range(g.n)]
            for u in range(g.n):
                for v in range(g.n):
                    together = v in reach[u] and u in reach[v]
                    assert together == (d.component_of[u] == d.component_of[v])

    def test_source_components_have_no_incoming(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            g = random_digraph(rng, int(rng.integers(2, 9)), 0.3)
            d = scc(g)
            assert len(d.source_components) >= 1
            for cid, comp in enumerate(d.components):
                incoming = any(
                    d.component_of[src] != cid and dst in comp
                    for src, dst, _ in g.edges
                )
                assert (cid not in d.source_components) == incoming


class TestIsAccessible:
    def test_star4_single_node(self, star4):
        assert is_accessible(star4, {2})

    def test_full_set_always_accessible(self, path3):
        assert is_accessible(path3, {0, 1, 2})

    def test_path_from_last_node(self, path3):
        assert not is_accessible(path3, {2})
        assert is_accessible(path3, {0})

    def test_empty_set(self, star4):
        assert not is_accessible(star4, set())

    def test_monotone_under_superset(self):
        rng = np.random.default_rng(6)
        for _ in range(25):
            g = random_digraph(rng, int(rng.integers(2, 9)), 0.25)
            s = {int(v) for v in rng.choice(g.n, size=rng.integers(1, g.n), replace=False)}
            if is_accessible(g, s):
                extra = s | {int(rng.integers(g.n))}
                assert is_accessible(g, extra)

    def test_equivalent_to_hitting_all_source_components(self):
        rng = np.random.default_rng(7)
        for _ in range(40):
            g = random_digraph(rng, int(rng.integers(2, 9)), 0.3)
            d = scc(g)
            size = int(rng.integers(0, g.n + 1))
            s = {int(v) for v in rng.choice(g.n, size=size, replace=False)}
            hits_all = all(
                any(v in d.components[cid] for v in s) for cid in d.source_components
            ) and bool(s or not d.source_components)
            assert is_accessible(g, s) == (hits_all and bool(s))

    def test_rejects_bad_node_id(self, star4):
        with pytest.raises(ValueError):
            is_accessible(star4, {7})


class TestIsControllableNumeric:
    def test_star4_pair(self, star4):
        assert is_controllable_numeric(star4, {2, 3})

    def test_empty_set_never(self, star4):
        assert not is_controllable_numeric(star4, set())

    def test_scalar_self_loop(self):
        g = DiGraph(1, ((0, 0, 2.0),))
        assert is_controllable_numeric(g, {0})

    def test_tolerance_must_be_positive(self, star4):
        with pytest.raises(ValueError):
            is_controllable_numeric(star4, {0}, tol=0.0)
