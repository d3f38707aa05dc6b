import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from approxsp.core import GraphError, NoPathError, WeightedGraph, all_pairs_dijkstra, bounded_bellman_ford
from approxsp.hopset import Hopset, build_hopset, oracle_hopset
from approxsp.msp import AspConfig, asp, asp_sanity_beta_product, default_kappa, report_path

from helpers import connected


def star(n):
    return WeightedGraph(n, tuple((0, i, 1) for i in range(1, n)))


class TestAsp:
    def test_star_is_exact(self):
        G = star(9)
        for eps in (0.1, 0.5, 0.9):
            res = asp(G, [3], eps, kappa=2)
            assert np.array_equal(res.estimates.values[0], all_pairs_dijkstra(G)[3])

    def test_four_cycle_all_sources(self):
        G = WeightedGraph(4, ((0, 1, 3), (1, 2, 1), (2, 3, 4), (3, 0, 2)))
        res = asp(G, range(4), 0.5, kappa=2)
        D = all_pairs_dijkstra(G)
        est = res.estimates.values
        assert (est >= D).all() and (est <= 2.5 * D).all()

    def test_isolated_vertex_column(self):
        G = WeightedGraph(5, ((0, 1, 2), (1, 2, 2), (2, 3, 2)))
        res = asp(G, [0, 2], 0.5, kappa=2)
        assert np.isinf(res.estimates.values[:, 4]).all()
        with pytest.raises(NoPathError):
            report_path(res, 0, 4)

    def test_rejects_directed(self):
        with pytest.raises(GraphError):
            asp(WeightedGraph(2, ((0, 1, 1),), directed=True), [0], 0.5)

    def test_rejects_bad_sources(self):
        with pytest.raises(GraphError):
            asp(star(4), [7], 0.5)
        with pytest.raises(ValueError):
            AspConfig(0.5, 2, [])

    def test_R_from_beta(self):
        assert AspConfig(0.25, 2, [0]).R(3) == 12

    def test_default_kappa_formula(self):
        # log log n / log log log n, rounded; it dips before growing
        assert default_kappa(4) == 1
        assert default_kappa(64) == 4
        assert default_kappa(10**6) == 3

    @settings(max_examples=12, deadline=None)
    @given(st.integers(4, 48), st.sampled_from([0.25, 0.5]), st.integers(0, 10**6))
    def test_stretch_and_paths(self, n, eps, seed):
        G = connected(n, seed, p=0.1, max_weight=20)
        rng = np.random.default_rng(seed)
        S = sorted(rng.choice(n, size=max(1, n // 4), replace=False).tolist())
        res = asp(G, S, eps, kappa=2, seed=seed)
        D = all_pairs_dijkstra(G)[S]
        est = res.estimates.values
        assert (est >= D).all()
        assert (est <= (1 + 3 * eps) * D).all()
        for i, u in enumerate(S):
            for v in range(n):
                p = report_path(res, u, v)
                p.validate(G)
                assert p.vertices[0] == u and p.vertices[-1] == v
                assert p.length <= est[i, v]


class TestReportPath:
    def test_self(self):
        res = asp(star(5), [2], 0.5, kappa=2)
        p = report_path(res, 2, 2)
        assert p.vertices == (2,) and p.length == 0

    def test_shortest_edge(self):
        G = WeightedGraph(3, ((0, 1, 1), (1, 2, 1), (0, 2, 5)))
        res = asp(G, [0], 0.5, kappa=2)
        assert report_path(res, 0, 1).vertices == (0, 1)

    def test_non_source(self):
        res = asp(star(5), [2], 0.5, kappa=2)
        with pytest.raises(ValueError):
            report_path(res, 1, 2)

    def test_all_pairs_on_64_vertices(self):
        G = connected(64, seed=11, p=0.06, max_weight=30)
        res = asp(G, range(64), 0.5, kappa=2, seed=4)
        for u in range(64):
            for v in range(64):
                p = report_path(res, u, v)
                p.validate(G)
                assert p.length <= res.estimates.values[u, v]


class TestBetaProduct:
    def test_beta_one_is_adjacency_rows(self):
        G = connected(12, seed=2)
        H = Hopset([], 1, 1)
        from approxsp.core import adjacency_matrix

        assert np.array_equal(asp_sanity_beta_product(G, [1, 5], H, 1, 4), adjacency_matrix(G)[[1, 5]])

    def test_large_R_two_hops_is_exact(self):
        G = connected(14, seed=3, max_weight=50)
        H = Hopset([], 1, 2)
        B = asp_sanity_beta_product(G, range(14), H, 2, 10**3)
        for s in range(14):
            assert np.array_equal(B[s], bounded_bellman_ford(G, s, 2))

    def test_against_hop_bounded_oracle(self):
        G = connected(24, seed=7, max_weight=40)
        H = build_hopset(G, 2, 0.5, seed=1)
        R = 4
        for beta in (2, 3, 4):
            B = asp_sanity_beta_product(G, range(24), H, beta, R)
            for s in range(24):
                d = bounded_bellman_ford(G, s, beta, H)
                fin = np.isfinite(d)
                assert np.array_equal(np.isfinite(B[s]), fin)
                assert (B[s][fin] >= all_pairs_dijkstra(G)[s][fin]).all()
                assert (B[s][fin] <= (1 + 1 / R) ** (beta - 1) * d[fin] + 1e-9).all()

    def test_oracle_hopset_one_product(self):
        G = connected(10, seed=1)
        B = asp_sanity_beta_product(G, range(10), oracle_hopset(G), 1, 1)
        assert np.array_equal(B, all_pairs_dijkstra(G))
