import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from approxsp.core import NoPathError, WeightedGraph, all_pairs_dijkstra
from approxsp.knn import approx_knn, exact_knn, knn_report_path, rounds_for, trunc_k

from helpers import connected

INF = np.inf


def directed_cycle(n, w=1):
    return WeightedGraph(n, tuple((i, (i + 1) % n, w) for i in range(n)), directed=True)


class TestTrunc:
    def test_k_at_least_n(self):
        A = np.array([[0, 5, 2], [1, 0, 7], [3, 3, 0]], dtype=float)
        assert np.array_equal(trunc_k(A, 3), A)
        assert np.array_equal(trunc_k(A, 9), A)

    def test_k_one_keeps_diagonal(self):
        A = np.array([[0, 5, 2]], dtype=float)
        assert trunc_k(A, 1).tolist() == [[0, INF, INF]]

    def test_ties_keep_lowest_id(self):
        A = np.array([[0, 4, 2, 2, 2]], dtype=float)
        assert trunc_k(A, 3).tolist() == [[0, INF, 2, 2, INF]]

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            trunc_k(np.zeros((2, 2)), 0)

    def test_rounds(self):
        assert [rounds_for(k) for k in (1, 2, 3, 4, 5, 16, 17)] == [0, 1, 2, 2, 3, 4, 5]


class TestExact:
    def test_k_equals_n_is_apsp(self):
        G = connected(12, seed=3, directed=True, p=0.15)
        assert np.array_equal(exact_knn(G, 12).matrix, all_pairs_dijkstra(G))

    def test_single_edge(self):
        G = WeightedGraph(2, ((0, 1, 7),), directed=True)
        assert exact_knn(G, 2).matrix[0, 1] == 7

    @settings(max_examples=25, deadline=None)
    @given(st.integers(2, 30), st.sampled_from([1, 2, 3, 4, 8]), st.integers(0, 10**6))
    def test_multisets(self, n, k, seed):
        G = connected(n, seed, p=0.1, directed=True, max_weight=9)
        k = min(k, n)
        res = exact_knn(G, k)
        D = all_pairs_dijkstra(G)
        for v in range(n):
            row = res.matrix[v]
            assert sorted(row[np.isfinite(row)]) == sorted(D[v])[:k]
            for u in np.flatnonzero(np.isfinite(row)):
                p = knn_report_path(res, v, int(u))
                p.validate(G)
                assert p.length == row[u]


class TestApprox:
    def test_k_one_is_self(self):
        G = connected(10, seed=1, directed=True)
        M = approx_knn(G, 1, 0.5).matrix
        expect = np.full((10, 10), INF)
        np.fill_diagonal(expect, 0)
        assert np.array_equal(M, expect)

    def test_unit_cycle(self):
        res = approx_knn(directed_cycle(10), 4, 0.25)
        for v in range(10):
            row = res.matrix[v]
            assert sorted(row[np.isfinite(row)]) == [0, 1, 2, 3]

    def test_bad_arguments(self):
        G = directed_cycle(5)
        with pytest.raises(ValueError):
            approx_knn(G, 6, 0.5)
        with pytest.raises(ValueError):
            approx_knn(G, 2, 1.5)

    def test_random_sparse_64(self):
        G = connected(64, seed=21, p=0.04, directed=True, max_weight=50)
        k, eps = 8, 0.25
        res = approx_knn(G, k, eps, seed=2)
        D = all_pairs_dijkstra(G)
        for v in range(64):
            row = res.matrix[v]
            fin = np.flatnonzero(np.isfinite(row))
            zk = np.sort(D[v])[k - 1]
            assert len(fin) >= k
            assert (row[fin] >= D[v, fin]).all()
            assert (row[fin] <= (1 + 3 * eps) * zk).all()
            for u in fin:
                p = knn_report_path(res, v, int(u))
                p.validate(G)
                assert p.length <= row[u]


class TestPaths:
    def test_direct_edge(self):
        G = WeightedGraph(3, ((0, 1, 2), (1, 2, 2)), directed=True)
        assert knn_report_path(exact_knn(G, 2), 0, 1).vertices == (0, 1)

    def test_two_hop(self):
        G = WeightedGraph(3, ((0, 1, 2), (1, 2, 2), (0, 2, 9)), directed=True)
        p = knn_report_path(exact_knn(G, 3), 0, 2)
        assert p.vertices == (0, 1, 2) and p.length == 4

    def test_missing_pair(self):
        G = WeightedGraph(3, ((0, 1, 2),), directed=True)
        with pytest.raises(NoPathError):
            knn_report_path(exact_knn(G, 2), 1, 0)
