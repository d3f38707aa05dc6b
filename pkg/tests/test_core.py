import numpy as np
import pytest
from hypothesis import given, settings

from approxsp.core import (
    DistMatrix,
    GraphError,
    PathResult,
    WeightedGraph,
    adjacency_matrix,
    all_pairs_dijkstra,
    bounded_bellman_ford,
    check_dist,
    dijkstra,
    format_graph,
    matrix_from_csv,
    matrix_to_csv,
    parse_graph,
    path_length,
    read_graph,
    shortest_path_tree,
    tree_path,
    write_graph,
)
from approxsp.hopset import Hopset, HopsetEdge

from helpers import small_graphs


def floyd_warshall(G):
    D = adjacency_matrix(G)
    for k in range(G.n):
        D = np.minimum(D, D[:, k:k + 1] + D[k:k + 1, :])
    return D


class TestWeightedGraph:
    def test_rejects_self_loop(self):
        with pytest.raises(GraphError):
            WeightedGraph(3, ((1, 1, 2),))

    def test_rejects_nonpositive_weight(self):
        with pytest.raises(GraphError):
            WeightedGraph(3, ((0, 1, 0),))

    def test_rejects_out_of_range(self):
        with pytest.raises(GraphError):
            WeightedGraph(3, ((0, 3, 1),))

    def test_rejects_superpolynomial_weight(self):
        with pytest.raises(GraphError):
            WeightedGraph(2, ((0, 1, 2**4 + 1),))
        WeightedGraph(2, ((0, 1, 2**4 + 1),), poly_exponent=5)

    def test_undirected_arcs_are_symmetric(self):
        G = WeightedGraph(3, ((0, 1, 4), (1, 2, 5)))
        assert sorted(G.arcs()) == [(0, 1, 4), (1, 0, 4), (1, 2, 5), (2, 1, 5)]
        assert G.edge_weight(2, 1) == 5
        assert G.M == 5 and G.m == 2


class TestDijkstra:
    def test_single_vertex(self):
        assert dijkstra(WeightedGraph(1), 0).tolist() == [0]

    def test_path(self):
        G = WeightedGraph(3, ((0, 1, 1), (1, 2, 1)))
        assert dijkstra(G, 0).tolist() == [0, 1, 2]

    def test_two_components(self):
        G = WeightedGraph(4, ((0, 1, 3), (2, 3, 1)))
        d = dijkstra(G, 0)
        assert d[1] == 3 and np.isinf(d[2:]).all()

    def test_directed_is_one_way(self):
        G = WeightedGraph(2, ((0, 1, 3),), directed=True)
        assert dijkstra(G, 0).tolist() == [0, 3]
        assert dijkstra(G, 1)[0] == np.inf

    def test_tree_ties_go_to_smallest_parent(self):
        G = WeightedGraph(4, ((0, 2, 1), (0, 1, 1), (2, 3, 1), (1, 3, 1)))
        _, parent = shortest_path_tree(G, 0)
        assert parent[3] == 1
        assert tree_path(parent, 0, 3) == [0, 1, 3]

    @settings(max_examples=60, deadline=None)
    @given(small_graphs())
    def test_matches_floyd_warshall(self, G):
        assert np.array_equal(all_pairs_dijkstra(G), floyd_warshall(G))

    @settings(max_examples=40, deadline=None)
    @given(small_graphs(min_n=2))
    def test_tree_paths_realize_distances(self, G):
        for s in range(G.n):
            dist, parent = shortest_path_tree(G, s)
            for t in range(G.n):
                if np.isfinite(dist[t]):
                    assert path_length(G, tree_path(parent, s, t)) == dist[t]


class TestAdjacency:
    def test_plain(self):
        G = WeightedGraph(3, ((0, 1, 5),))
        A = adjacency_matrix(G)
        assert A[0, 1] == A[1, 0] == 5 and np.isinf(A[0, 2])
        assert (np.diag(A) == 0).all()

    def test_empty_hopset_is_plain(self):
        G = WeightedGraph(3, ((0, 1, 5), (1, 2, 2)))
        assert np.array_equal(adjacency_matrix(G, Hopset([], 1, 1)), adjacency_matrix(G))

    def test_parallel_hopset_edge_takes_min(self):
        G = WeightedGraph(3, ((0, 1, 5),))
        H = Hopset([HopsetEdge(0, 1, 3, (0, 1))], 1, 1)
        assert adjacency_matrix(G, H)[0, 1] == 3

    def test_parallel_graph_edges_take_min(self):
        G = WeightedGraph(2, ((0, 1, 5), (1, 0, 2)), directed=True)
        A = adjacency_matrix(G)
        assert A[0, 1] == 5 and A[1, 0] == 2


class TestBoundedBellmanFord:
    def setup_method(self):
        self.G = WeightedGraph(4, ((0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 5)))

    def test_zero_hops(self):
        d = bounded_bellman_ford(self.G, 0, 0)
        assert d[0] == 0 and np.isinf(d[1:]).all()

    def test_one_hop_is_adjacency_row(self):
        assert np.array_equal(bounded_bellman_ford(self.G, 0, 1), adjacency_matrix(self.G)[0])

    def test_hop_budget_matters(self):
        assert bounded_bellman_ford(self.G, 0, 2)[3] == 5
        assert bounded_bellman_ford(self.G, 0, 3)[3] == 3

    @settings(max_examples=40, deadline=None)
    @given(small_graphs())
    def test_full_budget_is_exact(self, G):
        for s in range(G.n):
            assert np.array_equal(bounded_bellman_ford(G, s, max(G.n - 1, 0)), dijkstra(G, s))


class TestIO:
    def test_graph_round_trip(self, tmp_path):
        G = WeightedGraph(4, ((0, 1, 3), (2, 3, 7)), directed=True)
        write_graph(G, tmp_path / "g.txt")
        assert read_graph(tmp_path / "g.txt") == G

    def test_duplicates_rejected_unless_keep_min(self):
        text = "2 2 0\n0 1 5\n1 0 3\n"
        with pytest.raises(GraphError):
            parse_graph(text)
        assert parse_graph(text, keep_min=True).edges == ((0, 1, 3),)

    def test_header_mismatch(self):
        with pytest.raises(GraphError):
            parse_graph("3 2 0\n0 1 1\n")

    def test_format_header(self):
        assert format_graph(WeightedGraph(2, ((0, 1, 1),))).splitlines()[0] == "2 1 0"

    def test_csv_round_trip(self):
        X = np.array([[0, np.inf], [3, 4]])
        D = matrix_from_csv(matrix_to_csv(X, [5, 6], [7, 8]))
        assert np.array_equal(D.values, X)
        assert D.row_labels == [5, 6] and D.col_labels == [7, 8]
        assert "INF" in matrix_to_csv(X)


class TestValues:
    def test_check_dist_rejects_fractions_and_negatives(self):
        with pytest.raises(ValueError):
            check_dist([[0.5]])
        with pytest.raises(ValueError):
            check_dist([[-1]])
        with pytest.raises(OverflowError):
            check_dist([[2.0**53]])

    def test_distmatrix_entry_uses_labels(self):
        D = DistMatrix(np.array([[1.0, 2.0]]), [9], [4, 5])
        assert D.entry(9, 5) == 2

    def test_path_result_validate(self):
        G = WeightedGraph(3, ((0, 1, 2), (1, 2, 3)))
        PathResult((0, 1, 2), 5).validate(G)
        with pytest.raises(AssertionError):
            PathResult((0, 1, 2), 4).validate(G)
        with pytest.raises(AssertionError):
            PathResult((0, 2), 5).validate(G)
