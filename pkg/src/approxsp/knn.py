"""Distances to the k nearest neighbors in weighted directed graphs.

Rows are sources: ``A_ij`` estimates d(i -> j), and truncation keeps the k
smallest entries of each row (the vertex itself included, at distance 0).
Squaring the truncated matrix doubles the hop range each round, so
``ceil(log2 k)`` rounds reach every path to a k-nearest neighbor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import INF, NoPathError, PathResult, WeightedGraph, adjacency_matrix, check_dist
from .minplus import NO_WITNESS, ScaleParams, approx_minplus_with_witness, max_finite, sparse_minplus_with_witness


@dataclass
class KnnResult:
    """Truncated distance matrix plus the per-round witnesses for path recovery.

    ``levels[0]`` is the adjacency matrix; ``levels[t]`` the (untruncated)
    product of round t, with ``witnesses[t-1]`` its middle vertices.
    """

    matrix: np.ndarray
    k: int
    levels: list[np.ndarray]
    witnesses: list[np.ndarray]
    ops: int = 0

    def pairs(self, include_self: bool = True):
        ii, jj = np.nonzero(np.isfinite(self.matrix))
        for i, j in zip(ii, jj):
            if include_self or i != j:
                yield int(i), int(j), self.matrix[i, j]


def trunc_k(A, k: int) -> np.ndarray:
    """Keep the k smallest entries of every row, ties to the lowest column; the rest become inf."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    A = check_dist(A)
    if k >= A.shape[1]:
        return A.copy()
    order = np.argsort(A, axis=1, kind="stable")[:, :k]
    out = np.full(A.shape, INF)
    rows = np.arange(A.shape[0])[:, None]
    out[rows, order] = A[rows, order]
    return out


def rounds_for(k: int) -> int:
    return math.ceil(math.log2(k)) if k > 1 else 0


def _check_k(G: WeightedGraph, k: int):
    if not 1 <= k <= G.n:
        raise ValueError(f"k must lie in [1, n={G.n}], got {k}")


def approx_knn(G: WeightedGraph, k: int, eps: float, seed: int = 0) -> KnnResult:
    """Approximate k-NN distances with R = ceil(log2(k) / eps) per product."""
    _check_k(G, k)
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    R = max(1, math.ceil(math.log2(k) / eps)) if k > 1 else 1
    A = adjacency_matrix(G)
    levels, witnesses = [A], []
    for t in range(rounds_for(k)):
        T = trunc_k(A, k)
        A, W = approx_minplus_with_witness(T, T, ScaleParams(R, max_finite(T)), seed=seed + t)
        levels.append(A)
        witnesses.append(W)
    return KnnResult(trunc_k(A, k), k, levels, witnesses)


def exact_knn(G: WeightedGraph, k: int) -> KnnResult:
    """Exact k-NN distances using the sparse product, with no rounding at all."""
    _check_k(G, k)
    A = adjacency_matrix(G)
    levels, witnesses, ops = [A], [], 0
    for _ in range(rounds_for(k)):
        T = trunc_k(A, k)
        A, W, n_ops = sparse_minplus_with_witness(T, T)
        levels.append(A)
        witnesses.append(W)
        ops += n_ops
    return KnnResult(trunc_k(A, k), k, levels, witnesses, ops)


def knn_report_path(result: KnnResult, i: int, j: int) -> PathResult:
    """Recover an i -> j path by splitting at the stored middle vertex, round by round.

    A witness equal to one of the endpoints means the value was carried
    over from the previous round unchanged; round 0 entries are single edges.
    """
    est = result.matrix[i, j]
    if not np.isfinite(est):
        raise NoPathError(f"no returned estimate for ({i}, {j})")

    def walk(a, b, level):
        if a == b:
            return [a], 0
        if level == 0:
            w = result.levels[0][a, b]
            if not np.isfinite(w):
                raise AssertionError(f"({a},{b}) is not an edge")
            return [a, b], int(w)
        h = int(result.witnesses[level - 1][a, b])
        if h == NO_WITNESS:
            raise AssertionError(f"missing witness for ({a},{b}) in round {level}")
        if h in (a, b):
            return walk(a, b, level - 1)
        left, lw = walk(a, h, level - 1)
        right, rw = walk(h, b, level - 1)
        return left + right[1:], lw + rw

    verts, length = walk(i, j, len(result.witnesses))
    if length > est:
        raise AssertionError(f"path length {length} exceeds estimate {est}")
    return PathResult(tuple(verts), length)
