"""Multi-source approximate shortest paths: a hopset followed by beta - 1 approximate products."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import DistMatrix, GraphError, NoPathError, PathResult, WeightedGraph, adjacency_matrix
from .hopset import Hopset, build_hopset
from .minplus import NO_WITNESS, ScaleParams, approx_minplus, approx_minplus_with_witness, max_finite


def default_kappa(n: int) -> int:
    """kappa = log log n / log log log n, the slowly growing choice; at least 1."""
    if n < 16:
        return 1
    lln = math.log(math.log(n))
    llln = math.log(lln)
    if llln <= 0:
        return 1
    return max(1, round(lln / llln))


@dataclass
class AspConfig:
    eps: float
    kappa: int
    sources: list[int]
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.eps < 1:
            raise ValueError(f"eps must lie in (0, 1), got {self.eps}")
        if not self.sources:
            raise ValueError("source set is empty")

    def R(self, beta: int) -> int:
        return math.ceil(beta / self.eps)


@dataclass
class AspResult:
    estimates: DistMatrix
    witnesses: list[np.ndarray]
    hopset: Hopset
    beta: int
    R: int
    graph: WeightedGraph = field(repr=False)
    adjacency: np.ndarray = field(repr=False)
    hop_paths: dict = field(default_factory=dict, repr=False)


def _step(B: np.ndarray, A: np.ndarray, R: int, with_witness: bool, seed: int = 0):
    """One hop of progress: min(B, approx(B * A)).

    The elementwise min keeps estimates monotone even when a coarse scale
    rounds an entry up; it never breaks the product guarantee because
    ``B_ij + A_jj`` is itself a candidate of the exact product.
    """
    params = ScaleParams(R, max_finite(B, A))
    if not with_witness:
        return np.minimum(B, approx_minplus(B, A, params)), None
    C, W = approx_minplus_with_witness(B, A, params, seed=seed)
    keep = B < C
    cols = np.broadcast_to(np.arange(B.shape[1]), B.shape)
    W = np.where(keep & np.isfinite(B), cols, W)
    return np.where(keep, B, C), W


def check_sources(G: WeightedGraph, S) -> list[int]:
    S = [int(s) for s in S]
    if not S:
        raise ValueError("source set is empty")
    for s in S:
        G.check_vertex(s)
    return S


def asp(G: WeightedGraph, S, eps: float, kappa: int | None = None, seed: int = 0,
        hopset: Hopset | None = None) -> AspResult:
    """(1 + eps)-approximate distances for every pair in S x V, with path witnesses.

    Each estimate lies between d_G and ``(1 + eps) * (1 + 1/R)**(beta - 1) * d_G``.
    """
    if G.directed:
        raise GraphError("multi-source ASP needs an undirected graph")
    S = check_sources(G, S)
    kappa = default_kappa(G.n) if kappa is None else kappa
    cfg = AspConfig(eps, kappa, S, seed)
    H = build_hopset(G, kappa, eps, seed=seed, deterministic=True) if hopset is None else hopset
    beta = H.beta_bound
    R = cfg.R(beta)
    A = adjacency_matrix(G, H)
    B = A[S].copy()
    witnesses = []
    for t in range(1, beta):
        B_next, W = _step(B, A, R, with_witness=True, seed=seed + t)
        assert (B_next <= B).all()
        witnesses.append(W)
        B = B_next
    est = DistMatrix(B, list(S), list(range(G.n)))
    return AspResult(est, witnesses, H, beta, R, G, A, _hop_expansions(G, H))


def asp_sanity_beta_product(G: WeightedGraph, S, H, beta: int, R: int) -> np.ndarray:
    """The bare product chain B^(beta) with A the adjacency of G plus H, no witnesses."""
    S = check_sources(G, S)
    A = adjacency_matrix(G, H)
    B = A[S].copy()
    for _ in range(1, beta):
        B = _step(B, A, R, with_witness=False)[0]
    return B


def _hop_expansions(G: WeightedGraph, H: Hopset) -> dict[tuple[int, int], tuple[int, tuple[int, ...]]]:
    """For each adjacent pair of G plus H, the lightest weight and its realizing G-path."""
    best: dict[tuple[int, int], tuple[int, tuple[int, ...]]] = {}
    for e in H.path_map().values():
        best[(e.u, e.v)] = (e.weight, e.path)
    for (u, v), w in G.arc_weights().items():
        if (u, v) not in best or w <= best[(u, v)][0]:
            best[(u, v)] = (w, (u, v))
    return best


def report_path(result: AspResult, u: int, v: int) -> PathResult:
    """A u-v path in G whose length is at most the estimate for (u, v).

    Walks the witness chain backwards, one hop of G plus H per product, then
    replaces hopset edges by their stored paths.
    """
    G = result.graph
    G.check_vertex(v)
    rows = result.estimates.row_labels
    if u not in rows:
        raise ValueError(f"{u} is not a source")
    i = rows.index(u)
    est = result.estimates.values[i, v]
    if not np.isfinite(est):
        raise NoPathError(f"no path from {u} to {v}")
    hops = []  # (from, to) pairs in reverse order
    j = v
    for W in reversed(result.witnesses):
        k = int(W[i, j])
        if k == NO_WITNESS:
            raise AssertionError("finite estimate without a witness")
        if k != j:
            hops.append((k, j))
            j = k
    if j != u:
        hops.append((u, j))
    expand = result.hop_paths or _hop_expansions(G, result.hopset)
    verts = [u]
    total = 0
    for a, b in reversed(hops):
        w, path = expand[(a, b)]
        if path[0] != verts[-1]:
            raise AssertionError("witness chain is not contiguous")
        verts.extend(path[1:])
        total += w
    if total > est:
        raise AssertionError(f"path length {total} exceeds estimate {est}")
    return PathResult(tuple(verts), total)
