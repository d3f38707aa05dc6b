"""Hopsets built from a Thorup-Zwick style sampling hierarchy.

Every vertex gets shortcut edges to its pivots and to the members of its
bunch, weighted by exact graph distances and carrying a realizing shortest
path.  The hop bound is found afterwards by a doubling search over
beta-bounded distance matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import (
    INF,
    GraphError,
    WeightedGraph,
    adjacency_matrix,
    bounded_bellman_ford,
    shortest_path_tree,
    tree_path,
)
from .minplus import minplus_naive

# |H| <= SIZE_CONSTANT * n**(1 + 1/kappa) * log2(n), measured on seeded random graphs
SIZE_CONSTANT = 1.0
FULL_CHECK_LIMIT = 512


@dataclass(frozen=True)
class HopsetEdge:
    u: int
    v: int
    weight: int
    path: tuple[int, ...]


@dataclass
class Hopset:
    edges: list[HopsetEdge]
    kappa: int
    beta_bound: int
    eps: float | None = None
    seed: int | None = None
    levels: list[list[int]] = field(default_factory=list, repr=False)

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        for e in self.edges:
            yield (e.u, e.v, e.weight, e.path)

    def path_map(self) -> dict[tuple[int, int], HopsetEdge]:
        """Lookup of both orientations of every edge."""
        out = {}
        for e in self.edges:
            out[(e.u, e.v)] = e
            out[(e.v, e.u)] = HopsetEdge(e.v, e.u, e.weight, e.path[::-1])
        return out


@dataclass(frozen=True)
class HopsetReport:
    eps_measured: float
    size: int
    beta_used: int
    lower_bound_ok: bool
    pairs_checked: int

    def holds(self, eps: float) -> bool:
        return self.lower_bound_ok and self.eps_measured <= eps + 1e-12


def size_bound(n: int, kappa: int, C: float = SIZE_CONSTANT) -> float:
    return C * n ** (1 + 1 / kappa) * max(1.0, math.log2(n))


def beta_cap(kappa: int, eps: float) -> int:
    return (2 * math.ceil(kappa / eps) + 1) ** kappa


def _exact_trees(G: WeightedGraph):
    adj = G.adjacency_lists()
    dist = np.empty((G.n, G.n))
    parents = []
    for s in range(G.n):
        d, par = shortest_path_tree(G, s, adj)
        dist[s] = d
        parents.append(par)
    return dist, parents


def _sample_levels(n: int, kappa: int, rng) -> list[np.ndarray]:
    """A_0 = V, each later level keeps members with probability n^(-1/kappa), A_kappa empty."""
    levels = [np.arange(n)]
    p = n ** (-1 / kappa)
    for _ in range(1, kappa):
        prev = levels[-1]
        levels.append(prev[rng.random(prev.size) < p])
    levels.append(np.arange(0))
    return levels


def _nearest(dist_row: np.ndarray, members: np.ndarray) -> tuple[float, int]:
    """Distance to and id of the nearest member; ties go to the smallest id."""
    if members.size == 0:
        return INF, -1
    d = dist_row[members]
    best = d.min()
    if not np.isfinite(best):
        return INF, -1
    return best, int(members[d == best].min())


def _tz_pairs(dist: np.ndarray, levels) -> set[tuple[int, int]]:
    n = dist.shape[0]
    kappa = len(levels) - 1
    pairs = set()
    for u in range(n):
        for i in range(kappa):
            here = np.setdiff1d(levels[i], levels[i + 1], assume_unique=True)
            d_next, _ = _nearest(dist[u], levels[i + 1])
            _, pivot = _nearest(dist[u], levels[i])
            if pivot >= 0 and pivot != u:
                pairs.add((min(u, pivot), max(u, pivot)))
            bunch = here[dist[u, here] < d_next]
            for v in bunch:
                if v != u and np.isfinite(dist[u, v]):
                    pairs.add((min(u, int(v)), max(u, int(v))))
    return pairs


def _edges_for(pairs, dist, parents) -> list[HopsetEdge]:
    return [
        HopsetEdge(u, v, int(dist[u, v]), tuple(tree_path(parents[u], u, v)))
        for u, v in sorted(pairs)
    ]


def build_hopset(
    G: WeightedGraph,
    kappa: int,
    eps: float,
    seed: int = 0,
    deterministic: bool = False,
    max_tries: int = 20,
    size_constant: float = SIZE_CONSTANT,
) -> Hopset:
    """Sample a hierarchy, add pivot and bunch edges, then fix the hop bound.

    With ``deterministic`` the construction is repeated with seeds
    ``seed, seed+1, ...`` until both the size bound and the hop bound check
    pass.
    """
    if G.directed:
        raise GraphError("hopsets are built for undirected graphs")
    if int(kappa) != kappa or kappa < 1:
        raise ValueError(f"kappa must be an integer >= 1, got {kappa}")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    dist, parents = _exact_trees(G)
    tries = max_tries if deterministic else 1
    for attempt in range(tries):
        rng = np.random.default_rng(seed + attempt)
        levels = _sample_levels(G.n, kappa, rng)
        edges = _edges_for(_tz_pairs(dist, levels), dist, parents)
        H = Hopset(edges, kappa, 1, eps, seed + attempt, [lv.tolist() for lv in levels])
        beta = find_beta(G, H, eps, dist, cap=beta_cap(kappa, eps))
        ok_size = len(edges) <= size_bound(G.n, kappa, size_constant)
        if beta is not None and (ok_size or not deterministic):
            H.beta_bound = beta
            return H
    raise RuntimeError(f"no valid hopset after {tries} attempts")


def oracle_hopset(G: WeightedGraph) -> Hopset:
    """All finite pairs joined by their exact distance: a (0, 1)-hopset."""
    if G.directed:
        raise GraphError("hopsets are built for undirected graphs")
    dist, parents = _exact_trees(G)
    pairs = {(u, v) for u in range(G.n) for v in range(u + 1, G.n) if np.isfinite(dist[u, v])}
    return Hopset(_edges_for(pairs, dist, parents), kappa=1, beta_bound=1, eps=0.0)


def bounded_distance_matrix(A: np.ndarray, beta: int) -> np.ndarray:
    """All-pairs beta-bounded distances from a zero-diagonal adjacency matrix."""
    n = A.shape[0]
    D = np.full((n, n), INF)
    np.fill_diagonal(D, 0)
    power = A
    while beta:
        if beta & 1:
            D = minplus_naive(D, power)
        beta >>= 1
        if beta:
            power = minplus_naive(power, power)
    return D


def _stretch(D: np.ndarray, exact: np.ndarray) -> tuple[float, bool]:
    fin = np.isfinite(exact)
    if (D[fin] < exact[fin]).any() or np.isfinite(D[~fin]).any():
        return INF, False
    if np.isinf(D[fin]).any():
        return INF, True
    pos = fin & (exact > 0)
    if not pos.any():
        return 0.0, True
    return float(max(0.0, (D[pos] / exact[pos]).max() - 1)), True


def find_beta(G, H, eps, exact=None, cap=None) -> int | None:
    """Smallest beta with every beta-bounded stretch within 1 + eps, or None above ``cap``.

    Keeps D^(2^j) by repeated squaring, then climbs down the powers the way
    binary lifting does; the predicate is monotone in beta.
    """
    exact = _exact_trees(G)[0] if exact is None else exact
    A = adjacency_matrix(G, H)
    cap = max(1, G.n - 1) if cap is None else cap
    powers = [A]
    while _stretch(powers[-1], exact)[0] > eps + 1e-12:
        if 2 ** (len(powers) - 1) >= cap:
            return None
        powers.append(minplus_naive(powers[-1], powers[-1]))
    n = G.n
    cur = np.full((n, n), INF)
    np.fill_diagonal(cur, 0)
    hops = 0
    for j in range(len(powers) - 1, -1, -1):
        cand = minplus_naive(cur, powers[j])
        if _stretch(cand, exact)[0] > eps + 1e-12:
            cur = cand
            hops += 2**j
    beta = hops + 1
    return beta if beta <= cap else None


def beta_for(G: WeightedGraph, H: Hopset, eps: float) -> int:
    """Hop bound of an existing hopset for another eps (never more than n - 1)."""
    beta = find_beta(G, H, eps, cap=max(1, G.n - 1))
    return max(1, G.n - 1) if beta is None else beta


def verify_hopset(G: WeightedGraph, H, eps: float, beta: int, sample: int = 64, seed: int = 0) -> HopsetReport:
    """Measure the worst beta-bounded stretch in G plus H.

    All pairs are checked when n <= 512; otherwise ``sample`` random sources
    against every target.  A pair that is connected in G but has no
    beta-bounded path reports ``eps_measured = inf``.
    """
    if beta < 1:
        raise ValueError("beta must be at least 1")
    if G.n <= FULL_CHECK_LIMIT:
        sources = np.arange(G.n)
    else:
        sources = np.sort(np.random.default_rng(seed).choice(G.n, size=sample, replace=False))
    extra = list(H) if H is not None else None
    adj = G.adjacency_lists()
    worst, lower_ok = 0.0, True
    for s in sources:
        exact = shortest_path_tree(G, int(s), adj)[0]
        D = bounded_bellman_ford(G, int(s), beta, extra)
        st, ok = _stretch(D[None, :], exact[None, :])
        lower_ok &= ok
        worst = max(worst, st)
    size = len(H) if H is not None else 0
    return HopsetReport(worst, size, beta, lower_ok, len(sources) * G.n)


# -- serialization --------------------------------------------------------

def format_hopset(H: Hopset, n: int) -> str:
    """Graph edge-list format with a fourth column holding the comma-separated path."""
    out = [f"# kappa={H.kappa} beta={H.beta_bound}", f"{n} {len(H.edges)} 0"]
    out += [f"{e.u} {e.v} {e.weight} {','.join(map(str, e.path))}" for e in H.edges]
    return "\n".join(out) + "\n"


def parse_hopset(text: str) -> Hopset:
    meta = {}
    rows = []
    for ln in text.splitlines():
        ln = ln.strip()
        if ln.startswith("#"):
            for tok in ln[1:].split():
                key, _, val = tok.partition("=")
                meta[key] = int(val)
        elif ln:
            rows.append(ln.split())
    header, body = rows[0], rows[1:]
    if int(header[1]) != len(body):
        raise GraphError("hopset header edge count mismatch")
    edges = [HopsetEdge(int(u), int(v), int(w), tuple(int(x) for x in p.split(","))) for u, v, w, p in body]
    return Hopset(edges, meta.get("kappa", 1), meta.get("beta", 1))


def write_hopset(H: Hopset, n: int, path) -> None:
    Path(path).write_text(format_hopset(H, n))


def read_hopset(path) -> Hopset:
    return parse_hopset(Path(path).read_text())
