"""Graphs, distance matrices and the exact oracles everything else is checked against.

Distance matrices are plain ``float64`` numpy arrays holding integers, with
``np.inf`` as the infinity element.  Finite entries must stay below 2**53 so
every integer is represented exactly; :func:`check_dist` enforces this.
"""

from __future__ import annotations

import csv
import heapq
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

INF = np.inf
EXACT_LIMIT = 2**53
DEFAULT_POLY_EXPONENT = 4


class GraphError(ValueError):
    """Malformed graph input (bad vertex id, weight, duplicate edge...)."""


class NoPathError(LookupError):
    """Requested a path for a pair whose estimate is infinite."""


@dataclass(frozen=True)
class WeightedGraph:
    """Positive integer weighted graph on vertices ``0..n-1``.

    Undirected graphs store every edge once.  Parallel edges are allowed and
    collapse to their minimum weight when matrices are built.
    """

    n: int
    edges: tuple[tuple[int, int, int], ...] = ()
    directed: bool = False
    poly_exponent: int = DEFAULT_POLY_EXPONENT

    def __post_init__(self):
        if self.n < 1:
            raise GraphError(f"need at least one vertex, got n={self.n}")
        edges = tuple((int(u), int(v), int(w)) for u, v, w in self.edges)
        object.__setattr__(self, "edges", edges)
        for u, v, w in edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u},{v}) out of range for n={self.n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if w < 1:
                raise GraphError(f"weight {w} on ({u},{v}) is not positive")
        bound = max(self.n, 2) ** self.poly_exponent
        if self.M > bound:
            raise GraphError(f"max weight {self.M} exceeds n^{self.poly_exponent}={bound}")

    @property
    def M(self) -> int:
        return max((w for _, _, w in self.edges), default=0)

    @property
    def m(self) -> int:
        return len(self.edges)

    def arcs(self) -> Iterable[tuple[int, int, int]]:
        """Every traversable direction of every edge."""
        for u, v, w in self.edges:
            yield u, v, w
            if not self.directed:
                yield v, u, w

    def adjacency_lists(self) -> list[list[tuple[int, int]]]:
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for u, v, w in self.arcs():
            adj[u].append((v, w))
        return adj

    def edge_weight(self, u: int, v: int) -> int | None:
        """Lightest edge weight from u to v, or None."""
        best = None
        for a, b, w in self.arcs():
            if a == u and b == v and (best is None or w < best):
                best = w
        return best

    def arc_weights(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for u, v, w in self.arcs():
            if (u, v) not in out or w < out[(u, v)]:
                out[(u, v)] = w
        return out

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, (int, np.integer)) and 0 <= v < self.n):
            raise GraphError(f"invalid vertex id {v!r} for n={self.n}")


@dataclass
class DistMatrix:
    """A distance matrix with the vertex ids its rows and columns stand for."""

    values: np.ndarray
    row_labels: list[int] = field(default_factory=list)
    col_labels: list[int] = field(default_factory=list)

    def __post_init__(self):
        self.values = check_dist(self.values)
        s, q = self.values.shape
        if not self.row_labels:
            self.row_labels = list(range(s))
        if not self.col_labels:
            self.col_labels = list(range(q))
        if len(self.row_labels) != s or len(self.col_labels) != q:
            raise ValueError("label count does not match matrix shape")

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def entry(self, u: int, v: int) -> float:
        return self.values[self.row_labels.index(u), self.col_labels.index(v)]

    def to_csv(self, path=None) -> str:
        text = matrix_to_csv(self.values, self.row_labels, self.col_labels)
        if path is not None:
            Path(path).write_text(text)
        return text


@dataclass(frozen=True)
class PathResult:
    vertices: tuple[int, ...]
    length: int

    def validate(self, G: WeightedGraph) -> None:
        """Raise if consecutive vertices are not joined by edges summing to ``length``."""
        if self.length != path_length(G, self.vertices):
            raise AssertionError(f"stored length {self.length} differs from replay")


def path_length(G: WeightedGraph, vertices: Sequence[int]) -> int:
    weights = G.arc_weights()
    total = 0
    for a, b in zip(vertices, vertices[1:]):
        if (a, b) not in weights:
            raise AssertionError(f"({a},{b}) is not an edge of the graph")
        total += weights[(a, b)]
    return total


def check_dist(values) -> np.ndarray:
    """Coerce to a float64 distance array; finite entries must be exact non-negative integers."""
    arr = np.array(values, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"distance matrix must be 2-d, got shape {arr.shape}")
    finite = arr[np.isfinite(arr)]
    if np.isnan(arr).any() or (arr == -np.inf).any():
        raise ValueError("distance matrix contains NaN or -inf")
    if finite.size:
        if finite.min() < 0:
            raise ValueError("negative distance entry")
        if finite.max() >= EXACT_LIMIT:
            raise OverflowError("distance entry exceeds exact float range")
        if not np.all(finite == np.floor(finite)):
            raise ValueError("distance entries must be integers")
    return arr


def dijkstra(G: WeightedGraph, src: int) -> np.ndarray:
    """Exact single-source distances; ``inf`` for unreachable vertices."""
    return shortest_path_tree(G, src)[0]


def shortest_path_tree(G: WeightedGraph, src: int, adj=None) -> tuple[np.ndarray, list[int]]:
    """Dijkstra returning distances and parent pointers (-1 at the root and unreached).

    Among equal-length predecessors the smallest vertex id wins, so the tree
    is deterministic.
    """
    G.check_vertex(src)
    adj = G.adjacency_lists() if adj is None else adj
    dist = np.full(G.n, INF)
    parent = [-1] * G.n
    dist[src] = 0
    heap = [(0, src)]
    done = [False] * G.n
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, w in adj[u]:
            nd = d + w
            if nd < dist[v] or (nd == dist[v] and not done[v] and u < parent[v]):
                dist[v] = nd
                parent[v] = u
                heapq.heappush(heap, (nd, v))
    return dist, parent


def all_pairs_dijkstra(G: WeightedGraph) -> np.ndarray:
    adj = G.adjacency_lists()
    return np.vstack([shortest_path_tree(G, s, adj)[0] for s in range(G.n)])


def tree_path(parent: Sequence[int], src: int, dst: int) -> list[int]:
    path = [dst]
    while path[-1] != src:
        p = parent[path[-1]]
        if p < 0:
            raise NoPathError(f"{dst} not reachable from {src}")
        path.append(p)
    return path[::-1]


def adjacency_matrix(G: WeightedGraph, extra=None) -> np.ndarray:
    """n x n matrix of the lightest edge between each pair, 0 on the diagonal.

    ``extra`` is an optional hopset (or any iterable of ``(u, v, w, ...)``
    tuples); its edges follow the graph's directedness.
    """
    A = np.full((G.n, G.n), INF)
    for u, v, w in G.arcs():
        if w < A[u, v]:
            A[u, v] = w
    if extra is not None:
        for e in extra:
            u, v, w = int(e[0]), int(e[1]), int(e[2])
            G.check_vertex(u)
            G.check_vertex(v)
            pairs = [(u, v)] if G.directed else [(u, v), (v, u)]
            for a, b in pairs:
                if w < A[a, b]:
                    A[a, b] = w
    np.fill_diagonal(A, 0)
    return A


def _arc_arrays(G: WeightedGraph, extra=None):
    arcs = list(G.arcs())
    if extra is not None:
        for e in extra:
            u, v, w = int(e[0]), int(e[1]), int(e[2])
            arcs.append((u, v, w))
            if not G.directed:
                arcs.append((v, u, w))
    if not arcs:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, np.zeros(0)
    a = np.array(arcs, dtype=np.int64)
    return a[:, 0], a[:, 1], a[:, 2].astype(np.float64)


def bounded_bellman_ford(G: WeightedGraph, src: int, beta: int, extra=None) -> np.ndarray:
    """Shortest distances from ``src`` using at most ``beta`` edges of G (plus ``extra``)."""
    if beta < 0:
        raise ValueError("hop budget must be non-negative")
    G.check_vertex(src)
    tails, heads, w = _arc_arrays(G, extra)
    dist = np.full(G.n, INF)
    dist[src] = 0
    for _ in range(beta):
        relaxed = dist.copy()
        np.minimum.at(relaxed, heads, dist[tails] + w)
        if np.array_equal(relaxed, dist):
            break
        dist = relaxed
    return dist


# -- file formats ---------------------------------------------------------

def parse_graph(text: str, keep_min: bool = False) -> WeightedGraph:
    """Parse ``n m directed`` followed by ``m`` lines of ``u v w``."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphError("empty graph file")
    try:
        n, m, directed = (int(t) for t in lines[0].split())
    except ValueError as exc:
        raise GraphError(f"bad header line {lines[0]!r}") from exc
    if directed not in (0, 1):
        raise GraphError("directed flag must be 0 or 1")
    if len(lines) - 1 != m:
        raise GraphError(f"header promises {m} edges, found {len(lines) - 1}")
    best: dict[tuple[int, int], int] = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise GraphError(f"bad edge line {ln!r}")
        u, v, w = (int(t) for t in parts)
        key = (u, v) if directed or u <= v else (v, u)
        if key in best:
            if not keep_min:
                raise GraphError(f"duplicate edge {key}")
            best[key] = min(best[key], w)
        else:
            best[key] = w
    edges = tuple((u, v, w) for (u, v), w in best.items())
    return WeightedGraph(n, edges, directed=bool(directed))


def read_graph(path, keep_min: bool = False) -> WeightedGraph:
    return parse_graph(Path(path).read_text(), keep_min=keep_min)


def format_graph(G: WeightedGraph) -> str:
    out = [f"{G.n} {G.m} {int(G.directed)}"]
    out += [f"{u} {v} {w}" for u, v, w in G.edges]
    return "\n".join(out) + "\n"


def write_graph(G: WeightedGraph, path) -> None:
    Path(path).write_text(format_graph(G))


def _fmt(x: float) -> str:
    return "INF" if np.isinf(x) else str(int(x))


def matrix_to_csv(values: np.ndarray, row_labels=None, col_labels=None) -> str:
    """CSV with a header of column labels and the row label in column one."""
    s, q = values.shape
    row_labels = list(range(s)) if row_labels is None else row_labels
    col_labels = list(range(q)) if col_labels is None else col_labels
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["row"] + [str(c) for c in col_labels])
    for lab, row in zip(row_labels, values):
        w.writerow([str(lab)] + [_fmt(x) for x in row])
    return buf.getvalue()


def matrix_from_csv(text: str) -> DistMatrix:
    rows = list(csv.reader(io.StringIO(text)))
    cols = [int(c) for c in rows[0][1:]]
    labels, vals = [], []
    for r in rows[1:]:
        labels.append(int(r[0]))
        vals.append([INF if t == "INF" else float(int(t)) for t in r[1:]])
    return DistMatrix(np.array(vals, dtype=np.float64).reshape(len(labels), len(cols)), labels, cols)
