import numpy as np
from hypothesis import strategies as st

from approxsp.core import WeightedGraph
from approxsp.experiments import generate_graph


def random_dist(rng, shape, max_value, inf_prob=0.2, low=0):
    X = rng.integers(low, max_value + 1, shape).astype(float)
    X[rng.random(shape) < inf_prob] = np.inf
    return X


@st.composite
def dist_matrices(draw, rows=st.integers(1, 6), inner=st.integers(1, 6), cols=st.integers(1, 6), max_value=64):
    s, n, q = draw(rows), draw(inner), draw(cols)
    entry = st.one_of(st.integers(0, max_value).map(float), st.just(np.inf))
    A = np.array(draw(st.lists(entry, min_size=s * n, max_size=s * n)), dtype=float).reshape(s, n)
    B = np.array(draw(st.lists(entry, min_size=n * q, max_size=n * q)), dtype=float).reshape(n, q)
    return A, B


@st.composite
def small_graphs(draw, min_n=1, max_n=8, max_weight=9, directed=None):
    n = draw(st.integers(min_n, max_n))
    d = draw(st.booleans()) if directed is None else directed
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v and (d or u < v)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    edges = tuple((u, v, draw(st.integers(1, max_weight))) for u, v in chosen)
    return WeightedGraph(n, edges, directed=d)


def connected(n, seed, p=0.08, max_weight=10, directed=False):
    return generate_graph("gnp", n, {"p": p, "max_weight": max_weight, "connected": True, "directed": directed}, seed)


# criterion number -> "PASS criterion N: ..." line, printed at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


def record(number: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)
