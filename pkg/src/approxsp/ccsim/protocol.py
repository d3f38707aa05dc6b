"""Rectangular integer products and distance products on the simulated clique.

Vertex x is identified with the pair ``(x // q, x % q)`` for ``q = sqrt(n)``.
The s x n left matrix is viewed as a p x q matrix of q x q blocks (rows past
s are zero padding) and the right matrix as q x q blocks; block ``(i, j)`` of
A has entry ``(y1, y2)`` equal to ``A[i*q + y1, j*q + y2]``.  Vertex
``y = (y1, y2)`` is responsible for position ``(y1, y2)`` of every block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..core import WeightedGraph, adjacency_matrix, check_dist
from ..intmm import as_int_matrix, zeros
from ..minplus import ScaleParams, _clamp, decode, encode, max_finite
from ..msp import check_sources
from .bilinear import BilinearAlgorithm, for_clique
from .network import CliqueNetwork, words_of


@dataclass(frozen=True)
class ProductSchedule:
    """Rounds per phase, fixed in advance from an entry bound and the scheme."""

    spread: int
    combine: int
    local: int
    collect: int

    @property
    def total(self) -> int:
        return self.spread + self.combine + self.local + self.collect


def _grid(n: int) -> int:
    q = math.isqrt(n)
    if q * q != n:
        raise ValueError(f"the q = sqrt(n) layout needs a perfect square, got n={n}")
    return q


def plan_product(n: int, s: int, alg: BilinearAlgorithm, entry_bound: int, bandwidth: int) -> ProductSchedule:
    """Worst-case words per ordered pair in each phase, turned into round counts."""
    q = _grid(n)
    per_owner = -(-alg.m // n)
    a_bound = entry_bound * int(np.abs(alg.alpha).sum(axis=(1, 2)).max())
    b_bound = entry_bound * int(np.abs(alg.beta).sum(axis=(1, 2)).max())
    c_bound = q * a_bound * b_bound
    u_bound = c_bound * int(np.abs(alg.gamma).sum(axis=0).max())

    def rounds(words):
        return -(-words // bandwidth)

    wb = words_of
    return ProductSchedule(
        spread=rounds(2 * q * wb(entry_bound)),
        combine=rounds(per_owner * (wb(a_bound) + wb(b_bound))),
        local=rounds(per_owner * wb(c_bound)),
        collect=rounds(q * wb(u_bound)),
    )


def cc_integer_product(net: CliqueNetwork, A, B, alg: BilinearAlgorithm | None = None,
                       entry_bound: int | None = None) -> np.ndarray:
    """Multiply an s x n integer matrix by an n x n one, row x of each starting at vertex x.

    Four phases: spread block slices, form the linear combinations, multiply
    the m block products locally and return their entries, recombine and
    send each output entry to the owner of its row.  Products are assigned
    to vertices round-robin when m exceeds n.
    """
    A, B = as_int_matrix(A), as_int_matrix(B)
    n = net.n
    s = A.shape[0]
    if A.shape[1] != n or B.shape != (n, n) or not 1 <= s <= n:
        raise ValueError(f"need s x n by n x n with s <= n = {n}, got {A.shape} x {B.shape}")
    q = _grid(n)
    alg = for_clique("naive", n, s) if alg is None else alg
    if alg.q != q or alg.p * q < s:
        raise ValueError(f"scheme {alg.name} has blocks {alg.p}x{alg.q}, layout needs q={q}, p*q >= {s}")
    p, m = alg.p, alg.m
    if entry_bound is None:
        entry_bound = max(max((abs(int(v)) for v in A.flat), default=0), max((abs(int(v)) for v in B.flat), default=0))
    plan = plan_product(n, s, alg, entry_bound, net.bandwidth)

    # phase 1: x = (x1, x2) sends columns (*, y2) of its rows to (x2, y2)
    for x in range(n):
        x2 = x % q
        for y2 in range(q):
            cols = [j * q + y2 for j in range(q)]
            dst = x2 * q + y2
            if x < s:
                net.send(x, dst, ("A", x), A[x, cols])
            net.send(x, dst, ("B", x), B[x, cols])
    net.deliver(plan.spread, "spread")

    local_a, local_b = [], []
    for y in range(n):
        y1 = y // q
        la = zeros((p, q))
        lb = zeros((q, q))
        for tag in [t for t in net.inbox[y] if t[0] in ("A", "B")]:
            (src, vals), = net.take(y, tag)
            i = src // q
            if src % q != y1:
                raise AssertionError("slice delivered to the wrong vertex")
            (la if tag[0] == "A" else lb)[i, :] = vals
        local_a.append(la)
        local_b.append(lb)

    # phase 2: y forms its entry of every A^(x), B^(x) and sends it to the owner of x
    for y in range(n):
        la, lb = local_a[y], local_b[y]
        for x in range(m):
            a = _combine(alg.alpha[x], la)
            b = _combine(alg.beta[x], lb)
            net.send(y, x % n, ("comb", x), [a, b])
    net.deliver(plan.combine, "combine")

    # phase 3: owners multiply their q x q products and return entry (y1, y2) to y
    for owner in range(n):
        for x in range(owner, m, n):
            Ax, Bx = zeros((q, q)), zeros((q, q))
            for src, (a, b) in net.take(owner, ("comb", x)):
                Ax[src // q, src % q] = a
                Bx[src // q, src % q] = b
            Cx = Ax.dot(Bx)
            for y in range(n):
                net.send(owner, y, ("prod", x), [Cx[y // q, y % q]])
    net.deliver(plan.local, "local")

    # phase 4: y recombines and ships entry ((i, y1), (j, y2)) to the owner of row i*q + y1
    for y in range(n):
        y1, y2 = divmod(y, q)
        got = zeros(m)
        for x in range(m):
            (src, (v,)), = net.take(y, ("prod", x))
            got[x] = v
        for i in range(p):
            row = i * q + y1
            if row >= s:
                continue
            vals = [_dot(alg.gamma[:, i, j], got) for j in range(q)]
            net.send(y, row, ("out", y2), vals)
    net.deliver(plan.collect, "collect")

    C = zeros((s, n))
    for row in range(s):
        for y2 in range(q):
            for src, vals in net.take(row, ("out", y2)):
                if src % q != y2:
                    raise AssertionError("output entry delivered from the wrong column group")
                for j, v in enumerate(vals):
                    C[row, j * q + y2] = v
    return C


def _combine(coeff: np.ndarray, local: np.ndarray) -> int:
    total = 0
    for (i, j) in zip(*np.nonzero(coeff)):
        total += int(coeff[i, j]) * local[i, j]
    return total


def _dot(coeff: np.ndarray, values: np.ndarray) -> int:
    total = 0
    for x in np.flatnonzero(coeff):
        total += int(coeff[x]) * values[x]
    return total


def cc_approx_minplus(net: CliqueNetwork, A, B, R: int, M: int | None = None,
                      alg: BilinearAlgorithm | None = None) -> np.ndarray:
    """(1 + 1/R)-approximate distance product by scaling, one clique product per scale.

    Encoding and decoding are local to the row owners; the schedule and
    ``R_internal`` match the centralized :func:`approx_minplus` exactly.
    """
    A, B = check_dist(A), check_dist(B)
    n = net.n
    M = max_finite(A, B) if M is None else M
    params = ScaleParams(R, M)
    Ri = params.R_internal
    bound = (n + 1) ** Ri
    best = np.full((A.shape[0], B.shape[1]), np.inf)
    for k in params.scales():
        Ak, Bk = _clamp(A, k, Ri), _clamp(B, k, Ri)
        C_hat = cc_integer_product(net, encode(Ak, Ri, n), encode(Bk, Ri, n), alg, entry_bound=bound)
        np.minimum(best, decode(C_hat, Ri, n) * 2**k, out=best)
    return best


def cc_asp(net: CliqueNetwork, G: WeightedGraph, S, H, eps: float,
           alg: BilinearAlgorithm | None = None) -> np.ndarray:
    """beta - 1 clique distance products against the adjacency of G plus H, with R = ceil(1/eps).

    Each step keeps ``min(B, approx(B * A))`` exactly like the centralized
    chain, so the two agree entry for entry.
    """
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    S = check_sources(G, S)
    R = math.ceil(1 / eps)
    A = adjacency_matrix(G, H)
    Bt = A[S].copy()
    for _ in range(1, H.beta_bound):
        M = max_finite(Bt, A)
        Bt = np.minimum(Bt, cc_approx_minplus(net, Bt, A, R, M, alg))
    return Bt


def rounds_per_product(n: int, s: int, R: int, alg: BilinearAlgorithm, bandwidth: int = 1) -> int:
    return plan_product(n, s, alg, (n + 1) ** (4 * R), bandwidth).total
