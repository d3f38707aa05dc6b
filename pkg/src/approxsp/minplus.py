"""Distance products: naive, exact through integer matrix products, and scaled approximations.

The integer route encodes an entry ``a`` as ``(n+1)**(M-a)`` so that the
largest power surviving in an ordinary product reveals the minimum sum.
Scaling keeps the exponents bounded by ``R_internal`` per scale and gives a
one-sided ``(1 + 1/R)`` approximation.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

from . import intmm
from .core import INF, check_dist

NO_WITNESS = -1
# random-subset rounds per count level before falling back to a scan
SAMPLE_ATTEMPTS = 4


@dataclass(frozen=True)
class ScaleParams:
    """Approximation denominator ``R`` and entry bound ``M``.

    ``R_internal = 4R`` is what the scaling loop actually clamps against; it
    is the smallest multiple that makes the public ``1 + 1/R`` bound hold
    at every scale.
    """

    R: int
    M: int

    def __post_init__(self):
        if int(self.R) != self.R or self.R < 1:
            raise ValueError(f"R must be an integer >= 1, got {self.R}")
        if self.M < 0:
            raise ValueError("M must be non-negative")

    @property
    def R_internal(self) -> int:
        return 4 * int(self.R)

    def scales(self) -> range:
        ceil_log_m = max(0, (int(self.M) - 1).bit_length())
        floor_log_r = self.R_internal.bit_length() - 1
        return range(max(0, ceil_log_m - floor_log_r) + 1)


def _check_pair(A, B):
    A, B = check_dist(A), check_dist(B)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"inner dimensions differ: {A.shape} x {B.shape}")
    return A, B


def max_finite(*mats) -> int:
    best = 0
    for X in mats:
        f = X[np.isfinite(X)]
        if f.size:
            best = max(best, int(f.max()))
    return best


def minplus_naive(A, B) -> np.ndarray:
    """C_ij = min_k A_ik + B_kj, evaluated directly."""
    A, B = _check_pair(A, B)
    s, q = A.shape[0], B.shape[1]
    if A.shape[1] == 0:
        return np.full((s, q), INF)
    C = np.empty((s, q))
    # chunk rows so the s x n x q broadcast stays small
    step = max(1, 4_000_000 // max(1, A.shape[1] * q))
    for lo in range(0, s, step):
        C[lo:lo + step] = (A[lo:lo + step, :, None] + B[None, :, :]).min(axis=1)
    return C


def minplus_naive_with_witness(A, B) -> tuple[np.ndarray, np.ndarray]:
    """Reference witnesses by linear scan: the smallest index attaining each minimum."""
    A, B = _check_pair(A, B)
    s, q = A.shape[0], B.shape[1]
    C = np.full((s, q), INF)
    W = np.full((s, q), NO_WITNESS, dtype=np.int64)
    for i in range(s):
        sums = A[i, :, None] + B
        if sums.size == 0:
            continue
        k = sums.argmin(axis=0)
        C[i] = sums[k, np.arange(q)]
        W[i] = np.where(np.isfinite(C[i]), k, NO_WITNESS)
    return C, W


def _powers(base: int, top: int) -> list[int]:
    out = [1]
    for _ in range(top):
        out.append(out[-1] * base)
    return out


def encode(A, M: int, n: int | None = None) -> np.ndarray:
    """Map finite a to (n+1)**(M-a) and inf to 0.

    ``n`` is the inner dimension of the product the matrix takes part in; it
    defaults to the column count, which is right for a left operand.
    """
    A = check_dist(A)
    n = A.shape[1] if n is None else n
    fin = np.isfinite(A)
    if fin.any() and A[fin].max() > M:
        raise ValueError(f"entry {int(A[fin].max())} exceeds bound M={M}")
    pw = np.empty(M + 1, dtype=object)
    pw[:] = _powers(n + 1, M)
    out = intmm.zeros(A.shape)
    out[fin] = pw[(M - A[fin]).astype(np.int64)]
    return out


def decode(C_hat, M: int, n: int) -> np.ndarray:
    """C_ij = 2M - floor(log_{n+1} C_hat_ij); a zero entry decodes to inf."""
    C_hat = intmm.as_int_matrix(C_hat)
    powers = _powers(n + 1, 2 * M + 1)
    out = np.full(C_hat.shape, INF)
    for idx, x in np.ndenumerate(C_hat):
        if x:
            out[idx] = 2 * M - (bisect_right(powers, x) - 1)
    return out


def exact_minplus_via_mm(A, B, M: int | None = None, method: str = "strassen") -> np.ndarray:
    """Exact distance product through one integer matrix product."""
    A, B = _check_pair(A, B)
    M = max_finite(A, B) if M is None else M
    n = A.shape[1]
    C_hat = intmm.matmul(encode(A, M, n), encode(B, M, n), method)
    return decode(C_hat, M, n)


def _clamp(X: np.ndarray, k: int, limit: int) -> np.ndarray:
    f = 2**k
    keep = np.isfinite(X) & (X <= limit * f)
    return np.where(keep, np.ceil(X / f), INF)


def _as_params(params, A, B) -> ScaleParams:
    if isinstance(params, ScaleParams):
        return params
    return ScaleParams(int(params), max_finite(A, B))


def approx_minplus(A, B, params, method: str = "strassen") -> np.ndarray:
    """One-sided (1 + 1/R)-approximate distance product.

    ``params`` is a :class:`ScaleParams` or just ``R`` (then M is read off the
    inputs).  Each scale k clamps entries above ``R_internal * 2**k`` to inf,
    divides by ``2**k`` rounding up, multiplies exactly and scales back.
    """
    A, B = _check_pair(A, B)
    p = _as_params(params, A, B)
    best = np.full((A.shape[0], B.shape[1]), INF)
    for k in p.scales():
        Ak, Bk = _clamp(A, k, p.R_internal), _clamp(B, k, p.R_internal)
        Ck = exact_minplus_via_mm(Ak, Bk, p.R_internal, method)
        np.minimum(best, Ck * 2**k, out=best)
    return best


def approx_minplus_with_witness(A, B, params, method: str = "strassen", seed: int = 0):
    """Approximate product plus a witness matrix.

    Returns ``(C, W)`` with ``C_ij = A_{i,W_ij} + B_{W_ij,j}`` exactly.  The
    witness is taken from the scale that gave the smallest rescaled value, so
    ``C`` is never above what :func:`approx_minplus` reports and keeps the
    same ``(1 + 1/R)`` guarantee.
    """
    A, B = _check_pair(A, B)
    p = _as_params(params, A, B)
    s, q = A.shape[0], B.shape[1]
    n = A.shape[1]
    rng = np.random.default_rng(seed)
    best = np.full((s, q), INF)
    best_scale = np.full((s, q), -1)
    per_scale = {}
    for k in p.scales():
        Ak, Bk = _clamp(A, k, p.R_internal), _clamp(B, k, p.R_internal)
        M = p.R_internal
        A_hat, B_hat = encode(Ak, M, n), encode(Bk, M, n)
        C_hat = intmm.matmul(A_hat, B_hat, method)
        Ck = decode(C_hat, M, n)
        better = Ck * 2**k < best
        best[better] = (Ck * 2**k)[better]
        best_scale[better] = k
        per_scale[k] = (Ak, Bk, A_hat, B_hat, C_hat, Ck)
    W = np.full((s, q), NO_WITNESS, dtype=np.int64)
    for k, (Ak, Bk, A_hat, B_hat, C_hat, Ck) in per_scale.items():
        mask = best_scale == k
        if mask.any():
            Wk = encoded_witnesses(Ak, Bk, A_hat, B_hat, C_hat, Ck, p.R_internal, mask, rng, method)
            W[mask] = Wk[mask]
    C = np.full((s, q), INF)
    ii, jj = np.nonzero(W >= 0)
    C[ii, jj] = A[ii, W[ii, jj]] + B[W[ii, jj], jj]
    return C, W


def encoded_witnesses(A, B, A_hat, B_hat, C_hat, C, M, mask, rng, method="strassen"):
    """Witnesses for an exact encoded product, restricted to entries in ``mask``.

    The base-(n+1) digit of ``C_hat`` at position ``2M - C`` counts the
    indices attaining the minimum.  Entries with one such index read it off
    bit by bit from products restricted to the columns having each bit set;
    entries with several are thinned by random column subsets first.
    Anything still unresolved is scanned directly.
    """
    s, n = A.shape
    q = B.shape[1]
    base = n + 1
    W = np.full((s, q), NO_WITNESS, dtype=np.int64)
    todo = mask & np.isfinite(C)
    if not todo.any():
        return W
    ii, jj = np.nonzero(todo)
    pe = np.empty(len(ii), dtype=object)
    pe[:] = [base ** int(2 * M - c) for c in C[ii, jj]]
    counts = np.array([int(x) for x in C_hat[ii, jj] // pe])

    one = counts == 1
    _resolve_unique(A_hat, B_hat, ii[one], jj[one], pe[one], np.arange(n), W, method)

    for _ in range(SAMPLE_ATTEMPTS):
        left = np.flatnonzero((W[ii, jj] < 0) & (counts > 1))
        if left.size == 0:
            break
        levels = np.floor(np.log2(counts[left])).astype(int)
        for lev in np.unique(levels):
            sel = left[levels == lev]
            cols = np.flatnonzero(rng.random(n) < 2.0 ** -lev)
            if cols.size == 0:
                continue
            rows_u, r_inv = np.unique(ii[sel], return_inverse=True)
            cols_u, c_inv = np.unique(jj[sel], return_inverse=True)
            sub = intmm.matmul(A_hat[np.ix_(rows_u, cols)], B_hat[np.ix_(cols, cols_u)], method)
            got = np.array([int(x) for x in sub[r_inv, c_inv] // pe[sel]])
            hit = sel[got == 1]
            _resolve_unique(A_hat, B_hat, ii[hit], jj[hit], pe[hit], cols, W, method)

    for t in np.flatnonzero(W[ii, jj] < 0):
        i, j = ii[t], jj[t]
        W[i, j] = int(np.argmin(A[i] + B[:, j]))

    got = A[ii, W[ii, jj]] + B[W[ii, jj], jj]
    if not np.array_equal(got, C[ii, jj]):
        raise AssertionError("witness recovery produced a non-minimal index")
    return W


def _resolve_unique(A_hat, B_hat, ii, jj, pe, cols, W, method):
    """Fill W for entries whose minimum is attained by exactly one index in ``cols``."""
    if len(ii) == 0:
        return
    rows_u, r_inv = np.unique(ii, return_inverse=True)
    cols_u, c_inv = np.unique(jj, return_inverse=True)
    local = np.zeros(len(ii), dtype=np.int64)
    nbits = max(1, (len(cols) - 1).bit_length())
    positions = np.arange(len(cols))
    for b in range(nbits):
        ks = cols[(positions >> b) & 1 == 1]
        if ks.size == 0:
            continue
        sub = intmm.matmul(A_hat[np.ix_(rows_u, ks)], B_hat[np.ix_(ks, cols_u)], method)
        digit = np.array([int(x) for x in sub[r_inv, c_inv] // pe])
        local |= digit.astype(np.int64) << b
    W[ii, jj] = cols[local]


def sparse_minplus_with_witness(A, B, k: int | None = None):
    """Exact distance product touching only finite candidates.

    Returns ``(C, W, ops)`` where ``ops`` counts candidate sums with both
    terms finite, i.e. ``sum_ij |finite(A_i*) & finite(B_*j)|``.  When ``k``
    is given, rows of A and columns of B are checked to hold at most ``k``
    finite entries.
    """
    A, B = _check_pair(A, B)
    finA = np.isfinite(A)
    finB = np.isfinite(B)
    if k is not None:
        if finA.sum(axis=1).max(initial=0) > k:
            raise ValueError(f"left operand has a row with more than {k} finite entries")
        if finB.sum(axis=0).max(initial=0) > k:
            raise ValueError(f"right operand has a column with more than {k} finite entries")
    s, q = A.shape[0], B.shape[1]
    C = np.full((s, q), INF)
    W = np.full((s, q), NO_WITNESS, dtype=np.int64)
    ops = 0
    for i in range(s):
        ks = np.flatnonzero(finA[i])
        if ks.size == 0:
            continue
        sums = A[i, ks][:, None] + B[ks, :]
        ops += int(finB[ks, :].sum())
        pos = sums.argmin(axis=0)
        row = sums[pos, np.arange(q)]
        C[i] = row
        W[i] = np.where(np.isfinite(row), ks[pos], NO_WITNESS)
    return C, W, ops


def sparse_minplus(A, B, k: int | None = None) -> np.ndarray:
    return sparse_minplus_with_witness(A, B, k)[0]


def approx_factor(R: int, steps: int = 1) -> float:
    return (1 + 1 / R) ** steps

