"""Exact products of arbitrary-precision integer matrices.

Matrices are numpy ``object`` arrays of Python ints.  ``schoolbook`` is the
cubic baseline; ``strassen`` recurses on 2x2 block splits down to a leaf size
and must agree with it bit for bit.
"""

from __future__ import annotations

import numpy as np

LEAF = 32


def as_int_matrix(X) -> np.ndarray:
    arr = np.asarray(X, dtype=object)
    if arr.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    return arr


def zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(0)
    return out


def schoolbook(A, B) -> np.ndarray:
    A, B = as_int_matrix(A), as_int_matrix(B)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"inner dimensions differ: {A.shape} x {B.shape}")
    if 0 in A.shape or 0 in B.shape:
        return zeros((A.shape[0], B.shape[1]))
    return A.dot(B)


def _pad(X, rows, cols):
    if X.shape == (rows, cols):
        return X
    P = zeros((rows, cols))
    P[: X.shape[0], : X.shape[1]] = X
    return P


def strassen(A, B, leaf: int = LEAF) -> np.ndarray:
    """Strassen's seven-product recursion, padding odd dimensions with zeros."""
    A, B = as_int_matrix(A), as_int_matrix(B)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"inner dimensions differ: {A.shape} x {B.shape}")
    s, n = A.shape
    q = B.shape[1]
    if min(s, n, q) <= leaf:
        return schoolbook(A, B)
    s2, n2, q2 = (s + 1) // 2, (n + 1) // 2, (q + 1) // 2
    A = _pad(A, 2 * s2, 2 * n2)
    B = _pad(B, 2 * n2, 2 * q2)
    a11, a12 = A[:s2, :n2], A[:s2, n2:]
    a21, a22 = A[s2:, :n2], A[s2:, n2:]
    b11, b12 = B[:n2, :q2], B[:n2, q2:]
    b21, b22 = B[n2:, :q2], B[n2:, q2:]
    m1 = strassen(a11 + a22, b11 + b22, leaf)
    m2 = strassen(a21 + a22, b11, leaf)
    m3 = strassen(a11, b12 - b22, leaf)
    m4 = strassen(a22, b21 - b11, leaf)
    m5 = strassen(a11 + a12, b22, leaf)
    m6 = strassen(a21 - a11, b11 + b12, leaf)
    m7 = strassen(a12 - a22, b21 + b22, leaf)
    C = zeros((2 * s2, 2 * q2))
    C[:s2, :q2] = m1 + m4 - m5 + m7
    C[:s2, q2:] = m3 + m5
    C[s2:, :q2] = m2 + m4
    C[s2:, q2:] = m1 - m2 + m3 + m6
    return C[:s, :q]


def matmul(A, B, method: str = "strassen") -> np.ndarray:
    if method == "strassen":
        return strassen(A, B)
    if method == "schoolbook":
        return schoolbook(A, B)
    raise ValueError(f"unknown integer product {method!r}")
