"""Bilinear block matrix multiplication schemes given by coefficient tables."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

# Strassen's seven products on 2x2 blocks
_S_ALPHA = [
    [[1, 0], [0, 1]],
    [[0, 0], [1, 1]],
    [[1, 0], [0, 0]],
    [[0, 0], [0, 1]],
    [[1, 1], [0, 0]],
    [[-1, 0], [1, 0]],
    [[0, 1], [0, -1]],
]
_S_BETA = [
    [[1, 0], [0, 1]],
    [[1, 0], [0, 0]],
    [[0, 1], [0, -1]],
    [[-1, 0], [1, 0]],
    [[0, 0], [0, 1]],
    [[1, 1], [0, 0]],
    [[0, 0], [1, 1]],
]
_S_GAMMA = [
    [[1, 0], [0, 1]],
    [[0, 0], [1, -1]],
    [[0, 1], [0, 1]],
    [[1, 0], [1, 0]],
    [[-1, 1], [0, 0]],
    [[0, 0], [0, 1]],
    [[1, 0], [0, 0]],
]


@dataclass
class BilinearAlgorithm:
    """Multiplies a p x q block matrix S by a q x q block matrix T with m block products.

    Product x is ``(sum alpha[x] * S) @ (sum beta[x] * T)`` and block ``U_ij``
    of the result is ``sum_x gamma[x, i, j] * product_x``.
    """

    name: str
    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray

    def __post_init__(self):
        self.alpha = np.asarray(self.alpha, dtype=np.int64)
        self.beta = np.asarray(self.beta, dtype=np.int64)
        self.gamma = np.asarray(self.gamma, dtype=np.int64)
        m, p, q = self.alpha.shape
        if self.beta.shape != (m, q, q) or self.gamma.shape != (m, p, q):
            raise ValueError(
                f"coefficient shapes disagree: {self.alpha.shape}, {self.beta.shape}, {self.gamma.shape}"
            )
        self.validate()

    @property
    def m(self) -> int:
        return self.alpha.shape[0]

    @property
    def p(self) -> int:
        return self.alpha.shape[1]

    @property
    def q(self) -> int:
        return self.alpha.shape[2]

    def multiply_blocks(self, S: list[list[np.ndarray]], T: list[list[np.ndarray]]):
        """Evaluate the scheme on nested lists of (object or int) blocks."""
        p, q = self.p, self.q
        U = [[0 for _ in range(q)] for _ in range(p)]
        for x in range(self.m):
            a = sum(int(self.alpha[x, i, j]) * S[i][j] for i in range(p) for j in range(q) if self.alpha[x, i, j])
            b = sum(int(self.beta[x, i, j]) * T[i][j] for i in range(q) for j in range(q) if self.beta[x, i, j])
            if isinstance(a, int) or isinstance(b, int):
                continue
            prod = a.dot(b)
            for i in range(p):
                for j in range(q):
                    g = int(self.gamma[x, i, j])
                    if g:
                        U[i][j] = U[i][j] + g * prod
        return U

    def validate(self, trials: int = 2, block: int = 2, seed: int = 0) -> None:
        """Check the identity on random non-commuting integer blocks."""
        rng = np.random.default_rng(seed)
        p, q = self.p, self.q
        for _ in range(trials):
            S = rng.integers(-5, 6, (p * block, q * block)).astype(object)
            T = rng.integers(-5, 6, (q * block, q * block)).astype(object)
            Sb = [[S[i * block:(i + 1) * block, j * block:(j + 1) * block] for j in range(q)] for i in range(p)]
            Tb = [[T[i * block:(i + 1) * block, j * block:(j + 1) * block] for j in range(q)] for i in range(q)]
            U = self.multiply_blocks(Sb, Tb)
            expect = S.dot(T)
            for i in range(p):
                for j in range(q):
                    got = U[i][j]
                    want = expect[i * block:(i + 1) * block, j * block:(j + 1) * block]
                    if isinstance(got, int):
                        got = np.zeros_like(want)
                    if not np.array_equal(got, want):
                        raise ValueError(f"bilinear scheme {self.name!r} is not a valid product")

    def to_json(self) -> str:
        return json.dumps({
            "name": self.name,
            "alpha": self.alpha.tolist(),
            "beta": self.beta.tolist(),
            "gamma": self.gamma.tolist(),
        })

    @classmethod
    def from_json(cls, text: str) -> "BilinearAlgorithm":
        d = json.loads(text)
        return cls(d.get("name", "custom"), d["alpha"], d["beta"], d["gamma"])

    @classmethod
    def load(cls, path) -> "BilinearAlgorithm":
        return cls.from_json(Path(path).read_text())


def naive(p: int, q: int) -> BilinearAlgorithm:
    """One product per (i, l, j) triple: m = p * q * q."""
    m = p * q * q
    alpha = np.zeros((m, p, q), dtype=np.int64)
    beta = np.zeros((m, q, q), dtype=np.int64)
    gamma = np.zeros((m, p, q), dtype=np.int64)
    x = 0
    for i in range(p):
        for l in range(q):
            for j in range(q):
                alpha[x, i, l] = beta[x, l, j] = gamma[x, i, j] = 1
                x += 1
    return BilinearAlgorithm(f"naive{p}x{q}", alpha, beta, gamma)


def _kron(outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    mo, ro, co = outer.shape
    mi, ri, ci = inner.shape
    return np.einsum("aij,bkl->abikjl", outer, inner).reshape(mo * mi, ro * ri, co * ci)


def strassen(levels: int) -> BilinearAlgorithm:
    """Strassen's 2x2 scheme applied ``levels`` times: q = 2**levels, m = 7**levels."""
    if levels < 1:
        raise ValueError("need at least one level")
    a, b, g = (np.array(t, dtype=np.int64) for t in (_S_ALPHA, _S_BETA, _S_GAMMA))
    A, B, G = a, b, g
    for _ in range(levels - 1):
        A, B, G = _kron(A, a), _kron(B, b), _kron(G, g)
    return BilinearAlgorithm(f"strassen{2**levels}", A, B, G)


def for_clique(kind: str, n: int, rows: int | None = None) -> BilinearAlgorithm:
    """A scheme sized for the q = sqrt(n) block layout of an n-vertex clique."""
    q = int(round(n**0.5))
    if q * q != n:
        raise ValueError(f"n={n} is not a perfect square")
    if kind == "naive":
        rows = n if rows is None else rows
        return naive(max(1, -(-rows // q)), q)
    if kind == "strassen":
        levels = q.bit_length() - 1
        if 2**levels != q:
            raise ValueError(f"Strassen layout needs sqrt(n) a power of two, got {q}")
        if levels == 0:
            return naive(1, 1)
        return strassen(levels)
    raise ValueError(f"unknown bilinear scheme {kind!r}")
