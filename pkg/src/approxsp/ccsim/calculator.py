"""Round exponent of the clique product as a function of the number of sources n^r."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

ALPHA = 0.313
OMEGA = 2.373
DEFAULT_POINTS = ((0.0, 2.0), (0.313, 2.0), (0.4, 2.01), (0.59, 2.085), (1.0, 2.373))


@dataclass(frozen=True)
class OmegaTable:
    """Piecewise-linear rectangular exponent omega(r); constant 2 below the first point."""

    points: tuple[tuple[float, float], ...] = DEFAULT_POINTS
    alpha: float = ALPHA
    omega_square: float = OMEGA

    def __post_init__(self):
        pts = tuple(sorted((float(r), float(w)) for r, w in self.points))
        object.__setattr__(self, "points", pts)
        rs = np.array([r for r, _ in pts])
        ws = np.array([w for _, w in pts])
        if len(pts) < 2 or np.any(np.diff(rs) <= 0):
            raise ValueError("need at least two points with distinct r")
        if np.any(np.diff(ws) < 0):
            raise ValueError("omega must be nondecreasing in r")
        if abs(self(self.alpha) - 2.0) > 1e-12:
            raise ValueError("omega(alpha) must equal 2")
        if abs(self(1.0) - self.omega_square) > 1e-12:
            raise ValueError("omega(1) must equal omega_square")

    def __call__(self, r: float) -> float:
        rs = [p[0] for p in self.points]
        ws = [p[1] for p in self.points]
        if r <= rs[0]:
            return 2.0 if r < rs[0] else ws[0]
        return float(np.interp(r, rs, ws))

    @classmethod
    def from_json(cls, text: str) -> "OmegaTable":
        d = json.loads(text)
        return cls(
            tuple(tuple(p) for p in d["points"]),
            d.get("alpha", ALPHA),
            d.get("omega_square", OMEGA),
        )

    @classmethod
    def load(cls, path) -> "OmegaTable":
        return cls.from_json(Path(path).read_text())


def solve_r_prime(r: float, table: OmegaTable | None = None, tol: float = 1e-12) -> float:
    """Root of r' = 1 - (1 - r) * omega(r') by bisection.

    The right-hand side decreases in r' while the left increases, so the root
    is unique; it lies in [-1, 1] and is negative (2r - 1) when r < 1/2.
    """
    if not 0 <= r <= 1:
        raise ValueError(f"r must lie in [0, 1], got {r}")
    table = OmegaTable() if table is None else table

    def h(x):
        return 1 - (1 - r) * table(x) - x

    lo, hi = -1.0, 1.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if h(mid) > 0:
            lo = mid
        else:
            hi = mid
    root = (lo + hi) / 2
    if abs(h(root)) > 1e-9:
        raise ArithmeticError(f"bisection residual {h(root)} too large")
    return root


def cc_round_exponent(r: float, table: OmegaTable | None = None) -> float:
    """Exponent e with rounds O(n^e): 1 - 2 / omega(r'), and 0 up to r = (1 + alpha) / 2."""
    table = OmegaTable() if table is None else table
    if r <= (1 + table.alpha) / 2:
        return 0.0
    return 1 - 2 / table(solve_r_prime(r, table))


def block_dimension_exponent(r: float, table: OmegaTable | None = None) -> float:
    """log_n d for the general-case block count d = n^(1/omega(r'))."""
    table = OmegaTable() if table is None else table
    return 1 / table(solve_r_prime(r, table))
