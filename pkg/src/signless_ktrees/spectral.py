"""Signless Laplacian spectra via cyclic Jacobi rotations.

The eigensolver applies disjoint rotations in round-robin order, n/2 at a
time, which keeps each round a pair of small dense matrix products. A power
iteration is provided as an independent cross-check for the top eigenpair.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .graph import Graph, is_connected

DEFAULT_GAP_TOL = 1e-8
MAX_ORDER = 256
OFF_TOL = 1e-12


def default_gap_tol() -> float:
    """Comparison gap, overridable through ``KTREE_GAP_TOL``."""
    raw = os.environ.get("KTREE_GAP_TOL")
    return float(raw) if raw else DEFAULT_GAP_TOL


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for u, v in g.edges():
        a[u, v] = a[v, u] = 1.0
    return a


def signless_laplacian(g: Graph) -> np.ndarray:
    """Q = D + A as a dense float matrix."""
    if g.n < 1:
        raise ValueError("signless Laplacian needs at least one vertex")
    q = adjacency_matrix(g)
    q[np.diag_indices(g.n)] = g.degrees()
    return q


def laplacian(g: Graph) -> np.ndarray:
    lap = -adjacency_matrix(g)
    lap[np.diag_indices(g.n)] = g.degrees()
    return lap


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < n and b < n:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(off * off)))


def jacobi_eigh(m: np.ndarray, tol: float = OFF_TOL, max_sweeps: int = 100):
    """Eigenvalues and eigenvectors of a real symmetric matrix.

    Returns ``(values, vectors, sweeps)`` unsorted; ``vectors[:, i]`` pairs
    with ``values[i]``. Stops once the off-diagonal Frobenius norm drops
    below ``tol`` (floored at a few ulps of the matrix norm).
    """
    a = np.array(m, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    if n <= 1:
        return np.diag(a).copy(), v, 0
    floor = 8 * np.finfo(float).eps * float(np.linalg.norm(a))
    target = max(tol, floor)
    rounds = _round_robin(n)
    eye = np.eye(n)
    for sweep in range(1, max_sweeps + 1):
        for p, q in rounds:
            apq = a[p, q]
            if not apq.any():
                continue
            d = a[q, q] - a[p, p]
            # tan of the smaller rotation angle; stable form of
            # sgn(theta) / (|theta| + sqrt(theta^2 + 1)), theta = d / (2 apq)
            denom = np.abs(d) + np.sqrt(d * d + 4.0 * apq * apq)
            t = 2.0 * np.where(d >= 0, apq, -apq) / np.where(denom > 0, denom, 1.0)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rot = eye.copy()
            rot[p, p] = c
            rot[q, q] = c
            rot[p, q] = s
            rot[q, p] = -s
            a = rot.T @ a @ rot
            v = v @ rot
        a = 0.5 * (a + a.T)
        if _off_norm(a) < target:
            return np.diag(a).copy(), v, sweep
    raise RuntimeError(f"Jacobi did not converge in {max_sweeps} sweeps")


@dataclass(frozen=True)
class SpectralResult:
    eigenvalues: np.ndarray
    perron: np.ndarray
    residual: float
    iterations: int

    @property
    def q1(self) -> float:
        return float(self.eigenvalues[0])


def spectrum(m: np.ndarray) -> SpectralResult:
    """Full spectrum sorted descending, plus the top eigenvector.

    The top eigenvector is sign-normalized so its largest-magnitude entry is
    positive; for a connected graph's Q it is then the Perron vector.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    if m.shape[0] < 1 or m.shape[0] > MAX_ORDER:
        raise ValueError(f"matrix order must be in [1, {MAX_ORDER}]")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    if not np.array_equal(m, m.T):
        raise ValueError("matrix is not symmetric")
    values, vectors, sweeps = jacobi_eigh(m)
    order = np.argsort(-values, kind="stable")
    values = values[order]
    x = vectors[:, order[0]]
    x = x / np.linalg.norm(x)
    if x[np.argmax(np.abs(x))] < 0:
        x = -x
    residual = float(np.max(np.abs(m @ x - values[0] * x)))
    return SpectralResult(values, x, residual, sweeps)


@lru_cache(maxsize=200_000)
def graph_spectrum(g: Graph) -> SpectralResult:
    result = spectrum(signless_laplacian(g))
    if g.n > 1 and is_connected(g) and not np.all(result.perron > 0):
        raise ArithmeticError("Perron vector of a connected graph is not strictly positive")
    return result


def q1(g: Graph) -> float:
    """Signless Laplacian index (largest eigenvalue of Q)."""
    return graph_spectrum(g).q1


def perron_vector(g: Graph) -> np.ndarray:
    return graph_spectrum(g).perron


def power_iteration(m: np.ndarray, tol: float = 1e-13, max_iter: int = 100_000):
    """Top eigenpair of a nonnegative symmetric matrix by shifted power iteration.

    Iterates on ``M + I`` (same eigenvectors, spectrum shifted away from the
    -q1 mirror for bipartite-like structure). Returns ``(value, vector, iters)``.
    """
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    shifted = m + np.eye(n)
    x = np.full(n, 1.0 / np.sqrt(n))
    lam = 0.0
    for it in range(1, max_iter + 1):
        y = shifted @ x
        y /= np.linalg.norm(y)
        lam_new = float(y @ m @ y)
        if np.max(np.abs(y - x)) < tol and abs(lam_new - lam) < tol:
            return lam_new, y, it
        x, lam = y, lam_new
    return lam, x, max_iter


class Comparison(str, enum.Enum):
    LESS = "LESS"
    GREATER = "GREATER"
    TIE = "TIE"


def compare_values(a: float, b: float, gap_tol: float | None = None) -> Comparison:
    tol = default_gap_tol() if gap_tol is None else gap_tol
    if a - b > tol:
        return Comparison.GREATER
    if a - b < -tol:
        return Comparison.LESS
    return Comparison.TIE


def compare_q1(g: Graph, h: Graph, gap_tol: float | None = None) -> Comparison:
    """Three-way comparison of signless Laplacian indices; near-ties are reported, not resolved."""
    return compare_values(q1(g), q1(h), gap_tol)
