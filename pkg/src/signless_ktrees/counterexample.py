"""Counterexamples to the quadratic-vs-linear sum inequality

    sum b_i^2 - sum a_i^2 <= 2 (sum b_i - sum a_i),   0 < a_i, b_i <= 1,

together with its claimed equality condition (only when every a_i = b_i = 1).
Each term factors as (b - a)(a + b - 2); with a + b - 2 <= 0 a term is
positive exactly when b < a, so any pair with some b_i < a_i can break it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

DOMAIN_FLOOR = 1e-12


def _check(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 1 or a.shape != b.shape or a.size == 0:
        raise ParameterError("a and b must be nonempty sequences of equal length")
    for name, arr in (("a", a), ("b", b)):
        if not np.all(np.isfinite(arr)) or np.any(arr <= DOMAIN_FLOOR) or np.any(arr > 1.0):
            raise ParameterError(f"entries of {name} must lie in (0, 1]")
    return a, b


def violation(a, b) -> float:
    """Left side minus right side; a positive value means the inequality fails."""
    a, b = _check(a, b)
    return float(np.sum(b * b) - np.sum(a * a) - 2.0 * (np.sum(b) - np.sum(a)))


def violation_factored(a, b) -> float:
    a, b = _check(a, b)
    return float(np.sum((b - a) * (a + b - 2.0)))


@dataclass(frozen=True)
class Witness:
    a: tuple[float, ...]
    b: tuple[float, ...]
    violation: float

    def to_dict(self) -> dict:
        return {
            "a": [float(f"{x:.12g}") for x in self.a],
            "b": [float(f"{x:.12g}") for x in self.b],
            "violation": float(f"{self.violation:.12g}"),
        }


def witness(a, b) -> Witness:
    return Witness(tuple(float(x) for x in a), tuple(float(x) for x in b), violation(a, b))


def hand_witness() -> Witness:
    """a = (0.9), b = (0.1): left side -0.8, right side -1.6."""
    return witness([0.9], [0.1])


def equality_case(value: float = 0.5) -> dict:
    """a = b = (value,) gives equality although not every entry equals 1."""
    w = witness([value], [value])
    return {
        "a": list(w.a),
        "b": list(w.b),
        "violation": w.violation,
        "equality": w.violation == 0.0,
        "all_entries_one": all(x == 1.0 for x in w.a + w.b),
        "contradicts_equality_clause": w.violation == 0.0 and not all(x == 1.0 for x in w.a + w.b),
    }


def search_max_violation(k: int, trials: int, seed: int = 42) -> Witness:
    """Best violation found by uniform sampling, for k coordinates.

    The sum is separable, so the search runs over single pairs and the best
    pair is repeated k times; this makes the k-coordinate result exactly k
    times the single-coordinate one. Samples are drawn on (0, 1] as
    ``1 - U[0, 1)`` and the hand witness is included as a floor. The
    supremum per coordinate is 1 (a -> 1, b -> 0), never attained.
    """
    if k < 1 or trials < 1:
        raise ParameterError("need k >= 1 and trials >= 1")
    rng = np.random.default_rng(seed)
    a = 1.0 - rng.random(trials)
    b = 1.0 - rng.random(trials)
    ok = (a > DOMAIN_FLOOR) & (b > DOMAIN_FLOOR)
    a, b = a[ok], b[ok]
    terms = (b - a) * (a + b - 2.0)
    i = int(np.argmax(terms))
    best_a, best_b = float(a[i]), float(b[i])
    hand = hand_witness()
    if terms[i] < hand.violation:
        best_a, best_b = hand.a[0], hand.b[0]
    return witness([best_a] * k, [best_b] * k)


def analytic_supremum(k: int) -> float:
    """Least upper bound of the violation over the domain (k * 1, not attained)."""
    if k < 1:
        raise ParameterError("k must be positive")
    return float(k)
