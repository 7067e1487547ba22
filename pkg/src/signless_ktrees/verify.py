"""Exhaustive desk-scale verification of the extremal q1 ranking of k-trees.

For every (n, k) on a small grid all isomorphism classes are enumerated,
ranked by signless Laplacian index, and checked against the expected top
three (the k-star, G_1, G_2). Every strict inequality must clear a numeric
gap; a gap that does not is reported as inconclusive rather than guessed.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass, field
from multiprocessing import Pool

import numpy as np

from . import __version__
from .errors import ParameterError
from .graph import Graph, canonical_label, is_isomorphic
from .ktree import FamilyTag, check_budget, enumerate_ktrees, family_defined, make_named
from .rewire import PERRON_TIE_TOL, ShiftMove, apply_shift, check_move, valid_moves
from .spectral import default_gap_tol, perron_vector, q1
from .stats import FACT_NAMES, check_facts, l_max, simplicial_vertices

SIG = 12


def fmt(x: float) -> float:
    """Round to 12 significant digits for stable serialized output."""
    return float(f"{x:.{SIG}g}")


class Verdict(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INAPPLICABLE = "inapplicable"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class RankedClass:
    label: str
    q1: float
    simplicial: int
    l: int


@dataclass
class VerificationReport:
    n: int
    k: int
    class_size: int
    ranking: list[RankedClass]
    verdicts: dict[str, Verdict] = field(default_factory=dict)
    min_gap: float | None = None
    gaps: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "class_size": self.class_size,
            "ranking": [
                {"label": r.label, "q1": fmt(r.q1), "S1": r.simplicial, "l": r.l} for r in self.ranking
            ],
            "verdicts": {name: v.value for name, v in self.verdicts.items()},
            "gaps": {name: fmt(g) for name, g in self.gaps.items()},
            "min_gap": None if self.min_gap is None else fmt(self.min_gap),
        }


def _q1_of(g: Graph) -> float:
    return q1(g)


def _q1_values(graphs, jobs: int) -> list[float]:
    if jobs <= 1 or len(graphs) < 64:
        return [q1(g) for g in graphs]
    with Pool(jobs) as pool:
        return pool.map(_q1_of, graphs, chunksize=max(1, len(graphs) // (4 * jobs)))


def rank_ktrees(n: int, k: int, jobs: int = 1, values: list[float] | None = None) -> VerificationReport:
    """All classes at (n, k) sorted by q1 descending (ties broken by label)."""
    check_budget(n, k)
    graphs = enumerate_ktrees(n, k)
    if values is None:
        values = _q1_values(graphs, jobs)
    rows = [
        RankedClass(str(canonical_label(g)), float(v), len(simplicial_vertices(g, k)), l_max(g, k)[0])
        for g, v in zip(graphs, values)
    ]
    rows.sort(key=lambda r: (-r.q1, r.label))
    return VerificationReport(n, k, len(rows), rows)


def _placed(report: VerificationReport, rank: int, tag: FamilyTag, gap_tol: float, name: str) -> None:
    """Verdict that the class at ``rank`` is the named family and strictly beats the next one."""
    expected = str(canonical_label(make_named(tag, report.n, report.k).graph))
    ranking = report.ranking
    if ranking[rank].label != expected:
        # a numeric near-tie could have swapped the order; only then is it inconclusive
        owner = next((i for i, r in enumerate(ranking) if r.label == expected), None)
        near = owner is not None and abs(ranking[owner].q1 - ranking[rank].q1) <= gap_tol
        report.verdicts[name] = Verdict.INCONCLUSIVE if near else Verdict.FAIL
        return
    if rank + 1 < len(ranking):
        gap = ranking[rank].q1 - ranking[rank + 1].q1
        report.gaps[name] = gap
        if gap <= gap_tol:
            report.verdicts[name] = Verdict.INCONCLUSIVE
            return
    if rank > 0 and ranking[rank - 1].q1 - ranking[rank].q1 <= gap_tol:
        report.verdicts[name] = Verdict.INCONCLUSIVE
        return
    report.verdicts[name] = Verdict.PASS


def _distinct_family(tag: FamilyTag, n: int, k: int, earlier: tuple[FamilyTag, ...]) -> bool:
    """Defined at (n, k) and not isomorphic to any family ranked above it."""
    if not family_defined(tag, n, k):
        return False
    g = make_named(tag, n, k).graph
    return not any(
        family_defined(e, n, k) and is_isomorphic(g, make_named(e, n, k).graph) for e in earlier
    )


def verify_top3(report: VerificationReport, gap_tol: float | None = None) -> VerificationReport:
    """Attach top-1/2/3 verdicts to a ranking.

    A placement is only asserted when the family exists at (n, k) and is not
    isomorphic to a family ranked above it: G_1 coincides with the k-star at
    n = k+2, and G_2 coincides with G_1 at n = k+4. Such points are marked
    inapplicable instead of producing spurious failures.
    """
    tol = default_gap_tol() if gap_tol is None else gap_tol
    n, k = report.n, report.k
    order = (FamilyTag.K_STAR, FamilyTag.G1, FamilyTag.G2)
    names = ("top1_kstar", "top2_g1", "top3_g2")
    for rank, (name, tag) in enumerate(zip(names, order)):
        if n >= k + 1 and _distinct_family(tag, n, k, order[:rank]):
            _placed(report, rank, tag, tol, name)
        else:
            report.verdicts[name] = Verdict.INAPPLICABLE
    gaps = [g for name, g in report.gaps.items() if name.startswith("top")]
    report.min_gap = min(gaps) if gaps else None
    return report


def verify_l_characterizations(n: int, k: int) -> dict[str, Verdict]:
    """Aggregate every structural clause over all classes at (n, k)."""
    check_budget(n, k)
    seen: dict[str, list[bool]] = {name: [] for name in FACT_NAMES}
    for g in enumerate_ktrees(n, k):
        for name, value in check_facts(g, k).items():
            if value is not None:
                seen[name].append(value)
    out = {}
    for name in FACT_NAMES:
        vals = seen[name]
        if not vals:
            out[name] = Verdict.INAPPLICABLE
        else:
            out[name] = Verdict.PASS if all(vals) else Verdict.FAIL
    return out


@dataclass(frozen=True)
class OrderingCheck:
    smaller: str
    larger: str
    gap: float | None
    verdict: Verdict
    same_class: bool = False


def verify_family_orderings(n: int, k: int, gap_tol: float | None = None) -> list[OrderingCheck]:
    """q1(G_3) < q1(G_2), q1(G_4) < q1(G_2) and q1(G_5) < q1(G_3).

    Pairs that are isomorphic at (n, k) are reported as a tie by isomorphism
    (verdict ``inapplicable``), never as a failure.
    """
    if k < 1 or n < k + 3:
        raise ParameterError(f"orderings need n >= k+3, got n={n}, k={k}")
    tol = default_gap_tol() if gap_tol is None else gap_tol
    pairs = [(FamilyTag.G3, FamilyTag.G2), (FamilyTag.G4, FamilyTag.G2), (FamilyTag.G5, FamilyTag.G3)]
    out = []
    for lo, hi in pairs:
        if not (family_defined(lo, n, k) and family_defined(hi, n, k)):
            continue
        g_lo = make_named(lo, n, k).graph
        g_hi = make_named(hi, n, k).graph
        if is_isomorphic(g_lo, g_hi):
            out.append(OrderingCheck(lo.value, hi.value, None, Verdict.INAPPLICABLE, True))
            continue
        gap = q1(g_hi) - q1(g_lo)
        if gap > tol:
            verdict = Verdict.PASS
        elif gap < -tol:
            verdict = Verdict.FAIL
        else:
            verdict = Verdict.INCONCLUSIVE
        out.append(OrderingCheck(lo.value, hi.value, gap, verdict))
    return out


@dataclass
class MonotonicityResult:
    n: int
    k: int
    checked: int = 0
    violations: int = 0
    excluded: int = 0
    min_gap: float = float("inf")

    @property
    def verdict(self) -> Verdict:
        if self.violations:
            return Verdict.FAIL
        if self.checked == 0:
            return Verdict.INAPPLICABLE
        return Verdict.PASS

    def record(self, g: Graph, move: ShiftMove, x: np.ndarray, base: float) -> None:
        if x[move.source] > x[move.target] + PERRON_TIE_TOL:
            self.excluded += 1
            return
        gap = q1(apply_shift(g, move)) - base
        self.checked += 1
        self.min_gap = min(self.min_gap, gap)
        if gap <= default_gap_tol():
            self.violations += 1


def verify_rewire_monotonicity(
    n: int, k: int, trials: int | None = None, seed: int = 42, max_size: int | None = None
) -> MonotonicityResult:
    """Shift moves on k-trees at (n, k) must raise q1 whenever x_source <= x_target.

    With ``trials=None`` every valid move (every source/target pair, every
    nonempty shifted subset up to ``max_size``) on every class is tried.
    Otherwise ``trials`` admissible moves are drawn at random. Moves that
    violate the Perron hypothesis are counted as excluded, not as failures.
    """
    graphs = enumerate_ktrees(n, k)
    result = MonotonicityResult(n, k)
    if trials is None:
        for g in graphs:
            x, base = perron_vector(g), q1(g)
            for move in valid_moves(g, max_size):
                result.record(g, move, x, base)
        return result
    if trials < 1:
        raise ParameterError("trials must be positive")
    rng = np.random.default_rng(seed)
    attempts = 0
    while result.checked < trials:
        attempts += 1
        if attempts > 1000 * trials:
            break
        g = graphs[int(rng.integers(len(graphs)))]
        v, u = (int(z) for z in rng.choice(g.n, size=2, replace=False))
        pool = [w for w in g.adjacency[v] if w != u and not g.has_edge(u, w)]
        if not pool:
            continue
        size = int(rng.integers(1, len(pool) + 1))
        ws = rng.choice(pool, size=size, replace=False).tolist()
        move = ShiftMove(v, u, ws)
        check_move(g, move)
        result.record(g, move, perron_vector(g), q1(g))
    return result


# --------------------------------------------------------------------------
# grid runner and serialization


def grid_points(k_min: int = 1, k_max: int = 4, n_max: int = 13) -> list[tuple[int, int]]:
    if k_min < 1 or k_max < k_min:
        raise ParameterError(f"need 1 <= k_min <= k_max, got {k_min}, {k_max}")
    pts = []
    for k in range(k_min, k_max + 1):
        for n in range(k + 1, min(k + 8, n_max) + 1):
            check_budget(n, k)
            pts.append((n, k))
    return pts


def run_grid(
    k_min: int = 1, k_max: int = 4, n_max: int = 13, jobs: int = 1, gap_tol: float | None = None
) -> list[VerificationReport]:
    """Rank and verify every grid point; output does not depend on ``jobs``."""
    tol = default_gap_tol() if gap_tol is None else gap_tol
    points = grid_points(k_min, k_max, n_max)
    flat = [(p, g) for p in points for g in enumerate_ktrees(*p)]
    values = _q1_values([g for _, g in flat], jobs)
    by_point: dict[tuple[int, int], list[float]] = {p: [] for p in points}
    for (p, _), v in zip(flat, values):
        by_point[p].append(v)
    reports = []
    for n, k in points:
        report = verify_top3(rank_ktrees(n, k, values=by_point[(n, k)]), tol)
        report.verdicts.update(verify_l_characterizations(n, k))
        if n >= k + 3:
            for chk in verify_family_orderings(n, k, tol):
                name = f"order_{chk.smaller}_below_{chk.larger}"
                report.verdicts[name] = chk.verdict
                if chk.gap is not None:
                    report.gaps[name] = chk.gap
        strict = [g for g in report.gaps.values()]
        report.min_gap = min(strict) if strict else None
        reports.append(report)
    return reports


def overall(reports: list[VerificationReport]) -> Verdict:
    verdicts = [v for r in reports for v in r.verdicts.values()]
    if Verdict.FAIL in verdicts:
        return Verdict.FAIL
    if Verdict.INCONCLUSIVE in verdicts:
        return Verdict.INCONCLUSIVE
    return Verdict.PASS


def reports_to_json(reports: list[VerificationReport], config: dict) -> str:
    """Top-level array of per-(n, k) objects, each carrying version and config."""
    rows = []
    for r in reports:
        obj = r.to_dict()
        obj["tool_version"] = __version__
        obj["config"] = config
        rows.append(obj)
    return json.dumps(rows, indent=1, sort_keys=True)


def reports_to_csv(reports: list[VerificationReport], config: dict) -> str:
    """One row per (n, k, class)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "k", "rank", "label", "q1", "S1", "l", "tool_version", "gap_tol"])
    for r in reports:
        for i, row in enumerate(r.ranking, start=1):
            writer.writerow(
                [r.n, r.k, i, row.label, f"{row.q1:.{SIG}g}", row.simplicial, row.l, __version__, config.get("gap_tol")]
            )
    return buf.getvalue()


# name used by the published interface
verify_lemma25 = verify_family_orderings
