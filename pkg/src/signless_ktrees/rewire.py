"""Perron-guided neighbor shifts and the constructive climbing steps built on them.

A shift moves edges ``v w_i`` over to ``u w_i``. Whenever the Perron entry
at the source ``v`` is no larger than at the target ``u``, the signless
Laplacian index strictly increases. The step functions below chain such
shifts to push a k-tree toward more simplicial vertices or a larger
pendant-clique count, and check their own postconditions before returning.

Free choices ("pick any such vertex") are resolved by lowest index.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import HypothesisViolation, NotAKTree, ParameterError, PostconditionError
from .graph import Graph, _bits, find_isomorphism, induced_subgraph, is_isomorphic
from .ktree import FamilyTag, is_k_tree, make_k_star, make_named
from .spectral import Comparison, compare_values, default_gap_tol, perron_vector, q1
from .stats import l_max, pendant_groups, simplicial_vertices

# Perron entries closer than this count as equal; equality satisfies x_v <= x_u.
PERRON_TIE_TOL = 1e-12


@dataclass(frozen=True)
class ShiftMove:
    source: int
    target: int
    shifted: frozenset[int]

    def __init__(self, source: int, target: int, shifted):
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "shifted", frozenset(shifted))

    def inverse(self) -> "ShiftMove":
        return ShiftMove(self.target, self.source, self.shifted)


def check_move(g: Graph, move: ShiftMove) -> None:
    v, u = move.source, move.target
    if not 0 <= v < g.n or not 0 <= u < g.n or u == v:
        raise HypothesisViolation(f"source {v} and target {u} must be distinct vertices")
    if not move.shifted:
        raise HypothesisViolation("shift needs at least one vertex")
    for w in move.shifted:
        if w == u:
            raise HypothesisViolation(f"shifted vertex {w} equals the target")
        if not 0 <= w < g.n or not g.has_edge(v, w):
            raise HypothesisViolation(f"{w} is not a neighbor of the source {v}")
        if g.has_edge(u, w):
            raise HypothesisViolation(f"{w} is already adjacent to the target {u}")


def apply_shift(g: Graph, move: ShiftMove) -> Graph:
    check_move(g, move)
    ws = sorted(move.shifted)
    return g.edit(remove=[(move.source, w) for w in ws], add=[(move.target, w) for w in ws])


def valid_moves(g: Graph, max_size: int | None = None):
    """Every valid shift move on ``g`` (all source/target pairs, all nonempty subsets)."""
    masks = g.masks
    for v in range(g.n):
        for u in range(g.n):
            if u == v:
                continue
            cand = masks[v] & ~masks[u] & ~(1 << u)
            pool = _bits(cand)
            limit = len(pool) if max_size is None else min(max_size, len(pool))
            for size in range(1, limit + 1):
                for ws in combinations(pool, size):
                    yield ShiftMove(v, u, ws)


def perron_allows(g: Graph, move: ShiftMove, tie_tol: float = PERRON_TIE_TOL) -> bool:
    x = perron_vector(g)
    return x[move.source] <= x[move.target] + tie_tol


@dataclass(frozen=True)
class ShiftVerdict:
    comparison: Comparison
    gap: float
    q1_before: float
    q1_after: float

    @property
    def increased(self) -> bool:
        return self.comparison is Comparison.GREATER


def shift_increases_q1(g: Graph, move: ShiftMove, gap_tol: float | None = None) -> ShiftVerdict:
    """Apply a Perron-admissible move and compare indices after vs. before."""
    check_move(g, move)
    if not perron_allows(g, move):
        x = perron_vector(g)
        raise HypothesisViolation(
            f"x[{move.source}]={x[move.source]:.15g} exceeds x[{move.target}]={x[move.target]:.15g}"
        )
    after = apply_shift(g, move)
    before_q, after_q = q1(g), q1(after)
    return ShiftVerdict(compare_values(after_q, before_q, gap_tol), after_q - before_q, before_q, after_q)


# --------------------------------------------------------------------------
# internal helpers for the constructive steps


def _shift(g: Graph, source: int, target: int, ws, log: list | None) -> Graph:
    """Perron-checked shift used inside the steps; a refusal is a logic error."""
    move = ShiftMove(source, target, ws)
    try:
        verdict = shift_increases_q1(g, move)
    except HypothesisViolation as exc:
        raise PostconditionError(f"step chose an inadmissible move: {exc}") from exc
    if not verdict.increased:
        raise PostconditionError(f"shift {move} did not clear the q1 gap ({verdict.gap:.3g})")
    if log is not None:
        log.append(move)
    return apply_shift(g, move)


def _require_ktree(g: Graph, k: int) -> None:
    if is_k_tree(g, k) is None:
        raise NotAKTree(f"graph is not a {k}-tree")


def _geq(x: np.ndarray, a: int, b: int) -> bool:
    """x_a >= x_b, with ties counted as satisfied."""
    return x[a] >= x[b] - PERRON_TIE_TOL


def _check_increase(before: Graph, after: Graph, what: str) -> None:
    if compare_values(q1(after), q1(before), default_gap_tol()) is not Comparison.GREATER:
        raise PostconditionError(f"{what}: q1 did not strictly increase")


def _core(g: Graph, s1: list[int]) -> list[int]:
    drop = set(s1)
    return [v for v in range(g.n) if v not in drop]


# --------------------------------------------------------------------------
# step 1: one more simplicial vertex


def increase_simplicial_step(g: Graph, k: int, log: list | None = None) -> Graph:
    """A k-tree with one more k-simplicial vertex and strictly larger q1.

    Let ``u`` be a simplicial vertex of the core (the graph with all
    simplicial vertices removed), with core neighbors ``v_1..v_k`` and
    simplicial neighbors ``w_1..w_s`` in the full graph. While the ``w``'s
    do not share one neighborhood, two of their groups are merged by a
    Perron-guided shift. Once they agree, either the ``w``'s move from ``u``
    to the base vertex they miss, or that base vertex hands its remaining
    neighbors over to ``u``.
    """
    _require_ktree(g, k)
    start_s1 = simplicial_vertices(g, k)
    if g.n <= k + 1 or len(start_s1) == g.n - k:
        raise ParameterError("graph is already the k-star; no step exists")
    cur = g
    rounds = 0
    while True:
        s1 = simplicial_vertices(cur, k)
        if len(s1) == len(start_s1) + 1:
            break
        core = _core(cur, s1)
        h = induced_subgraph(cur, core)
        u = core[min(simplicial_vertices(h, k))]
        base = [core[i] for i in h.adjacency[core.index(u)]]
        ws = sorted(set(cur.adjacency[u]) & set(s1))
        closed = set(base) | {u}
        missing = {w: (closed - set(cur.adjacency[w])).pop() for w in ws}
        kinds = sorted(set(missing.values()), key=lambda z: min(w for w in ws if missing[w] == z))
        x = perron_vector(cur)
        if len(kinds) > 1:
            rounds += 1
            if rounds > len(ws) - 1:
                raise PostconditionError("neighborhood equalization exceeded s-1 rounds")
            vi, vj = kinds[0], kinds[1]
            group_i = [w for w in ws if missing[w] == vi]
            group_j = [w for w in ws if missing[w] == vj]
            if _geq(x, vi, vj):
                cur = _shift(cur, vj, vi, group_i, log)
            else:
                cur = _shift(cur, vi, vj, group_j, log)
            continue
        vk = kinds[0]
        if _geq(x, vk, u):
            cur = _shift(cur, u, vk, ws, log)
        else:
            keep = (set(base) - {vk}) | {u}
            v0 = [z for z in cur.adjacency[vk] if z not in keep]
            cur = _shift(cur, vk, u, v0, log)
        break
    if is_k_tree(cur, k) is None:
        raise PostconditionError("simplicial step left the class of k-trees")
    if len(simplicial_vertices(cur, k)) != len(start_s1) + 1:
        raise PostconditionError("simplicial step did not add exactly one simplicial vertex")
    _check_increase(g, cur, "simplicial step")
    return cur


def climb(g: Graph, k: int, log: list | None = None) -> list[Graph]:
    """Iterate the simplicial step until the k-star is reached; returns the trajectory."""
    _require_ktree(g, k)
    path = [g]
    star = make_k_star(k, g.n - k)
    while not is_isomorphic(path[-1], star):
        if len(path) > g.n - k:
            raise PostconditionError("climb did not reach the k-star within n-k-1 steps")
        path.append(increase_simplicial_step(path[-1], k, log))
    return path


# --------------------------------------------------------------------------
# step 2: larger pendant-clique count with n-k-1 simplicial vertices


def _merge_step(g, p, q, big, small, log):
    """Merge a smaller pendant group into the largest one across a single swap.

    ``big`` hangs on a clique containing ``p`` but not ``q``; ``small`` on
    the clique obtained by swapping ``p`` for ``q``. If ``x_p >= x_q`` one
    vertex of ``small`` moves from ``q`` to ``p``; otherwise ``s - t + 1``
    vertices of ``big`` move from ``p`` to ``q``. Either way some group ends
    with ``s + 1`` members.
    """
    x = perron_vector(g)
    s, t = len(big), len(small)
    if _geq(x, p, q):
        return _shift(g, q, p, [small[0]], log)
    return _shift(g, p, q, big[: s - t + 1], log)


def increase_l_step(g: Graph, k: int, log: list | None = None) -> Graph:
    """From a k-tree with n-k-1 simplicial vertices (not G_1), raise l by one."""
    _require_ktree(g, k)
    n = g.n
    s1 = simplicial_vertices(g, k)
    if n < k + 3 or len(s1) != n - k - 1:
        raise ParameterError("step needs exactly n-k-1 simplicial vertices")
    if is_isomorphic(g, make_named(FamilyTag.G1, n, k).graph):
        raise ParameterError("graph is already G_1")
    core = _core(g, s1)
    s, clique = l_max(g, k)
    groups = pendant_groups(g, k)
    big = groups[clique]
    top = (set(core) - set(clique)).pop()
    r1 = min(set(s1) - set(big))
    v1 = (set(core) - set(g.adjacency[r1])).pop()
    small = groups[g.adjacency[r1]]
    small = [r1] + [r for r in small if r != r1]
    out = _merge_step(g, v1, top, big, small, log)
    _check_l_post(g, out, k, s + 1, n - k - 1, "l step")
    return out


def _check_l_post(g, out, k, want_l, want_s1, what):
    if is_k_tree(out, k) is None:
        raise PostconditionError(f"{what} left the class of k-trees")
    if len(simplicial_vertices(out, k)) != want_s1:
        raise PostconditionError(f"{what} changed the simplicial count")
    if l_max(out, k)[0] != want_l:
        raise PostconditionError(f"{what} did not raise l by exactly one")
    _check_increase(g, out, what)


# --------------------------------------------------------------------------
# Perron-guided moves between G_2..G_5


def family_shift_move(g: Graph, k: int, tag: FamilyTag | str, log: list | None = None) -> Graph:
    """Shift a graph isomorphic to G_3, G_4 or G_5 to G_2, G_2 or G_3 respectively."""
    tag = FamilyTag(tag)
    targets = {FamilyTag.G3: FamilyTag.G2, FamilyTag.G4: FamilyTag.G2, FamilyTag.G5: FamilyTag.G3}
    if tag not in targets:
        raise ParameterError(f"no move defined from {tag.value}")
    fam = make_named(tag, g.n, k)
    phi = find_isomorphism(fam.graph, g)
    if phi is None:
        raise ParameterError(f"graph is not isomorphic to {tag.value}")

    def v(i):
        return phi[fam.v(i)]

    def u(j):
        return phi[fam.u(j)]

    x = perron_vector(g)
    if tag is FamilyTag.G3:
        if _geq(x, u(2), u(1)):
            out = _shift(g, u(1), u(2), [u(3)], log)
        else:
            out = _shift(g, u(2), u(1), [v(k)], log)
    elif tag is FamilyTag.G4:
        if _geq(x, v(1), v(k)):
            out = _shift(g, v(k), v(1), [u(3)], log)
        else:
            out = _shift(g, v(1), v(k), [u(1)], log)
    else:
        if _geq(x, v(k - 1), u(2)):
            out = _shift(g, u(2), v(k - 1), [u(3)], log)
        else:
            keep = {v(i) for i in range(1, k - 1)} | {v(k), u(1), u(2)}
            v0 = [z for z in g.adjacency[v(k - 1)] if z not in keep]
            out = _shift(g, v(k - 1), u(2), v0, log)
    want = targets[tag]
    if not is_isomorphic(out, make_named(want, g.n, k).graph):
        raise PostconditionError(f"move from {tag.value} did not produce {want.value}")
    return out


# --------------------------------------------------------------------------
# step 3: larger pendant-clique count with n-k-2 simplicial vertices


def _loses_all(g: Graph, z: int, leaving, sset) -> bool:
    """True when every simplicial neighbor of ``z`` is in ``leaving``."""
    return all(w in leaving for w in g.adjacency[z] if w in sset)


def increase_pendant_step(g: Graph, k: int, log: list | None = None) -> Graph:
    """From a k-tree with n-k-2 simplicial vertices and l < n-k-3, raise l by one.

    The core is a k-star on k+2 vertices: a base clique ``B`` and two
    non-adjacent apexes. The output either keeps n-k-2 simplicial vertices
    or is isomorphic to G_2 with n-k-1 of them.
    """
    _require_ktree(g, k)
    n = g.n
    s1 = simplicial_vertices(g, k)
    if len(s1) != n - k - 2:
        raise ParameterError("step needs exactly n-k-2 simplicial vertices")
    s = l_max(g, k)[0]
    if s >= n - k - 3:
        raise ParameterError("step needs l < n-k-3")
    out = _pendant_step(g, k, log)
    if is_k_tree(out, k) is None:
        raise PostconditionError("pendant step left the class of k-trees")
    count = len(simplicial_vertices(out, k))
    if count == n - k - 1:
        if not is_isomorphic(out, make_named(FamilyTag.G2, n, k).graph):
            raise PostconditionError("pendant step gained a simplicial vertex without reaching G_2")
    elif count != n - k - 2:
        raise PostconditionError("pendant step changed the simplicial count")
    if l_max(out, k)[0] != s + 1:
        raise PostconditionError("pendant step did not raise l by exactly one")
    _check_increase(g, out, "pendant step")
    return out


def _pendant_step(g: Graph, k: int, log: list | None) -> Graph:
    s1 = simplicial_vertices(g, k)
    sset = set(s1)
    s, witness = l_max(g, k)
    core = _core(g, s1)
    h = induced_subgraph(g, core)
    apexes = [core[i] for i in range(h.n) if h.degree(i) == k]
    base = tuple(sorted(set(core) - set(apexes)))
    groups = pendant_groups(g, k)
    in_base = groups.get(base, [])
    x = perron_vector(g)

    def s_nbrs(z):
        return [w for w in g.adjacency[z] if w in sset]

    def missing_base(clique):
        return (set(base) - set(clique)).pop()

    if s == len(in_base):
        # base clique carries the largest group
        high = [z for z in apexes if g.degree(z) > k + 1]
        if high:
            a = high[0]
            r1 = s_nbrs(a)[0]
            v1 = missing_base(g.adjacency[r1])
            small = [r1] + [r for r in groups[g.adjacency[r1]] if r != r1]
            return _merge_step(g, v1, a, in_base, small, log)
        # both apexes have a single simplicial neighbor
        a, b = apexes
        if not _geq(x, b, a):
            a, b = b, a
        mid = _shift(g, a, b, s_nbrs(a), log)
        return _as_g2(mid, k, log)

    # the largest group hangs on a clique through an apex
    a = next(z for z in apexes if z in witness)
    b = next(z for z in apexes if z != a)
    v1 = missing_base(witness)
    big = groups[witness]
    if in_base:
        t = len(in_base)
        if _geq(x, a, v1):
            return _shift(g, v1, a, [in_base[0]], log)
        moved = big[: s - t + 1]
        if not _loses_all(g, a, moved, sset):
            return _shift(g, a, v1, moved, log)
        # moving s-t+1 would strand the apex; move s-t so the base group
        # ties the maximum, then finish from the base-clique configuration
        mid = _shift(g, a, v1, big[: s - t], log)
        return _pendant_step(mid, k, log)
    r1 = s_nbrs(b)[0]
    vi = missing_base(g.adjacency[r1])
    cur = g
    if vi != v1:
        if _geq(x, vi, v1):
            cur = _shift(cur, v1, vi, [r1], log)
        else:
            target = tuple(sorted((set(base) - {vi}) | {a}))
            have = len(groups.get(target, []))
            moved = big[: s - have]
            if moved:
                cur = _shift(cur, vi, v1, moved, log)
            witness = target
        if l_max(cur, k)[0] == s + 1:
            return cur
    grp = pendant_groups(cur, k)
    big = grp[witness]
    small = grp[cur.adjacency[r1]]
    small = [r1] + [r for r in small if r != r1]
    t = len(small)
    xc = perron_vector(cur)
    csset = set(simplicial_vertices(cur, k))
    stranded = (
        _loses_all(cur, b, small[:1], csset) if _geq(xc, a, b) else _loses_all(cur, a, big[: s - t + 1], csset)
    )
    if not stranded:
        return _merge_step(cur, a, b, big, small, log)
    # the merge across the apex swap would empty an apex; look for another
    # Perron-admissible move (or pair of moves) with the same outcome
    return _search_step(cur, k, s, log)


def _pendant_ok(h: Graph, k: int, want_l: int) -> bool:
    if is_k_tree(h, k) is None or l_max(h, k)[0] != want_l:
        return False
    count = len(simplicial_vertices(h, k))
    if count == h.n - k - 2:
        return True
    return count == h.n - k - 1 and is_isomorphic(h, make_named(FamilyTag.G2, h.n, k).graph)


def _admissible(g: Graph):
    """Perron-admissible moves in a fixed order, as ``(move, result)`` pairs."""
    x = perron_vector(g)
    for move in valid_moves(g):
        if x[move.source] <= x[move.target] + PERRON_TIE_TOL:
            yield move, apply_shift(g, move)


def _search_step(g: Graph, k: int, s: int, log: list | None) -> Graph:
    """First admissible move, or pair of moves, that raises l from ``s`` to ``s + 1``.

    The intermediate graph of a pair must keep n-k-2 simplicial vertices and
    the value ``s``. Every accepted move is re-checked for a strict q1 gain.
    """
    firsts = []
    for move, h in _admissible(g):
        if _pendant_ok(h, k, s + 1):
            return _shift(g, move.source, move.target, move.shifted, log)
        if (
            is_k_tree(h, k) is not None
            and len(simplicial_vertices(h, k)) == g.n - k - 2
            and l_max(h, k)[0] == s
        ):
            firsts.append((move, h))
    for move, h in firsts:
        for move2, h2 in _admissible(h):
            if _pendant_ok(h2, k, s + 1):
                mid = _shift(g, move.source, move.target, move.shifted, log)
                return _shift(mid, move2.source, move2.target, move2.shifted, log)
    raise PostconditionError("no admissible move sequence of length <= 2 raises l")


def _as_g2(mid: Graph, k: int, log: list | None) -> Graph:
    n = mid.n
    if is_isomorphic(mid, make_named(FamilyTag.G2, n, k).graph):
        return mid
    if k >= 2 and is_isomorphic(mid, make_named(FamilyTag.G4, n, k).graph):
        return family_shift_move(mid, k, FamilyTag.G4, log)
    raise PostconditionError("apex shift did not land on G_2 or G_4")


# names used by the published interface
lemma26_step = increase_pendant_step
lemma25_move = family_shift_move
