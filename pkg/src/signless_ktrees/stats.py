"""Simplicial sets and clique-pendant statistics of k-trees.

For a k-clique ``C`` the local count is the number of degree-k vertices whose
neighborhood is exactly ``C``; the global statistic is its maximum over all
k-cliques. Both are read off a grouping of the k-simplicial vertices by
neighborhood.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GraphError, NotAKTree
from .graph import Graph, _bits, canonical_label, is_clique, vertex_mask
from .ktree import FamilyTag, family_defined, is_k_tree, k_cliques, make_named


@dataclass(frozen=True)
class StructureProfile:
    k: int
    simplicial_set: tuple[int, ...]
    l_value: int
    witness_clique: tuple[int, ...]


def simplicial_vertices(g: Graph, k: int) -> list[int]:
    """Vertices of degree ``k`` whose neighbors are pairwise adjacent."""
    masks = g.masks
    out = []
    for v in range(g.n):
        nb = masks[v]
        if nb.bit_count() == k and all((masks[w] | (1 << w)) & nb == nb for w in _bits(nb)):
            out.append(v)
    return out


def pendant_groups(g: Graph, k: int) -> dict[tuple[int, ...], list[int]]:
    """Map each k-clique that is some simplicial vertex's neighborhood to those vertices."""
    groups: dict[tuple[int, ...], list[int]] = {}
    for w in simplicial_vertices(g, k):
        groups.setdefault(g.adjacency[w], []).append(w)
    return groups


def l_local(g: Graph, clique) -> int:
    clique = tuple(sorted(set(clique)))
    if not is_clique(g, clique):
        raise GraphError(f"{clique} is not a clique")
    want = vertex_mask(clique)
    # degree == |C| and C inside N(w) together mean N(w) == C
    return sum(1 for w in range(g.n) if g.masks[w] == want and w not in clique)


def l_max(g: Graph, k: int) -> tuple[int, tuple[int, ...]]:
    """Maximum local count over k-cliques, with the lexicographically least witness."""
    groups = pendant_groups(g, k)
    if groups:
        best = max(len(ws) for ws in groups.values())
        witness = min(c for c, ws in groups.items() if len(ws) == best)
        return best, witness
    cliques = k_cliques(g, k)
    if not cliques:
        raise GraphError(f"graph has no {k}-clique")
    return 0, cliques[0]


def profile(g: Graph, k: int) -> StructureProfile:
    value, witness = l_max(g, k)
    return StructureProfile(k, tuple(simplicial_vertices(g, k)), value, witness)


def _is_independent(g: Graph, vertices) -> bool:
    vs = vertex_mask(vertices)
    return all(g.masks[v] & vs == 0 for v in vertices)


def _family_label(tag: FamilyTag, n: int, k: int):
    return canonical_label(make_named(tag, n, k).graph) if family_defined(tag, n, k) else None


FACT_NAMES = (
    "simplicial_empty_iff_complete",
    "complete_plus_one_all_simplicial",
    "simplicial_at_least_two_independent",
    "simplicial_removal_keeps_ktree",
    "simplicial_full_iff_kstar",
    "l_top_iff_kstar",
    "l_gap_absent",
    "l_second_iff_g1",
    "l_third_iff_g2_to_g5",
    "simplicial_counts_g2_to_g5",
)

# Orders below these the statements fail for degenerate reasons (families
# coincide or the l value of G_2..G_5 is dominated by the small second group).
L_THIRD_MIN_EXTRA = 5
SIMPLICIAL_COUNTS_MIN_EXTRA = 4

_EXPECTED_SIMPLICIAL = {
    FamilyTag.G2: 1,
    FamilyTag.G3: 2,
    FamilyTag.G4: 1,
    FamilyTag.G5: 2,
}


def check_facts(g: Graph, k: int) -> dict[str, bool | None]:
    """Verdict per structural clause; ``None`` marks a clause not applicable at (n, k)."""
    if is_k_tree(g, k) is None:
        raise NotAKTree(f"graph is not a {k}-tree")
    n = g.n
    s1 = simplicial_vertices(g, k)
    report: dict[str, bool | None] = dict.fromkeys(FACT_NAMES)
    report["simplicial_empty_iff_complete"] = (not s1) == (n == k)
    if n == k:
        return report
    label = canonical_label(g)
    value, _ = l_max(g, k)
    is_star = label == _family_label(FamilyTag.K_STAR, n, k)

    if n == k + 1:
        report["complete_plus_one_all_simplicial"] = len(s1) == n
    if n >= k + 2:
        report["simplicial_at_least_two_independent"] = len(s1) >= 2 and _is_independent(g, s1)
        report["simplicial_removal_keeps_ktree"] = all(
            g.degree(v) == k and is_k_tree(g.delete_vertices([v]), k) is not None for v in s1
        )
        report["simplicial_full_iff_kstar"] = (len(s1) == n - k) == is_star
    report["l_top_iff_kstar"] = (value == n - k) == is_star
    report["l_gap_absent"] = value != n - k - 1
    if n >= k + 3:
        report["l_second_iff_g1"] = (value == n - k - 2) == (label == _family_label(FamilyTag.G1, n, k))
    tags = (FamilyTag.G2, FamilyTag.G3, FamilyTag.G4, FamilyTag.G5)
    matches = [t for t in tags if label == _family_label(t, n, k)]
    if n >= k + L_THIRD_MIN_EXTRA:
        report["l_third_iff_g2_to_g5"] = (value == n - k - 3) == bool(matches)
    if matches and n >= k + SIMPLICIAL_COUNTS_MIN_EXTRA:
        report["simplicial_counts_g2_to_g5"] = all(
            len(s1) == n - k - _EXPECTED_SIMPLICIAL[t] for t in matches
        )
    return report
