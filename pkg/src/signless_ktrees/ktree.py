"""k-tree construction, recognition and unlabeled enumeration.

Named families use a fixed vertex layout: the base clique ``v_1..v_k`` sits
on indices ``0..k-1`` and the added vertices ``u_1..u_m`` on ``k..k+m-1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .errors import BudgetExceeded, GraphError, ParameterError
from .graph import Graph, _bits, canonical_form, complete_graph, is_clique

MAX_ORDER = 16
MAX_EXTRA = 9


class FamilyTag(str, enum.Enum):
    COMPLETE_K = "complete"
    K_STAR = "kstar"
    G1 = "g1"
    G2 = "g2"
    G3 = "g3"
    G4 = "g4"
    G5 = "g5"


@dataclass(frozen=True)
class NamedFamily:
    tag: FamilyTag
    n: int
    k: int
    graph: Graph = field(compare=False)

    def v(self, i: int) -> int:
        """Index of base vertex ``v_i`` (1-based as in the usual drawing)."""
        if not 1 <= i <= self.k:
            raise ParameterError(f"v_{i} is not a base vertex for k={self.k}")
        return i - 1

    def u(self, j: int) -> int:
        """Index of added vertex ``u_j``."""
        if not 1 <= j <= self.n - self.k:
            raise ParameterError(f"u_{j} does not exist for n={self.n}, k={self.k}")
        return self.k + j - 1

    @property
    def roles(self) -> dict[str, int]:
        out = {f"v{i}": self.v(i) for i in range(1, self.k + 1)}
        out.update({f"u{j}": self.u(j) for j in range(1, self.n - self.k + 1)})
        return out


def make_complete(k: int) -> Graph:
    if k < 1:
        raise ParameterError(f"K_k needs k >= 1, got {k}")
    return complete_graph(k)


def make_k_star(k: int, m: int) -> Graph:
    """The k-star: ``m`` vertices each joined to the same base k-clique."""
    if k < 1 or m < 0:
        raise ParameterError(f"k-star needs k >= 1 and m >= 0, got k={k}, m={m}")
    edges = list(combinations(range(k), 2))
    edges += [(i, k + j) for j in range(m) for i in range(k)]
    return Graph(k + m, edges)


def _family_threshold(tag: FamilyTag, k: int) -> int:
    """Minimum order n for which the family is defined."""
    return {
        FamilyTag.COMPLETE_K: k,
        FamilyTag.K_STAR: k,
        FamilyTag.G1: k + 2,
        FamilyTag.G2: k + 3,
        FamilyTag.G3: k + 3,
        FamilyTag.G4: k + 3,
        FamilyTag.G5: k + 3,
    }[tag]


def family_defined(tag: FamilyTag | str, n: int, k: int) -> bool:
    tag = FamilyTag(tag)
    if k < 1 or n < _family_threshold(tag, k):
        return False
    if tag is FamilyTag.COMPLETE_K:
        return n == k
    if tag in (FamilyTag.G4, FamilyTag.G5):
        return k >= 2
    return True


def make_named(tag: FamilyTag | str, n: int, k: int) -> NamedFamily:
    tag = FamilyTag(tag)
    if not family_defined(tag, n, k):
        raise ParameterError(f"family {tag.value} is not defined for n={n}, k={k}")
    if tag is FamilyTag.COMPLETE_K:
        return NamedFamily(tag, n, k, make_complete(k))
    star = make_k_star(k, n - k)
    if tag is FamilyTag.K_STAR:
        return NamedFamily(tag, n, k, star)

    def v(i):
        return i - 1

    def u(j):
        return k + j - 1

    g = star.edit(remove=[(u(1), v(k))], add=[(u(1), u(2))])
    if tag is FamilyTag.G2:
        g = g.edit(remove=[(u(3), v(k))], add=[(u(3), u(2))])
    elif tag is FamilyTag.G3:
        g = g.edit(remove=[(u(3), v(k))], add=[(u(3), u(1))])
    elif tag is FamilyTag.G4:
        g = g.edit(remove=[(u(3), v(1))], add=[(u(3), u(2))])
    elif tag is FamilyTag.G5:
        g = g.edit(remove=[(u(3), v(k - 1)), (u(3), v(k))], add=[(u(3), u(1)), (u(3), u(2))])
    return NamedFamily(tag, n, k, g)


def make_g1(n: int, k: int) -> Graph:
    return make_named(FamilyTag.G1, n, k).graph


def make_g2(n: int, k: int) -> Graph:
    return make_named(FamilyTag.G2, n, k).graph


def make_g3(n: int, k: int) -> Graph:
    return make_named(FamilyTag.G3, n, k).graph


def make_g4(n: int, k: int) -> Graph:
    return make_named(FamilyTag.G4, n, k).graph


def make_g5(n: int, k: int) -> Graph:
    return make_named(FamilyTag.G5, n, k).graph


# --------------------------------------------------------------------------
# recognition


@dataclass(frozen=True)
class KTreeCertificate:
    """Simplicial elimination witness for k-tree membership.

    ``elimination`` lists ``(vertex, base_clique)`` in removal order; reading
    it backwards from ``core`` (a K_k) rebuilds the graph one vertex at a time.
    """

    k: int
    elimination: tuple[tuple[int, tuple[int, ...]], ...]
    core: tuple[int, ...]

    def replay(self, n: int) -> Graph:
        edges = list(combinations(self.core, 2))
        for v, base in reversed(self.elimination):
            edges.extend((min(v, b), max(v, b)) for b in base)
        return Graph(n, edges)


def _is_clique_mask(masks: tuple[int, ...], sub: int) -> bool:
    for v in _bits(sub):
        if (masks[v] | (1 << v)) & sub != sub:
            return False
    return True


def is_k_tree(g: Graph, k: int) -> KTreeCertificate | None:
    """Certificate when ``g`` is a k-tree, else ``None``.

    Repeatedly strips the smallest-index vertex of degree k whose remaining
    neighborhood is a clique; a k-tree survives down to a K_k core.
    """
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    n = g.n
    if n < k:
        return None
    masks = g.masks
    alive = (1 << n) - 1
    elim = []
    for _ in range(n - k):
        for v in _bits(alive):
            nb = masks[v] & alive
            if nb.bit_count() == k and _is_clique_mask(masks, nb):
                elim.append((v, tuple(_bits(nb))))
                alive &= ~(1 << v)
                break
        else:
            return None
    if not _is_clique_mask(masks, alive):
        return None
    return KTreeCertificate(k, tuple(elim), tuple(_bits(alive)))


def k_cliques(g: Graph, k: int) -> list[tuple[int, ...]]:
    """All k-cliques of ``g`` in lexicographic order."""
    masks = g.masks
    out: list[tuple[int, ...]] = []

    def grow(clique: list[int], cand: int) -> None:
        if len(clique) == k:
            out.append(tuple(clique))
            return
        for v in _bits(cand):
            clique.append(v)
            grow(clique, cand & masks[v] & ~((1 << (v + 1)) - 1))
            clique.pop()

    if k == 0:
        return [()]
    grow([], (1 << g.n) - 1)
    return out


def extend(g: Graph, clique) -> Graph:
    """Adjoin a new vertex ``n`` joined to every vertex of ``clique``."""
    clique = tuple(clique)
    if len(set(clique)) != len(clique) or not is_clique(g, clique):
        raise GraphError(f"{clique} is not a clique of the graph")
    return g.add_vertex(clique)


def check_budget(n: int, k: int) -> None:
    if k < 1 or n < k:
        raise ParameterError(f"enumeration needs n >= k >= 1, got n={n}, k={k}")
    if n > MAX_ORDER or n - k > MAX_EXTRA:
        raise BudgetExceeded(
            f"(n={n}, k={k}) exceeds the enumeration budget (n <= {MAX_ORDER}, n-k <= {MAX_EXTRA})"
        )


@lru_cache(maxsize=None)
def _enumerate(n: int, k: int) -> tuple[Graph, ...]:
    if n == k:
        return (make_complete(k),)
    found: dict = {}
    for parent in _enumerate(n - 1, k):
        for clique in k_cliques(parent, k):
            child = parent.add_vertex(clique)
            label, perm = canonical_form(child)
            if label not in found:
                found[label] = child.relabel(perm)
    return tuple(found[label] for label in sorted(found))


def enumerate_ktrees(n: int, k: int) -> list[Graph]:
    """One canonical representative per isomorphism class of k-trees on n vertices.

    Output is sorted by canonical label, so it does not depend on the order in
    which extensions were discovered.
    """
    check_budget(n, k)
    return list(_enumerate(n, k))


def ktree_edge_count(n: int, k: int) -> int:
    return k * n - k * (k + 1) // 2
