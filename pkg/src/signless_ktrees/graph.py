"""Immutable simple undirected graphs and canonical labeling.

Vertices are dense 0-based integers. Every edit returns a new ``Graph``;
deleting vertices relabels the survivors by sorted order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .errors import GraphError

MAX_CANONICAL_ORDER = 16


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Adjacency is kept both as sorted neighbor tuples and as bitmasks; the
    masks make clique tests and canonical labeling cheap.
    """

    __slots__ = ("_n", "_masks", "_adj", "_hash")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        masks = [0] * n
        for e in edges:
            u, v = e
            _check_vertex(n, u)
            _check_vertex(n, v)
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if masks[u] >> v & 1:
                raise GraphError(f"duplicate edge {u}-{v}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        self._set(n, tuple(masks))

    def _set(self, n: int, masks: tuple[int, ...]) -> None:
        self._n = n
        self._masks = masks
        self._adj = tuple(tuple(_bits(m)) for m in masks)
        self._hash = hash((n, masks))

    @classmethod
    def _from_masks(cls, masks: Sequence[int]) -> "Graph":
        g = cls.__new__(cls)
        g._set(len(masks), tuple(masks))
        return g

    def __getstate__(self):
        return self._masks

    def __setstate__(self, masks):
        self._set(len(masks), masks)

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return sum(len(a) for a in self._adj) // 2

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    @property
    def masks(self) -> tuple[int, ...]:
        return self._masks

    def neighbors(self, v: int) -> tuple[int, ...]:
        _check_vertex(self._n, v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        _check_vertex(self._n, v)
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        _check_vertex(self._n, u)
        _check_vertex(self._n, v)
        return bool(self._masks[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` pairs with ``u < v``, sorted lexicographically."""
        return [(u, v) for u in range(self._n) for v in self._adj[u] if u < v]

    def edit(self, remove: Iterable[Sequence[int]] = (), add: Iterable[Sequence[int]] = ()) -> "Graph":
        """Apply a batch of removals, then additions, returning a new graph."""
        masks = list(self._masks)
        for u, v in remove:
            _check_vertex(self._n, u)
            _check_vertex(self._n, v)
            if not masks[u] >> v & 1:
                raise GraphError(f"edge {u}-{v} is absent")
            masks[u] &= ~(1 << v)
            masks[v] &= ~(1 << u)
        for u, v in add:
            _check_vertex(self._n, u)
            _check_vertex(self._n, v)
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if masks[u] >> v & 1:
                raise GraphError(f"duplicate edge {u}-{v}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return Graph._from_masks(masks)

    def add_edge(self, u: int, v: int) -> "Graph":
        return self.edit(add=[(u, v)])

    def remove_edge(self, u: int, v: int) -> "Graph":
        return self.edit(remove=[(u, v)])

    def add_vertex(self, neighbors: Iterable[int] = ()) -> "Graph":
        """Append vertex ``n`` joined to ``neighbors``."""
        nb = sorted(set(neighbors))
        for u in nb:
            _check_vertex(self._n, u)
        new = self._n
        masks = list(self._masks)
        for u in nb:
            masks[u] |= 1 << new
        masks.append(sum(1 << u for u in nb))
        return Graph._from_masks(masks)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self._n)):
            raise GraphError("relabeling must be a permutation of the vertex set")
        masks = [0] * self._n
        for v in range(self._n):
            masks[perm[v]] = sum(1 << perm[w] for w in self._adj[v])
        return Graph._from_masks(masks)

    def delete_vertices(self, vertices: Iterable[int]) -> "Graph":
        drop = set(vertices)
        return induced_subgraph(self, [v for v in range(self._n) if v not in drop])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._masks == other._masks

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={self.edges()})"


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _check_vertex(n: int, v: int) -> None:
    if not 0 <= v < n:
        raise GraphError(f"vertex {v} out of range for n={n}")


def new_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def add_edge(g: Graph, u: int, v: int) -> Graph:
    return g.add_edge(u, v)


def remove_edge(g: Graph, u: int, v: int) -> Graph:
    return g.remove_edge(u, v)


def vertex_mask(vertices: Iterable[int]) -> int:
    return sum(1 << v for v in set(vertices))


def is_clique(g: Graph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    for v in vs:
        _check_vertex(g.n, v)
    masks = g.masks
    want = vertex_mask(vs)
    return all((masks[v] | (1 << v)) & want == want for v in vs)


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        raise GraphError("connectivity is undefined for the empty graph")
    masks = g.masks
    seen = 1
    frontier = 1
    while frontier:
        reach = 0
        for v in _bits(frontier):
            reach |= masks[v]
        frontier = reach & ~seen
        seen |= frontier
    return seen == (1 << g.n) - 1


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph on ``vertices``, relabeled by their sorted order."""
    vs = sorted(set(vertices))
    for v in vs:
        _check_vertex(g.n, v)
    index = {v: i for i, v in enumerate(vs)}
    masks = g.masks
    return Graph._from_masks(
        [sum(1 << index[w] for w in _bits(masks[v]) if w in index) for v in vs]
    )


# --------------------------------------------------------------------------
# canonical labeling: colour refinement + individualisation search


@dataclass(frozen=True, order=True)
class CanonicalLabel:
    """Isomorphism-class fingerprint: graph6 bytes of the canonical relabeling."""

    data: bytes

    def __str__(self) -> str:
        return self.data.decode("ascii")


def _refine(adj: tuple[tuple[int, ...], ...], colors: list[int]) -> list[int]:
    ncolors = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted([colors[w] for w in nb]))) for v, nb in enumerate(adj)]
        order = sorted(set(sigs))
        if len(order) == ncolors:
            return colors
        rank = {s: i for i, s in enumerate(order)}
        colors = [rank[s] for s in sigs]
        ncolors = len(order)


def _individualize(colors: list[int], v: int) -> list[int]:
    keys = [(c, x != v) for x, c in enumerate(colors)]
    rank = {s: i for i, s in enumerate(sorted(set(keys)))}
    return [rank[s] for s in keys]


def _twin_generators(g: Graph) -> list[tuple[int, ...]]:
    """Transpositions of open or closed twins; each is an automorphism."""
    gens = []
    ident = list(range(g.n))
    for key in (lambda v: g.masks[v], lambda v: g.masks[v] | (1 << v)):
        groups: dict[int, list[int]] = {}
        for v in range(g.n):
            groups.setdefault(key(v), []).append(v)
        for members in groups.values():
            for a, b in zip(members, members[1:]):
                p = ident.copy()
                p[a], p[b] = b, a
                gens.append(tuple(p))
    return gens


class _CanonicalSearch:
    def __init__(self, g: Graph):
        self.g = g
        self.n = g.n
        self.adj = g.adjacency
        self.autos: list[tuple[int, ...]] = _twin_generators(g)
        self.best: tuple[tuple[int, ...], list[int]] | None = None
        self.first: tuple[tuple[int, ...], list[int]] | None = None

    def certificate(self, pos: list[int]) -> tuple[int, ...]:
        n = self.n
        inv = [0] * n
        for v, p in enumerate(pos):
            inv[p] = v
        top = n - 1
        return tuple(sum(1 << (top - pos[w]) for w in self.adj[inv[i]]) for i in range(n))

    def leaf(self, pos: list[int]) -> None:
        cert = self.certificate(pos)
        if self.first is None:
            self.first = self.best = (cert, pos)
            return
        for ref_cert, ref_pos in (self.first, self.best):
            if cert == ref_cert:
                inv = [0] * self.n
                for v, p in enumerate(ref_pos):
                    inv[p] = v
                gamma = tuple(inv[pos[v]] for v in range(self.n))
                if gamma not in self.autos:
                    self.autos.append(gamma)
                return
        if cert < self.best[0]:
            self.best = (cert, pos)

    def run(self, colors: list[int], prefix: list[int]) -> None:
        counts: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            counts.setdefault(c, []).append(v)
        target = None
        for c in sorted(counts):
            if len(counts[c]) > 1:
                target = counts[c]
                break
        if target is None:
            self.leaf(colors)
            return
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        used = 0
        explored: list[int] = []
        for v in target:
            while used < len(self.autos):
                gamma = self.autos[used]
                used += 1
                if all(gamma[p] == p for p in prefix):
                    for x in range(self.n):
                        a, b = find(x), find(gamma[x])
                        if a != b:
                            parent[max(a, b)] = min(a, b)
            root = find(v)
            if any(find(e) == root for e in explored):
                continue
            explored.append(v)
            self.run(_refine(self.adj, _individualize(colors, v)), prefix + [v])


@lru_cache(maxsize=200_000)
def canonical_form(g: Graph) -> tuple[CanonicalLabel, tuple[int, ...]]:
    """Return ``(label, perm)`` with ``g.relabel(perm)`` the canonical representative."""
    from .formats import to_graph6

    if g.n > MAX_CANONICAL_ORDER:
        raise GraphError(f"canonical labeling supports n <= {MAX_CANONICAL_ORDER}, got {g.n}")
    if g.n == 0:
        return CanonicalLabel(to_graph6(g)), ()
    search = _CanonicalSearch(g)
    search.run(_refine(g.adjacency, [0] * g.n), [])
    perm = tuple(search.best[1])
    return CanonicalLabel(to_graph6(g.relabel(perm))), perm


def canonical_label(g: Graph) -> CanonicalLabel:
    return canonical_form(g)[0]


def canonical_graph(g: Graph) -> Graph:
    return g.relabel(canonical_form(g)[1])


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_label(g) == canonical_label(h)


def find_isomorphism(g: Graph, h: Graph) -> list[int] | None:
    """A bijection ``phi`` with ``uv in E(g) <=> phi[u]phi[v] in E(h)``, or None."""
    if not is_isomorphic(g, h):
        return None
    pg = canonical_form(g)[1]
    ph = canonical_form(h)[1]
    inv_h = [0] * h.n
    for v, p in enumerate(ph):
        inv_h[p] = v
    return [inv_h[pg[v]] for v in range(g.n)]
