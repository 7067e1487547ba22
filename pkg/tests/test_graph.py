import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_canonical, to_nx
from signless_ktrees.errors import GraphError
from signless_ktrees.graph import (
    Graph,
    canonical_form,
    canonical_graph,
    canonical_label,
    complete_graph,
    find_isomorphism,
    induced_subgraph,
    is_clique,
    is_connected,
    is_isomorphic,
)


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


class TestGraphBasics:
    def test_edges_sorted_and_degrees(self):
        g = Graph(4, [(2, 1), (0, 3), (1, 0)])
        assert g.edges() == [(0, 1), (0, 3), (1, 2)]
        assert g.degrees() == [2, 2, 1, 1]
        assert g.m == 3

    def test_rejects_bad_edges(self):
        with pytest.raises(GraphError):
            Graph(3, [(0, 0)])
        with pytest.raises(GraphError):
            Graph(3, [(0, 1), (1, 0)])
        with pytest.raises(GraphError):
            Graph(3, [(0, 3)])
        with pytest.raises(GraphError):
            Graph(-1)

    def test_edit_is_persistent(self):
        g = complete_graph(3)
        h = g.remove_edge(0, 1)
        assert g.has_edge(0, 1) and not h.has_edge(0, 1)
        with pytest.raises(GraphError):
            h.remove_edge(0, 1)

    def test_add_vertex(self):
        g = complete_graph(3).add_vertex([0, 2])
        assert g.n == 4 and g.neighbors(3) == (0, 2)

    def test_relabel_requires_permutation(self):
        with pytest.raises(GraphError):
            complete_graph(3).relabel([0, 0, 1])

    def test_induced_subgraph_relabels(self):
        g = Graph(4, [(0, 1), (1, 2), (2, 3)])
        h = induced_subgraph(g, [1, 2, 3])
        assert h.edges() == [(0, 1), (1, 2)]

    def test_clique_examples(self):
        k5 = complete_graph(5)
        assert is_clique(k5, [0, 2, 4])
        star = Graph(4, [(0, 1), (0, 2), (0, 3)])
        assert not is_clique(star, [1, 2, 3])
        assert is_clique(star, []) and is_clique(star, [2])

    def test_connectivity(self):
        assert is_connected(Graph(1))
        assert not is_connected(Graph(3, [(0, 1)]))
        with pytest.raises(GraphError):
            is_connected(Graph(0))

    def test_pickle_roundtrip(self):
        import pickle

        g = Graph(5, [(0, 1), (3, 4)])
        assert pickle.loads(pickle.dumps(g)) == g


class TestCanonicalLabel:
    @settings(max_examples=150, deadline=None)
    @given(graphs(max_n=6), st.randoms(use_true_random=False))
    def test_invariant_under_relabeling(self, g, rnd):
        perm = list(range(g.n))
        rnd.shuffle(perm)
        assert canonical_label(g) == canonical_label(g.relabel(perm))

    @settings(max_examples=120, deadline=None)
    @given(graphs(max_n=6), graphs(max_n=6))
    def test_agrees_with_brute_force(self, g, h):
        if g.n != h.n:
            return
        same = brute_canonical(g) == brute_canonical(h)
        assert (canonical_label(g) == canonical_label(h)) == same

    def test_agrees_with_networkx(self):
        rng = random.Random(7)
        for _ in range(200):
            n = rng.randint(6, 11)
            p = rng.choice([0.2, 0.4, 0.6])
            g = Graph(n, nx.gnp_random_graph(n, p, seed=rng.randint(0, 10**9)).edges())
            if rng.random() < 0.5:
                perm = list(range(n))
                rng.shuffle(perm)
                h = g.relabel(perm)
            else:
                h = Graph(n, nx.gnm_random_graph(n, g.m, seed=rng.randint(0, 10**9)).edges())
            assert is_isomorphic(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))

    def test_regular_graphs(self, petersen):
        # vertex-transitive graphs stress the individualization search
        perm = [3, 7, 1, 9, 0, 2, 8, 4, 6, 5]
        assert is_isomorphic(petersen, petersen.relabel(perm))
        c10 = Graph(10, [(i, (i + 1) % 10) for i in range(10)])
        assert not is_isomorphic(petersen, c10)

    def test_canonical_graph_is_fixed(self):
        g = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5)])
        c = canonical_graph(g)
        assert canonical_graph(c) == c
        assert canonical_form(c)[0] == canonical_form(g)[0]

    def test_order_limit(self):
        with pytest.raises(GraphError):
            canonical_label(Graph(17))

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=7), st.randoms(use_true_random=False))
    def test_find_isomorphism_maps_edges(self, g, rnd):
        perm = list(range(g.n))
        rnd.shuffle(perm)
        h = g.relabel(perm)
        phi = find_isomorphism(g, h)
        assert phi is not None
        assert sorted(tuple(sorted((phi[u], phi[v]))) for u, v in g.edges()) == h.edges()

    def test_find_isomorphism_none(self):
        assert find_isomorphism(Graph(3, [(0, 1)]), Graph(3, [(0, 1), (1, 2)])) is None
