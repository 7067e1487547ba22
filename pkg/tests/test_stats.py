import pytest

from signless_ktrees.errors import GraphError, NotAKTree
from signless_ktrees.graph import Graph, complete_graph
from signless_ktrees.ktree import FamilyTag, enumerate_ktrees, family_defined, make_k_star, make_named
from signless_ktrees.stats import (
    FACT_NAMES,
    L_THIRD_MIN_EXTRA,
    check_facts,
    l_local,
    l_max,
    pendant_groups,
    profile,
    simplicial_vertices,
)


def brute_l_local(g, clique):
    cs = set(clique)
    return sum(1 for w in range(g.n) if w not in cs and g.degree(w) == len(cs) and cs <= set(g.adjacency[w]))


def test_simplicial_of_star_and_complete():
    assert simplicial_vertices(make_k_star(2, 4), 2) == [2, 3, 4, 5]
    assert simplicial_vertices(complete_graph(3), 2) == [0, 1, 2]
    assert simplicial_vertices(complete_graph(2), 2) == []


def test_l_values_of_families():
    for k in range(1, 5):
        n = k + 6
        assert l_max(make_k_star(k, n - k), k)[0] == n - k
        assert l_max(make_named("g1", n, k).graph, k)[0] == n - k - 2
        for tag in ("g2", "g3", "g4", "g5"):
            if family_defined(tag, n, k):
                assert l_max(make_named(tag, n, k).graph, k)[0] == n - k - 3


def test_l_local_against_brute_force():
    for g in enumerate_ktrees(8, 2):
        for u in range(g.n):
            for v in g.adjacency[u]:
                if u < v:
                    assert l_local(g, (u, v)) == brute_l_local(g, (u, v))


def test_l_local_rejects_non_clique():
    with pytest.raises(GraphError):
        l_local(Graph(3, [(0, 1)]), (0, 2))


def test_l_max_witness_is_lexicographic():
    g = make_k_star(1, 3)
    assert l_max(g, 1) == (3, (0,))
    value, witness = l_max(make_named("g1", 7, 2).graph, 2)
    assert l_local(make_named("g1", 7, 2).graph, witness) == value
    with pytest.raises(GraphError):
        l_max(Graph(3), 2)


def test_pendant_groups_partition_simplicials():
    for g in enumerate_ktrees(9, 3):
        groups = pendant_groups(g, 3)
        assert sorted(w for ws in groups.values() for w in ws) == simplicial_vertices(g, 3)


def test_profile_fields():
    p = profile(make_k_star(2, 3), 2)
    assert p.simplicial_set == (2, 3, 4) and p.l_value == 3 and p.witness_clique == (0, 1)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_facts_hold_in_applicable_range(k):
    for n in range(k, min(k + 7, 12) + 1):
        for g in enumerate_ktrees(n, k):
            report = check_facts(g, k)
            assert set(report) == set(FACT_NAMES)
            assert all(v is not False for v in report.values()), (n, k, report)


def test_third_clause_fails_only_below_threshold():
    # G_2 coincides with G_1 at n = k+4, so l = n-k-3 cannot characterize it there
    k = 2
    n = k + L_THIRD_MIN_EXTRA - 1
    g2 = make_named(FamilyTag.G2, n, k).graph
    assert l_max(g2, k)[0] == n - k - 2
    assert check_facts(g2, k)["l_third_iff_g2_to_g5"] is None


def test_check_facts_rejects_non_ktree():
    with pytest.raises(NotAKTree):
        check_facts(Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]), 1)
