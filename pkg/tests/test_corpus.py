import random

import networkx as nx
import pytest
from hypothesis import given, settings

import oracles
from matchpair import corpus
from matchpair.graph import Graph, is_connected, to_graph6
from oracles import graphs


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=6))
def test_canonical_form_is_global_minimum(g):
    assert oracles.bits_of(corpus.canonical_form(g)) == oracles.canonical_bits(g.n, list(g.edges))


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=8))
def test_canonical_form_and_certificate_are_label_invariant(g):
    perm = list(range(g.n))
    random.Random(to_graph6(g)).shuffle(perm)
    h = corpus.relabel(g, perm)
    assert corpus.canonical_graph6(h) == corpus.canonical_graph6(g)
    assert corpus.certificate(h) == corpus.certificate(g)
    assert nx.is_isomorphic(nx.Graph(list(g.edges)), nx.Graph(list(corpus.canonical_form(g).edges)))


def atlas_connected(n):
    out = []
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() == n and n and nx.is_connected(h):
            out.append(Graph(n, list(h.edges())))
    return out


@pytest.mark.parametrize("n", range(1, 8))
def test_counts_match_the_graph_atlas(n):
    ours = corpus.connected_of_order(n)
    assert len(ours) == corpus.CONNECTED_COUNTS[n]
    assert {to_graph6(g) for g in ours} == {corpus.canonical_graph6(g) for g in atlas_connected(n)}
    assert all(is_connected(g) for g in ours)
    assert [to_graph6(g) for g in ours] == sorted(to_graph6(g) for g in ours)


def test_generation_ignores_parent_labels():
    assert corpus.connected_of_order(6, seed=5) == corpus.connected_of_order(6)


def test_all_connected_order_and_limit():
    gs = list(corpus.all_connected(4))
    assert [g.n for g in gs] == [1, 2, 3, 3] + [4] * 6
    with pytest.raises(ValueError):
        list(corpus.all_connected(9))


def test_random_generators_are_deterministic():
    a = [to_graph6(g) for g in corpus.random_graphs(9, 0.3, 20, 7)]
    assert a == [to_graph6(g) for g in corpus.random_graphs(9, 0.3, 20, 7)]
    assert all(2 <= g.n <= 9 for g in corpus.random_graphs(9, 0.3, 20, 7))
    bs = list(corpus.random_bipartite(10, 0.5, 50, 3))
    assert all(len(list(corpus.bipartite_slice([g]))) == 1 for g in bs)
    assert all(2 <= g.n <= 10 for g in bs)
    with pytest.raises(ValueError):
        list(corpus.random_graphs(1, 0.5, 1, 0))


def test_slices():
    gs = [Graph(3, [(0, 1), (1, 2), (0, 2)]), Graph(3, [(0, 1)]), Graph(2, [(0, 1)])]
    assert len(list(corpus.bipartite_slice(gs))) == 2
    assert len(list(corpus.connected_slice(gs))) == 2
