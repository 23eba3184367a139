import pytest
from hypothesis import given, settings

import oracles
from matchpair import alternating, matchings
from matchpair.alternating import check_unsaturated_adjacency, maximal_chains
from matchpair.graph import Graph, cycle_graph, parse_graph6, path_graph
from matchpair.matchings import DisjointPair, MatchingTriple
from matchpair.skeleton import SPANNER_EDGES
from oracles import graphs

SPANNER = Graph(10, SPANNER_EDGES)


def pair_of(g, h, hp):
    return DisjointPair(g.mask_of(h), g.mask_of(hp))


def in_lambda_mu(g, h, hp):
    _lam, _mu, _big, lmu = oracles.lambda_mu(list(g.edges))
    return (frozenset(h), frozenset(hp)) in set(lmu)


def test_chains_on_even_cycle_and_path():
    c = cycle_graph(6)
    a = c.mask_of([(0, 1), (2, 3), (4, 5)])
    b = c.mask_of([(1, 2), (3, 4), (0, 5)])
    (ch,) = maximal_chains(c, a, b)
    assert ch.kind == "cycle" and ch.vertices == (0, 1, 2, 3, 4, 5)
    assert ch.length == 6 and ch.end_edges == () and ch.inner == ch.vertices
    p = path_graph(4)
    (ch,) = maximal_chains(p, p.mask_of([(0, 1), (2, 3)]), p.mask_of([(1, 2)]))
    assert ch.is_path and ch.is_odd and ch.labels == ("A", "B", "A")
    assert ch.ends == (0, 3) and ch.inner == (1, 2)


def test_chains_require_matching_differences():
    p = path_graph(3)
    with pytest.raises(ValueError):
        maximal_chains(p, p.full_mask, 0)


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=8, max_m=12))
def test_chain_cover_and_swap_closure(g):
    res = matchings.lambda_and_Lambda(g)
    pairs = set(res.pairs)
    for pair in res.pairs[:5]:
        assert alternating.chain_cover_ok(g, pair.h, pair.hp)
        for c in maximal_chains(g, pair.h, pair.hp):
            assert alternating.swap_along(pair, c) in pairs


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=7, max_m=10))
def test_lemmas_on_every_optimal_triple(g):
    _key, triples = oracles.optimal_triples(list(g.edges))
    for m, h, hp in triples:
        t = MatchingTriple(g.mask_of(m), g.mask_of(h), g.mask_of(hp))
        v = alternating.check_MH_lemma(g, t)
        assert v.ok, (v.flags, v.counterexamples)
        v = alternating.check_HH_lemma(g, t)
        assert v.ok, (v.flags, v.counterexamples)


def test_lemma_checkers_flag_non_optimal_triple():
    g = path_graph(4)
    # M-H chain is the single even path 0-1-2 when M is not maximum
    t = MatchingTriple(g.mask_of([(0, 1)]), g.mask_of([(1, 2)]), 0)
    assert not alternating.check_MH_lemma(g, t).flags["a"]


def test_spanner_lemmas():
    for t in matchings.all_maximally_intersecting(SPANNER).items:
        assert alternating.check_MH_lemma(SPANNER, t).ok
        assert alternating.check_HH_lemma(SPANNER, t).ok


def test_adjacent_unsaturated_ends_of_a_single_edge_chain():
    g = parse_graph6("D@{")
    assert g.edges == ((0, 4), (1, 4), (2, 3), (2, 4), (3, 4))
    h, hp = [(0, 4), (2, 3)], [(1, 4)]
    assert in_lambda_mu(g, h, hp)
    # 2 and 3 are adjacent, each has G-degree 2 but union-degree 1
    union = set(h) | set(hp)
    for x in (2, 3):
        assert sum(x in e for e in g.edges) == 2 and sum(x in e for e in union) == 1
    v = check_unsaturated_adjacency(g, pair_of(g, h, hp))
    assert not v.flags["unsaturated-pair"] and v.counterexamples["unsaturated-pair"] == (2, 3)
    assert v.flags["unsaturated-pair-outside"]


def test_even_end_next_to_odd_path_inner_vertex():
    g = Graph(7, [(0, 6), (1, 5), (2, 5), (2, 6), (3, 4), (4, 6)])
    h, hp = [(0, 6), (1, 5), (3, 4)], [(2, 5), (4, 6)]
    assert in_lambda_mu(g, h, hp)
    chains = {c.vertices: c for c in maximal_chains(g, g.mask_of(h), g.mask_of(hp))}
    assert set(chains) == {(0, 6, 4, 3), (1, 5, 2)}
    assert chains[(0, 6, 4, 3)].is_odd and not chains[(1, 5, 2)].is_odd
    v = check_unsaturated_adjacency(g, pair_of(g, h, hp))
    assert not v.flags["even-end"] and v.counterexamples["even-end"] == (2, 6)
    assert v.flags["even-end-distinct"]


def test_even_end_next_to_own_inner_vertex():
    g = parse_graph6("DJc")
    assert g.edges == ((0, 4), (1, 2), (1, 3), (2, 3), (3, 4))
    h, hp = [(0, 4), (1, 3)], [(1, 2), (3, 4)]
    assert in_lambda_mu(g, h, hp)
    (c,) = maximal_chains(g, g.mask_of(h), g.mask_of(hp))
    assert c.vertices == (0, 4, 3, 1, 2) and not c.is_odd
    v = check_unsaturated_adjacency(g, pair_of(g, h, hp))
    assert not v.flags["even-end"] and v.counterexamples["even-end"] == (2, 3)
    assert v.flags["even-end-distinct"]


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=7, max_m=11))
def test_scoped_flags_hold(g):
    if g.m == 0:
        return
    res = matchings.mu_and_Lambda_mu(g)
    for pair in res.pairs:
        for trivial in (False, True):
            v = check_unsaturated_adjacency(g, pair, res.lam, res.mu, include_trivial=trivial)
            assert v.flags["unsaturated-pair-outside"] and v.flags["even-end-distinct"], v.counterexamples


def test_adjacency_check_rejects_pairs_outside_lambda_mu():
    g = path_graph(4)
    with pytest.raises(ValueError):
        check_unsaturated_adjacency(g, pair_of(g, [(1, 2)], [(0, 1)]))


def test_saturation_map():
    g = path_graph(3)
    s = alternating.saturation(g, pair_of(g, [(0, 1)], []))
    assert s.saturated == (True, False, False) and s.unsaturated == (1, 2)


def test_conjecture_scan():
    r = alternating.conjecture_scan(SPANNER)
    assert r.applicable and r.holds
    assert not alternating.conjecture_scan(cycle_graph(4)).applicable
    assert not alternating.conjecture_scan(cycle_graph(5)).applicable
