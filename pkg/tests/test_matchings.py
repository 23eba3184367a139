from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings

import oracles
from matchpair import matchings, search
from matchpair.graph import Graph, complete_graph, cycle_graph, path_graph
from matchpair.matchings import DisjointPair, MatchingTriple
from matchpair.skeleton import SPANNER_EDGES
from oracles import graphs

SPANNER = Graph(10, SPANNER_EDGES)


def as_sets(g, pairs):
    return {(frozenset(g.edges_of(h)), frozenset(g.edges_of(hp))) for h, hp in pairs}


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=9))
def test_nu_matches_networkx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    ref = len(nx.max_weight_matching(h, maxcardinality=True))
    m = matchings.max_matching(g)
    assert g.is_matching(m)
    assert m.bit_count() == ref == matchings.matching_number(g)


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=7, max_m=11))
def test_matching_enumeration_matches_brute_force(g):
    ref = oracles.matchings(list(g.edges))
    got = matchings.all_matchings(g)
    assert sorted(got) == sorted(g.mask_of(m) for m in ref)
    best = max(map(len, ref))
    mm = matchings.enumerate_maximum_matchings(g)
    assert not mm.overflow
    assert sorted(mm.items) == sorted(g.mask_of(m) for m in ref if len(m) == best)


def test_enumeration_cap_is_reported():
    mm = matchings.enumerate_maximum_matchings(complete_graph(6), cap=5)
    assert mm.overflow and len(mm.items) == 5


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=7, max_m=10))
def test_lambda_mu_and_pair_sets_match_brute_force(g):
    lam, mu, big, lmu = oracles.lambda_mu(list(g.edges))
    res = matchings.lambda_and_Lambda(g)
    assert res.lam == lam == matchings.lambda_value(g)
    assert as_sets(g, res.pairs) == set(big)
    mres = matchings.mu_and_Lambda_mu(g)
    assert (mres.lam, mres.mu, mres.mu_prime) == (lam, mu, lam - mu)
    assert as_sets(g, mres.pairs) == set(lmu)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8, max_m=12))
def test_two_lambda_routes_agree(g):
    lam, pairs = matchings.lambda_exhaustive(g)
    assert lam == search.max_edges(g)[0]
    assert set(pairs) == set(matchings.lambda_and_Lambda(g).pairs)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=7, max_m=10))
def test_triple_search_matches_brute_force(g):
    key, triples = oracles.optimal_triples(list(g.edges))
    ts = matchings.triple_search(g)
    assert ts.key == key
    got = {(frozenset(g.edges_of(t.m)), frozenset(g.edges_of(t.h)), frozenset(g.edges_of(t.hp)))
           for t in ts.iter_triples()}
    assert got == set(triples)
    assert ts.count() == len(triples)
    assert matchings.is_saturated(g).saturated == oracles.saturated(list(g.edges))
    w = matchings.maximally_intersecting(g)
    assert (frozenset(g.edges_of(w.m)), frozenset(g.edges_of(w.h)), frozenset(g.edges_of(w.hp))) in got
    assert w == min(matchings.all_maximally_intersecting(g).items)


def test_spanner_parameters():
    rep = matchings.param_report(SPANNER)
    assert (rep.nu, rep.lam, rep.mu, rep.mu_prime) == (5, 8, 4, 4)
    assert rep.ratio == Fraction(4, 5) and rep.ratio_text() == "4/5"
    assert len(matchings.enumerate_maximum_matchings(SPANNER).items) == 1
    assert len(matchings.perfect_matchings(SPANNER)) == 1
    assert matchings.is_saturated(SPANNER).saturated


@pytest.mark.parametrize("g, expected", [
    (Graph(2, [(0, 1)]), (1, 1, 1, 0)),
    (path_graph(3), (1, 2, 1, 1)),
    (cycle_graph(4), (2, 4, 2, 2)),
    (cycle_graph(5), (2, 4, 2, 2)),
    (complete_graph(4), (2, 4, 2, 2)),
    (Graph(4, [(0, 1), (0, 2), (0, 3)]), (1, 2, 1, 1)),
])
def test_small_parameters(g, expected):
    rep = matchings.param_report(g)
    assert (rep.nu, rep.lam, rep.mu, rep.mu_prime) == expected


def test_edgeless_graph():
    g = Graph(3)
    rep = matchings.param_report(g)
    assert rep.nu == rep.lam == rep.mu == 0 and rep.ratio is None
    assert rep.ratio_text() == "undefined"
    assert matchings.maximally_intersecting(g) == MatchingTriple(0, 0, 0)


def test_dense_graphs_stay_fast():
    # known exact values for K7 and K8
    assert matchings.lambda_value(complete_graph(7)) == 6
    assert matchings.triple_search(complete_graph(8)).key == (4, 4)


def test_split_colourings():
    g = path_graph(4)
    s = matchings.split(g, g.full_mask)
    fixed, free = s.mu_options()
    assert fixed == g.mask_of([(0, 1), (2, 3)]) and free == []
    assert list(s.mu_pairs()) == [DisjointPair(fixed, g.mask_of([(1, 2)]))]
    with pytest.raises(ValueError):
        matchings.split(cycle_graph(3), cycle_graph(3).full_mask)


def test_pair_helpers():
    p = DisjointPair(0b01, 0b10)
    assert p.total == 2 and p.union == 0b11 and p.swapped() == DisjointPair(0b10, 0b01)
