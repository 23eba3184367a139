import pytest
from hypothesis import given, settings

import oracles
from matchpair import matchings, pec
from matchpair.graph import Graph, complete_graph, cycle_graph, path_graph
from matchpair.matchings import DisjointPair
from oracles import graphs


def test_count_on_small_cycles():
    # C4: every subset except the full cycle is a union of paths, plus the cycle itself
    assert pec.count_pec(cycle_graph(4), cap=100) == (16, False)
    # C3: the triangle itself is excluded
    assert pec.count_pec(cycle_graph(3), cap=100) == (7, False)
    assert pec.count_pec(complete_graph(5), cap=3) == (3, True)
    assert len(list(pec.enumerate_pec(cycle_graph(4), cap=5))) == 5


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=7, max_m=10))
def test_enumeration_and_minima_match_brute_force(g):
    ref = list(oracles.pec_subsets(g.n, list(g.edges)))
    got = {frozenset(g.edges_of(d.mask)): (d.p, d.e) for d in pec.enumerate_pec(g)}
    assert got == {s: (p, e) for s, p, e in ref}
    mins = pec.pec_minima(g)
    assert (mins.p, mins.e, mins.ep) == oracles.pec_minima(g.n, list(g.edges))
    assert mins.p_witness.p == mins.p and mins.ep_witness.e == mins.ep
    assert mins.e_witness.e == mins.e


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=8, max_m=12))
def test_identities_hold(g):
    v = pec.check_pec_identities(g)
    assert v.ok, v.failures()


def test_decomposition_rejects_bad_subgraphs():
    k4 = complete_graph(4)
    with pytest.raises(pec.PecError):
        pec.decomposition(k4, k4.mask_of([(0, 1), (0, 2), (0, 3)]))
    c3 = cycle_graph(3)
    with pytest.raises(pec.PecError):
        pec.decomposition(c3, c3.full_mask)


def test_pec_from_matching():
    g = path_graph(4)
    d = pec.pec_from_matching(g, g.mask_of([(0, 1), (2, 3)]))
    assert (d.p, d.e) == (2, 0)
    with pytest.raises(pec.PecError):
        pec.pec_from_matching(g, g.mask_of([(1, 2)]))
    with pytest.raises(pec.PecError):
        pec.pec_from_matching(g, g.mask_of([(0, 1), (1, 2)]))


def test_pec_from_pair():
    g = path_graph(4)
    pair = DisjointPair(g.mask_of([(0, 1), (2, 3)]), g.mask_of([(1, 2)]))
    d = pec.pec_from_pair(g, pair)
    assert (d.p, d.e) == (1, 0)
    with pytest.raises(pec.PecError):
        pec.pec_from_pair(g, DisjointPair(g.mask_of([(0, 1)]), 0))
    with pytest.raises(pec.PecError):
        pec.pec_from_pair(g, DisjointPair(g.mask_of([(0, 1)]), g.mask_of([(0, 1)])))


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7, max_m=10))
def test_every_optimal_pair_gives_minimal_paths(g):
    mins = pec.pec_minima(g)
    for pair in matchings.lambda_and_Lambda(g).pairs:
        assert pec.pec_from_pair(g, pair, mins).p == mins.p


def test_isolated_vertices_are_even_paths():
    d = pec.decomposition(Graph(3), 0)
    assert (d.p, d.e, d.size) == (3, 3, 0)
