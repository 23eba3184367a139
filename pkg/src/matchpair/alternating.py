"""Alternating chains and executable checkers for the structural lemmas on
maximally intersecting matchings and on pairs in Lambda_mu.

Checkers recompute everything from the raw edge masks they are handed, so
they can serve as oracles for the solvers in :mod:`matchpair.matchings`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import matchings
from .graph import EdgeMask, Graph, basic_queries, components, to_graph6
from .matchings import DisjointPair, MatchingTriple


@dataclass(frozen=True)
class AlternatingChain:
    """A maximal path or cycle alternating between ``A - B`` and ``B - A``.

    ``labels[i]`` is ``"A"`` or ``"B"`` for the i-th edge in traversal order.
    Paths start at their smaller endpoint; cycles start at their smallest
    vertex and leave towards its smaller neighbour.
    """

    vertices: tuple[int, ...]
    kind: str
    edges: tuple[int, ...]
    labels: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def is_odd(self) -> bool:
        return self.length % 2 == 1

    @property
    def is_path(self) -> bool:
        return self.kind == "path"

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    @property
    def end_edges(self) -> tuple[int, ...]:
        if not self.is_path:
            return ()
        return tuple(sorted({self.edges[0], self.edges[-1]}))

    @property
    def inner(self) -> tuple[int, ...]:
        return self.vertices[1:-1] if self.is_path else self.vertices

    @property
    def mask(self) -> EdgeMask:
        out = 0
        for i in self.edges:
            out |= 1 << i
        return out


def maximal_chains(g: Graph, a: EdgeMask, b: EdgeMask) -> list[AlternatingChain]:
    """Components of ``(A - B) | (B - A)`` as alternating chains.

    Both differences must be matchings, which is the case whenever ``A`` and
    ``B`` are; otherwise alternating chains are not uniquely determined and
    ``ValueError`` is raised.
    """
    only_a = a & ~b
    only_b = b & ~a
    if not (g.is_matching(only_a) and g.is_matching(only_b)):
        raise ValueError("A - B and B - A must both be matchings")
    census = components(g, only_a | only_b)
    chains = []
    for verts in census.paths:
        if len(verts) > 1:
            chains.append(_chain(g, verts, "path", only_a))
    for verts in census.cycles:
        chains.append(_chain(g, verts, "cycle", only_a))
    chains.sort(key=lambda c: (c.vertices[0], c.vertices))
    return chains


def _chain(g: Graph, verts: tuple[int, ...], kind: str, only_a: EdgeMask) -> AlternatingChain:
    k = len(verts) - 1 if kind == "path" else len(verts)
    idx = tuple(g.index(verts[j], verts[(j + 1) % len(verts)]) for j in range(k))
    labels = tuple("A" if (only_a >> i) & 1 else "B" for i in idx)
    return AlternatingChain(verts, kind, idx, labels)


def swap_along(pair: DisjointPair, chain: AlternatingChain) -> DisjointPair:
    """Exchange H and H' on the edges of one H-H' chain."""
    cm = chain.mask
    h, hp = pair
    return DisjointPair((h & ~cm) | (hp & cm), (hp & ~cm) | (h & cm))


@dataclass
class LemmaVerdict:
    """Named pass/fail flags, each failing flag with a counterexample."""

    name: str
    flags: dict[str, bool] = field(default_factory=dict)
    counterexamples: dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.flags.values())

    def record(self, flag: str, ok: bool, witness: object = None) -> None:
        prev = self.flags.get(flag, True)
        self.flags[flag] = prev and ok
        if not ok and flag not in self.counterexamples:
            self.counterexamples[flag] = witness


def check_MH_lemma(g: Graph, t: MatchingTriple) -> LemmaVerdict:
    """Shape of maximal M-H chains for a maximally intersecting triple.

    (a) every chain is an odd path with both end-edges in M;
    (b) those end-edges lie in H';
    (c) every vertex on such a path is covered by H'.
    """
    v = LemmaVerdict("lemma-4.2", {"a": True, "b": True, "c": True})
    hp_cover = g.covered_vertices(t.hp)
    for c in maximal_chains(g, t.m, t.h):
        shape_ok = c.is_path and c.is_odd and c.labels[0] == "A" and c.labels[-1] == "A"
        v.record("a", shape_ok, c.vertices)
        if c.is_path:
            v.record("b", all((t.hp >> e) & 1 for e in c.end_edges), c.vertices)
            v.record("c", all((hp_cover >> x) & 1 for x in c.vertices), c.vertices)
    return v


def check_HH_lemma(g: Graph, t: MatchingTriple) -> LemmaVerdict:
    """Shape of maximal H-H' chains relative to M.

    (a) odd H-H' paths have both end-edges in H;
    (b) end-edges of M-H paths are end-edges of even H-H' paths;
    (c) inner vertices of M-H paths are inner vertices of H-H' chains;
    (d) on even H-H' chains, |H & M| >= |H' & M|;
    (e) an H end-edge of an H-H' path is in M.
    """
    v = LemmaVerdict("lemma-4.3", {k: True for k in "abcde"})
    hh = maximal_chains(g, t.h, t.hp)
    owner = {}
    for c in hh:
        for e in c.edges:
            owner[e] = c
    union = t.h | t.hp
    for c in hh:
        if c.is_path and c.is_odd:
            v.record("a", all((t.h >> e) & 1 for e in c.end_edges), c.vertices)
        if not c.is_odd:
            in_h = (c.mask & t.h & t.m).bit_count()
            in_hp = (c.mask & t.hp & t.m).bit_count()
            v.record("d", in_h >= in_hp, c.vertices)
        if c.is_path:
            for e in c.end_edges:
                if (t.h >> e) & 1:
                    v.record("e", bool((t.m >> e) & 1), c.vertices)
    for c in maximal_chains(g, t.m, t.h):
        if not c.is_path:
            continue
        for e in c.end_edges:
            host = owner.get(e)
            ok = host is not None and host.is_path and not host.is_odd and e in host.end_edges
            v.record("b", ok, c.vertices)
        for x in c.inner:
            v.record("c", g.subset_degree(union, x) == 2, c.vertices)
    return v


@dataclass(frozen=True)
class SaturationMap:
    saturated: tuple[bool, ...]

    @property
    def all_saturated(self) -> bool:
        return all(self.saturated)

    @property
    def unsaturated(self) -> tuple[int, ...]:
        return tuple(v for v, s in enumerate(self.saturated) if not s)


def saturation(g: Graph, pair: DisjointPair) -> SaturationMap:
    union = pair.h | pair.hp
    return SaturationMap(tuple(
        g.subset_degree(union, v) == min(2, g.degree(v)) for v in range(g.n)
    ))


def _in_lambda_mu(g: Graph, pair: DisjointPair, lam: Optional[int], mu: Optional[int]) -> bool:
    if lam is None or mu is None:
        res = matchings.mu_and_Lambda_mu(g, cap=1)
        lam, mu = res.lam, res.mu
    h, hp = pair
    return (not h & hp and g.is_matching(h) and g.is_matching(hp)
            and pair.total == lam and h.bit_count() == mu)


def check_unsaturated_adjacency(g: Graph, pair: DisjointPair, lam: Optional[int] = None,
                                mu: Optional[int] = None,
                                include_trivial: bool = False) -> LemmaVerdict:
    """Adjacency restrictions for a pair in Lambda_mu.

    ``unsaturated-pair``: two adjacent unsaturated vertices are the two ends
    of one even maximal H-H' path. ``even-end``: an end-vertex of an even
    H-H' path is not adjacent to an inner vertex of an odd H-H' path, nor to
    an odd inner vertex of an even H-H' path (numbering vertices from 1
    along the path, so zero-based indices 2, 4, ...). Both use every edge
    of ``g``.

    Two narrower flags are computed alongside: ``unsaturated-pair-outside``
    only looks at edges outside ``H | H'``, and ``even-end-distinct`` only at
    odd inner vertices of a different even path. Single-vertex components
    count as even paths for ``even-end`` when ``include_trivial`` is set.
    """
    if not _in_lambda_mu(g, pair, lam, mu):
        raise ValueError(f"pair is not in Lambda_mu of {to_graph6(g)}")
    flags = ("unsaturated-pair", "even-end", "unsaturated-pair-outside", "even-end-distinct")
    v = LemmaVerdict("unsaturated-adjacency", {f: True for f in flags})
    union = pair.h | pair.hp
    chains = maximal_chains(g, pair.h, pair.hp)
    even_ends: dict[int, Optional[AlternatingChain]] = {}
    for c in chains:
        if c.is_path and not c.is_odd:
            for x in c.ends:
                even_ends[x] = c
    if include_trivial:
        covered = g.covered_vertices(union)
        for x in range(g.n):
            if not (covered >> x) & 1:
                even_ends[x] = None

    sat = saturation(g, pair).saturated
    for i, (x, y) in enumerate(g.edges):
        if not sat[x] and not sat[y]:
            c = even_ends.get(x)
            ok = c is not None and even_ends.get(y) is c and set(c.ends) == {x, y}
            v.record("unsaturated-pair", ok, (x, y))
            if not (union >> i) & 1:
                v.record("unsaturated-pair-outside", ok, (x, y))

    # owner chain of each vertex an even end must avoid
    odd_inner: dict[int, AlternatingChain] = {}
    even_inner: dict[int, AlternatingChain] = {}
    for c in chains:
        if c.is_path and c.is_odd:
            odd_inner.update((x, c) for x in c.inner)
        elif c.is_path:
            even_inner.update((x, c) for x in c.vertices[2:-1:2])
    for x, y in g.edges:
        for u, w in ((x, y), (y, x)):
            if u not in even_ends:
                continue
            if w in odd_inner:
                v.record("even-end", False, (u, w))
            elif w in even_inner:
                v.record("even-end", False, (u, w))
                if even_inner[w] is not even_ends[u]:
                    v.record("even-end-distinct", False, (u, w))
    return v


@dataclass(frozen=True)
class ConjectureResult:
    applicable: bool
    holds: Optional[bool]
    witness: Optional[dict] = None


def conjecture_scan(g: Graph, cap: int = matchings.DEFAULT_CAP) -> ConjectureResult:
    """End-vertices of maximal M-H paths are leaves (connected bipartite
    graphs with mu < nu), checked over every maximally intersecting triple.

    A violation is reported as data, never raised.
    """
    q = basic_queries(g)
    if not (q.is_connected and q.is_bipartite) or g.m == 0:
        return ConjectureResult(False, None)
    params = matchings.param_report(g)
    if params.mu >= params.nu:
        return ConjectureResult(False, None)
    found = matchings.all_maximally_intersecting(g, cap)
    for t in found.items:
        for c in maximal_chains(g, t.m, t.h):
            if not c.is_path:
                continue
            for x in c.ends:
                if g.degree(x) != 1:
                    return ConjectureResult(True, False, {
                        "graph6": to_graph6(g),
                        "M": g.edges_of(t.m), "H": g.edges_of(t.h), "Hprime": g.edges_of(t.hp),
                        "chain": list(c.vertices), "vertex": x,
                    })
    return ConjectureResult(True, True, {"triples": len(found.items), "overflow": found.overflow})


def chain_cover_ok(g: Graph, a: EdgeMask, b: EdgeMask) -> bool:
    """Every edge of the symmetric difference lies on exactly one chain."""
    seen = 0
    for c in maximal_chains(g, a, b):
        if seen & c.mask:
            return False
        seen |= c.mask
    return seen == (a ^ b)

