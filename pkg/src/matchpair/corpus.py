"""Graph corpora: every connected graph up to isomorphism for small orders,
plus seed-deterministic random graphs.

The canonical form of a graph is its relabelling whose adjacency bit-string
(graph6 column order: (0,1), (0,2), (1,2), (0,3), ...) is lexicographically
smallest over all vertex permutations. It is found by a prefix search that
places one vertex per column and skips interchangeable twin vertices.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterator, Optional

from .graph import Graph, basic_queries, is_connected, to_graph6

EXHAUSTIVE_LIMIT = 8

# connected graphs on exactly n vertices, up to isomorphism
CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}


def _twins(adj: list[int], u: int, w: int) -> bool:
    strip = ~((1 << u) | (1 << w))
    return adj[u] & strip == adj[w] & strip


def _min_order(g: Graph, rank: list[int]) -> tuple[list[int], list[int]]:
    """Smallest bit-string over vertex orders that list ``rank`` classes in
    ascending order; returns ``(order, columns)``."""
    n = g.n
    adj = g.adjmask
    best_cols: list[int] = []
    best_perm: list[int] = []
    perm: list[int] = []
    cols: list[int] = []

    def rec(left: int, col: list[int]) -> None:
        # col[v]: bits of v against the placed vertices, earliest position first
        nonlocal best_cols, best_perm
        j = len(perm)
        if j == n:
            if not best_perm or cols < best_cols:
                best_cols, best_perm = cols[:], perm[:]
            return
        live = [v for v in range(n) if (left >> v) & 1]
        r = min(rank[v] for v in live)
        live = [v for v in live if rank[v] == r]
        low = min(col[v] for v in live)
        if best_perm:
            cols.append(low)
            hopeless = cols > best_cols[:j + 1]
            cols.pop()
            if hopeless:
                return
        tried: list[int] = []
        for v in live:
            if col[v] != low or any(_twins(adj, v, t) for t in tried):
                continue
            tried.append(v)
            perm.append(v)
            cols.append(low)
            a = adj[v]
            rec(left & ~(1 << v), [(c << 1) | ((a >> w) & 1) for w, c in enumerate(col)])
            perm.pop()
            cols.pop()

    rec((1 << n) - 1, [0] * n)
    return best_perm, best_cols


def canonical_order(g: Graph) -> list[int]:
    """Vertex order realising the lexicographically smallest bit-string."""
    return _min_order(g, [0] * g.n)[0]


def refined_classes(g: Graph) -> list[int]:
    """Stable colour-refinement classes, numbered by an isomorphism-invariant rule."""
    colour = [len(a) for a in g.adj]
    while True:
        sig = [(colour[v], tuple(sorted(colour[w] for w in g.adj[v]))) for v in range(g.n)]
        names = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [names[s] for s in sig]
        if len(names) == len(set(colour)):
            return new
        colour = new


def certificate(g: Graph) -> tuple:
    """Isomorphism certificate: equal exactly for isomorphic graphs.

    Cheaper than :func:`canonical_form` because only orders compatible with
    the refined classes are searched; it is not the global minimum.
    """
    rank = refined_classes(g)
    order, cols = _min_order(g, rank)
    return g.n, tuple(sorted(rank)), tuple(cols)


def canonical_form(g: Graph) -> Graph:
    order = canonical_order(g)
    pos = {v: i for i, v in enumerate(order)}
    return Graph(g.n, [(pos[u], pos[v]) for u, v in g.edges])


def canonical_graph6(g: Graph) -> str:
    return to_graph6(canonical_form(g))


def relabel(g: Graph, perm: list[int]) -> Graph:
    """The graph with vertex ``v`` renamed ``perm[v]``."""
    return Graph(g.n, [(perm[u], perm[v]) for u, v in g.edges])


def connected_of_order(n: int, seed: Optional[int] = None) -> list[Graph]:
    return list(_connected_of_order(n, seed))


@lru_cache(maxsize=None)
def _connected_of_order(n: int, seed: Optional[int]) -> tuple[Graph, ...]:
    """Canonical representatives of all connected graphs on ``n`` vertices.

    Built from the order-(n-1) classes by attaching a new vertex to every
    nonempty neighbour set; every connected graph has a vertex whose removal
    keeps it connected, so nothing is missed. ``seed`` scrambles each parent's
    labels first, which must not change the result.
    """
    if n < 1:
        return ()
    if n > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive generation is limited to n <= {EXHAUSTIVE_LIMIT}")
    if n == 1:
        return (Graph(1),)
    rng = random.Random(seed) if seed is not None else None
    seen: dict[tuple, Graph] = {}
    new = n - 1
    for parent in _connected_of_order(n - 1, seed):
        if rng is not None:
            perm = list(range(parent.n))
            rng.shuffle(perm)
            parent = relabel(parent, perm)
        for s in range(1, 1 << new):
            edges = list(parent.edges) + [(v, new) for v in range(new) if (s >> v) & 1]
            child = Graph(n, edges)
            seen.setdefault(certificate(child), child)
    reps = {}
    for child in seen.values():
        c = canonical_form(child)
        reps[to_graph6(c)] = c
    return tuple(reps[k] for k in sorted(reps))


def all_connected(n_max: int, seed: Optional[int] = None) -> Iterator[Graph]:
    """Connected graphs on 1..n_max vertices, by order then canonical graph6."""
    if n_max > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive generation is limited to n <= {EXHAUSTIVE_LIMIT}")
    for n in range(1, n_max + 1):
        yield from connected_of_order(n, seed)


def random_graphs(n: int, p: float, count: int, seed: int) -> Iterator[Graph]:
    """``count`` G(n', p) samples, each order n' drawn uniformly from 2..n."""
    if n < 2 or not 0 <= p <= 1 or count < 0:
        raise ValueError("need n >= 2, 0 <= p <= 1 and count >= 0")
    rng = random.Random(seed)
    for _ in range(count):
        order = rng.randint(2, n)
        yield Graph(order, [(u, v) for v in range(order) for u in range(v) if rng.random() < p])


def random_bipartite(n: int, p: float, count: int, seed: int) -> Iterator[Graph]:
    """Random bipartite graphs: order from 2..n, a random split, edges across with prob ``p``."""
    if n < 2 or not 0 <= p <= 1 or count < 0:
        raise ValueError("need n >= 2, 0 <= p <= 1 and count >= 0")
    rng = random.Random(seed)
    for _ in range(count):
        order = rng.randint(2, n)
        left = rng.randint(1, order - 1)
        yield Graph(order, [(u, v) for u in range(left) for v in range(left, order)
                            if rng.random() < p])


def bipartite_slice(graphs) -> Iterator[Graph]:
    return (g for g in graphs if basic_queries(g).is_bipartite)


def connected_slice(graphs) -> Iterator[Graph]:
    return (g for g in graphs if is_connected(g))
