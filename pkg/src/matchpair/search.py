"""Depth-first search over spanning subgraphs whose components are paths or
even cycles.

Edges are decided in canonical index order (include branch first). The
search state tracks, for every path endpoint, the opposite endpoint and the
path length, so odd cycles are rejected the moment they would close and the
component census of the current partial subgraph is always at hand.
"""

from __future__ import annotations

from typing import Callable, Iterator, Optional

from . import budget
from .graph import Graph


class LinearForestSearch:
    """Incremental state for one DFS over a fixed graph.

    ``partner[x]`` is the other endpoint of the path ending at ``x``
    (``x`` itself when isolated, ``-1`` for inner or cycle vertices) and
    ``plen[x]`` the length of that path.
    """

    def __init__(self, g: Graph):
        self.g = g
        self.n = g.n
        self.m = g.m
        self.eu = [u for u, _ in g.edges]
        self.ev = [v for _, v in g.edges]
        self.deg = [0] * g.n
        self.partner = list(range(g.n))
        self.plen = [0] * g.n
        self.rem = g.degrees()
        self.mask = 0
        self.count = 0
        self.cycles = 0
        # incident edge indices per vertex, ascending
        self.inc = [[] for _ in range(g.n)]
        for i, (u, v) in enumerate(g.edges):
            self.inc[u].append(i)
            self.inc[v].append(i)
        self.nodes = 0

    # -------------------------------------------------------------- moves

    def add(self, i: int):
        """Try to include edge ``i``; return an undo record or ``None``."""
        u, v = self.eu[i], self.ev[i]
        deg, partner, plen = self.deg, self.partner, self.plen
        if deg[u] >= 2 or deg[v] >= 2:
            return None
        if partner[u] == v:
            if plen[u] % 2 == 0:
                return None
            rec = (i, ((u, v, plen[u]), (v, u, plen[v])), True)
            partner[u] = partner[v] = -1
            self.cycles += 1
        else:
            a, b = partner[u], partner[v]
            length = plen[u] + plen[v] + 1
            saved = {x: (x, partner[x], plen[x]) for x in (u, v, a, b)}
            rec = (i, tuple(saved.values()), False)
            if a != u:
                partner[u] = -1
            if b != v:
                partner[v] = -1
            partner[a], partner[b] = b, a
            plen[a] = plen[b] = length
        deg[u] += 1
        deg[v] += 1
        self.mask |= 1 << i
        self.count += 1
        return rec

    def undo(self, rec) -> None:
        i, saved, closed_cycle = rec
        for x, p, length in saved:
            self.partner[x] = p
            self.plen[x] = length
        self.deg[self.eu[i]] -= 1
        self.deg[self.ev[i]] -= 1
        self.mask ^= 1 << i
        self.count -= 1
        if closed_cycle:
            self.cycles -= 1

    # ---------------------------------------------------------- summaries

    def census(self) -> tuple[int, int]:
        """``(paths, even_paths)`` of the current subgraph."""
        paths = even = 0
        for x in range(self.n):
            y = self.partner[x]
            if y >= x:
                paths += 1
                if self.plen[x] % 2 == 0:
                    even += 1
        return paths, even

    def _frozen(self, x: int, i: int) -> bool:
        # no undecided edge at x can still be included
        deg = self.deg
        for j in self.inc[x]:
            if j >= i:
                y = self.eu[j] if self.ev[j] == x else self.ev[j]
                if deg[y] < 2:
                    return False
        return True

    def closed_census(self, i: int) -> tuple[int, int]:
        """``(paths, even_paths)`` among components that can no longer change."""
        paths = even = 0
        for x in range(self.n):
            y = self.partner[x]
            if y >= x and self._frozen(x, i) and (y == x or self._frozen(y, i)):
                paths += 1
                if self.plen[x] % 2 == 0:
                    even += 1
        return paths, even

    def capacity_bound(self, i: int) -> int:
        """Upper bound on how many more edges can be added from index ``i``."""
        cap = 0
        deg, rem = self.deg, self.rem
        for x in range(self.n):
            free = 2 - deg[x]
            cap += free if free < rem[x] else rem[x]
        left = self.m - i
        return min(left, cap // 2)

    # -------------------------------------------------------------- driver

    def run(self, prune: Callable[["LinearForestSearch", int], bool],
            leaf: Callable[["LinearForestSearch"], Optional[bool]]) -> None:
        """Run the DFS; ``leaf`` returning ``True`` stops the whole search."""
        self._stop = False
        self._dfs(0, prune, leaf)

    def _dfs(self, i, prune, leaf) -> None:
        self.nodes += 1
        if self.nodes & 1023 == 0:
            budget.check()
        if prune(self, i):
            return
        if i == self.m:
            if leaf(self):
                self._stop = True
            return
        u, v = self.eu[i], self.ev[i]
        self.rem[u] -= 1
        self.rem[v] -= 1
        rec = self.add(i)
        if rec is not None:
            self._dfs(i + 1, prune, leaf)
            self.undo(rec)
        if not self._stop:
            self._dfs(i + 1, prune, leaf)
        self.rem[u] += 1
        self.rem[v] += 1


def max_edges(g: Graph) -> tuple[int, int]:
    """Branch and bound for the largest path/even-cycle spanning subgraph.

    Returns ``(size, mask)``; the witness is the first optimum in include-first
    order.
    """
    best = [-1, 0]

    def prune(s: LinearForestSearch, i: int) -> bool:
        return s.count + s.capacity_bound(i) <= best[0]

    def leaf(s: LinearForestSearch):
        if s.count > best[0]:
            best[0], best[1] = s.count, s.mask
        # a spanning subgraph of maximum degree 2 has at most n edges
        return best[0] == g.n

    LinearForestSearch(g).run(prune, leaf)
    return best[0], best[1]


def masks_with_edges(g: Graph, size: int) -> list[int]:
    """All path/even-cycle spanning subgraphs with exactly ``size`` edges."""
    found: list[int] = []

    def prune(s: LinearForestSearch, i: int) -> bool:
        return s.count + s.capacity_bound(i) < size or s.count > size

    def leaf(s: LinearForestSearch):
        if s.count == size:
            found.append(s.mask)

    LinearForestSearch(g).run(prune, leaf)
    found.sort()
    return found


def iter_all(g: Graph) -> Iterator[int]:
    """Every path/even-cycle spanning subgraph, as edge masks."""
    # explicit stack keeps this a lazy generator
    s = LinearForestSearch(g)
    stack: list = [(0, None, 0)]
    while stack:
        i, rec, phase = stack.pop()
        if phase == 0:
            s.nodes += 1
            if s.nodes & 1023 == 0:
                budget.check()
            if i == s.m:
                yield s.mask
                continue
            stack.append((i, None, 1))
            r = s.add(i)
            if r is not None:
                stack.append((i, r, 2))
                stack.append((i + 1, None, 0))
        elif phase == 2:
            s.undo(rec)
        else:
            stack.append((i + 1, None, 0))


def minimize(g: Graph, key: Callable[[int, int], tuple],
             floor: Optional[tuple] = None,
             feasible: Optional[Callable[[int, int], bool]] = None) -> tuple[tuple, int]:
    """Minimise ``key(paths, even_paths)`` over all decompositions.

    ``key`` must be monotone in both arguments so the census of closed
    components is a valid lower bound. ``feasible`` restricts which leaves
    count. Search stops early once ``floor`` is reached.
    """
    best: list = [None, 0]

    def prune(s: LinearForestSearch, i: int) -> bool:
        if best[0] is None:
            return False
        cp, ce = s.closed_census(i)
        # every component is a path or cycle, so paths = n - edges
        cp = max(cp, s.n - s.count - s.capacity_bound(i))
        return key(cp, ce) >= best[0]

    def leaf(s: LinearForestSearch):
        p, e = s.census()
        if feasible is not None and not feasible(p, e):
            return False
        k = key(p, e)
        if best[0] is None or k < best[0]:
            best[0], best[1] = k, s.mask
        return floor is not None and best[0] <= floor

    LinearForestSearch(g).run(prune, leaf)
    return best[0], best[1]
