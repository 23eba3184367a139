"""Simple undirected graphs on dense integer labels.

Edges are kept in lexicographic order and every edge subset used elsewhere
in the package is an ``int`` bitmask over that order (bit ``i`` = edge ``i``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

EdgeMask = int


class GraphFormatError(ValueError):
    """Raised when a textual graph encoding cannot be decoded.

    ``position`` is a byte offset for graph6 input and a 1-based line number
    for edge-list input.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at {position})")
        self.position = position


class Graph:
    """Immutable simple graph with vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "adj", "adjmask", "edge_index", "_endpoint_masks", "_incident")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            e = (u, v) if u < v else (v, u)
            if e in norm:
                raise ValueError(f"duplicate edge {e}")
            norm.add(e)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(norm))
        self.edge_index = {e: i for i, e in enumerate(self.edges)}
        adj = [set() for _ in range(n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(a) for a in adj)
        self.adjmask = tuple(sum(1 << w for w in a) for a in adj)
        self._endpoint_masks = tuple((1 << u) | (1 << v) for u, v in self.edges)
        inc = [0] * n
        for i, (u, v) in enumerate(self.edges):
            inc[u] |= 1 << i
            inc[v] |= 1 << i
        self._incident = tuple(inc)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def full_mask(self) -> EdgeMask:
        return (1 << len(self.edges)) - 1

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def index(self, u: int, v: int) -> int:
        """Index of edge ``{u, v}`` in the canonical edge order."""
        return self.edge_index[(u, v) if u < v else (v, u)]

    def endpoint_mask(self, i: int) -> int:
        """Vertex bitmask of the two endpoints of edge ``i``."""
        return self._endpoint_masks[i]

    def incident_mask(self, v: int) -> EdgeMask:
        """Edge bitmask of the edges incident to ``v``."""
        return self._incident[v]

    # edge subset helpers

    def mask_of(self, edges: Iterable[tuple[int, int]]) -> EdgeMask:
        mask = 0
        for u, v in edges:
            mask |= 1 << self.index(u, v)
        return mask

    def edges_of(self, mask: EdgeMask) -> list[tuple[int, int]]:
        return [self.edges[i] for i in iter_bits(mask)]

    def is_matching(self, mask: EdgeMask) -> bool:
        seen = 0
        for i in iter_bits(mask):
            em = self._endpoint_masks[i]
            if seen & em:
                return False
            seen |= em
        return True

    def covered_vertices(self, mask: EdgeMask) -> int:
        """Vertex bitmask of endpoints of the edges in ``mask``."""
        seen = 0
        for i in iter_bits(mask):
            seen |= self._endpoint_masks[i]
        return seen

    def subset_degree(self, mask: EdgeMask, v: int) -> int:
        return (self._incident[v] & mask).bit_count()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------- graph6

_G6_HEADER = ">>graph6<<"


def _g6_size_bytes(n: int) -> list[int]:
    if n < 63:
        return [n + 63]
    if n < 258048:
        return [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    if n < 68719476736:
        return [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    raise ValueError("graph too large for graph6")


def to_graph6(g: Graph) -> str:
    """Encode ``g`` as a graph6 string (no header, no newline)."""
    out = _g6_size_bytes(g.n)
    bits = []
    for j in range(1, g.n):
        aj = g.adjmask[j]
        for i in range(j):
            bits.append((aj >> i) & 1)
    bits.extend([0] * (-len(bits) % 6))
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(val + 63)
    return bytes(out).decode("ascii")


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line (optional ``>>graph6<<`` header)."""
    s = text.rstrip("\r\n")
    offset = 0
    if s.startswith(_G6_HEADER):
        offset = len(_G6_HEADER)
    if offset >= len(s):
        raise GraphFormatError("empty graph6 string", offset)
    for k in range(offset, len(s)):
        if not 63 <= ord(s[k]) <= 126:
            raise GraphFormatError(f"character {s[k]!r} outside graph6 range", k)
    data = [ord(c) - 63 for c in s]
    pos = offset
    if data[pos] < 63:
        n = data[pos]
        pos += 1
    elif len(data) > pos + 1 and data[pos + 1] == 63:
        if len(data) < pos + 8:
            raise GraphFormatError("truncated 8-byte vertex count", len(s))
        n = 0
        for k in range(pos + 2, pos + 8):
            n = (n << 6) | data[k]
        pos += 8
    else:
        if len(data) < pos + 4:
            raise GraphFormatError("truncated 4-byte vertex count", len(s))
        n = 0
        for k in range(pos + 1, pos + 4):
            n = (n << 6) | data[k]
        pos += 4
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(data) - pos < need:
        raise GraphFormatError(f"expected {need} data bytes for n={n}, got {len(data) - pos}", len(s))
    if len(data) - pos > need:
        raise GraphFormatError("trailing data after graph6 adjacency bits", pos + need)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = data[pos + k // 6]
            if (byte >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    if need and nbits % 6:
        pad = data[pos + need - 1] & ((1 << (6 - nbits % 6)) - 1)
        if pad:
            raise GraphFormatError("nonzero padding bits", pos + need - 1)
    return Graph(n, edges)


def parse_edge_list(text: str) -> Graph:
    """Parse ``n <count>`` followed by one ``u v`` pair per line.

    Blank lines and ``#`` comments are ignored.
    """
    n: Optional[int] = None
    edges: list[tuple[int, int]] = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit():
                raise GraphFormatError("expected header 'n <count>'", lineno)
            n = int(parts[1])
            continue
        if len(parts) != 2:
            raise GraphFormatError("expected two vertex labels", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError("vertex labels must be integers", lineno) from None
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex out of range for n={n}", lineno)
        e = (min(u, v), max(u, v))
        if e in seen:
            raise GraphFormatError(f"duplicate edge {e}", lineno)
        seen.add(e)
        edges.append(e)
    if n is None:
        raise GraphFormatError("missing header 'n <count>'", 1)
    return Graph(n, edges)


def to_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def to_dot(g: Graph, highlight: Optional[dict[str, EdgeMask]] = None) -> str:
    """DOT text for ``g``; ``highlight`` maps a colour name to an edge mask."""
    colour = {}
    for name, mask in (highlight or {}).items():
        for i in iter_bits(mask):
            colour.setdefault(i, name)
    lines = ["graph G {"]
    lines += [f"  {v};" for v in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        attr = f' [color="{colour[i]}"]' if i in colour else ""
        lines.append(f"  {u} -- {v}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------- component census

@dataclass(frozen=True)
class ComponentCensus:
    """Components of a spanning subgraph, classified as paths or cycles.

    Paths are vertex sequences (an isolated vertex is a one-element path);
    cycles list their vertices once, in traversal order. ``other`` holds
    components that are neither, as ``(vertices, offending_vertex)``.
    """

    paths: tuple[tuple[int, ...], ...]
    cycles: tuple[tuple[int, ...], ...]
    other: tuple[tuple[tuple[int, ...], int], ...] = field(default=())

    @property
    def odd_paths(self) -> int:
        return sum(1 for p in self.paths if len(p) % 2 == 0)

    @property
    def even_paths(self) -> int:
        return sum(1 for p in self.paths if len(p) % 2 == 1)

    @property
    def even_cycles(self) -> int:
        return sum(1 for c in self.cycles if len(c) % 2 == 0)

    @property
    def odd_cycles(self) -> int:
        return sum(1 for c in self.cycles if len(c) % 2 == 1)

    @property
    def is_linear(self) -> bool:
        """True when every component is a path or a cycle."""
        return not self.other


def components(g: Graph, mask: Optional[EdgeMask] = None) -> ComponentCensus:
    """Census of the spanning subgraph ``(V, mask)`` (all of ``g`` by default)."""
    if mask is None:
        mask = g.full_mask
    nbrs: list[list[int]] = [[] for _ in range(g.n)]
    for i in iter_bits(mask):
        u, v = g.edges[i]
        nbrs[u].append(v)
        nbrs[v].append(u)
    seen = [False] * g.n
    paths, cycles, other = [], [], []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            x = stack.pop()
            for y in nbrs[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        bad = [x for x in comp if len(nbrs[x]) > 2]
        if bad:
            other.append((tuple(sorted(comp)), min(bad)))
            continue
        ends = sorted(x for x in comp if len(nbrs[x]) <= 1)
        if ends:
            paths.append(_walk(nbrs, ends[0]))
        else:
            cycles.append(_walk(nbrs, min(comp)))
    return ComponentCensus(tuple(paths), tuple(cycles), tuple(other))


def _walk(nbrs: list[list[int]], start: int) -> tuple[int, ...]:
    # cycles leave their minimum vertex towards the smaller neighbour
    order = [start]
    prev, cur = -1, start
    while True:
        cand = [y for y in nbrs[cur] if y != prev]
        if not cand:
            break
        nxt = min(cand) if prev == -1 else cand[0]
        if nxt == start:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    return tuple(order)


# ----------------------------------------------------------- basic queries

@dataclass(frozen=True)
class BasicQueries:
    degrees: tuple[int, ...]
    leaves: tuple[int, ...]
    is_connected: bool
    is_bipartite: bool
    bipartition: Optional[tuple[tuple[int, ...], tuple[int, ...]]]
    odd_cycle: Optional[tuple[int, ...]]


def is_connected(g: Graph, mask: Optional[EdgeMask] = None) -> bool:
    if g.n == 0:
        return True
    adj = g.adjmask if mask is None else _adjmask_of(g, mask)
    reach = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        frontier = nxt & ~reach
        reach |= nxt
    return reach == (1 << g.n) - 1


def _adjmask_of(g: Graph, mask: EdgeMask) -> list[int]:
    adj = [0] * g.n
    for i in iter_bits(mask):
        u, v = g.edges[i]
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def two_colouring(g: Graph, mask: Optional[EdgeMask] = None):
    """Return ``(colour, None)`` for a bipartite subgraph or ``(None, odd_cycle)``."""
    if mask is None:
        nbrs = [sorted(a) for a in g.adj]
    else:
        nbrs = [[] for _ in range(g.n)]
        for u, v in g.edges_of(mask):
            nbrs[u].append(v)
            nbrs[v].append(u)
    colour = [-1] * g.n
    parent = [-1] * g.n
    for s in range(g.n):
        if colour[s] != -1:
            continue
        colour[s] = 0
        queue = [s]
        for x in queue:
            for y in nbrs[x]:
                if colour[y] == -1:
                    colour[y] = 1 - colour[x]
                    parent[y] = x
                    queue.append(y)
                elif colour[y] == colour[x]:
                    return None, _odd_cycle(parent, x, y)
    return colour, None


def _odd_cycle(parent: list[int], x: int, y: int) -> tuple[int, ...]:
    anc_x = [x]
    while parent[anc_x[-1]] != -1:
        anc_x.append(parent[anc_x[-1]])
    anc_y = [y]
    while parent[anc_y[-1]] != -1:
        anc_y.append(parent[anc_y[-1]])
    pos_x = {v: i for i, v in enumerate(anc_x)}
    for j, v in enumerate(anc_y):
        if v in pos_x:
            i = pos_x[v]
            return tuple(anc_x[:i + 1] + list(reversed(anc_y[:j])))
    raise AssertionError("BFS tree endpoints must share an ancestor")


def basic_queries(g: Graph) -> BasicQueries:
    degs = tuple(g.degrees())
    colour, cycle = two_colouring(g)
    if colour is None:
        bip = None
    else:
        bip = (tuple(v for v in range(g.n) if colour[v] == 0),
               tuple(v for v in range(g.n) if colour[v] == 1))
    return BasicQueries(
        degrees=degs,
        leaves=tuple(v for v, d in enumerate(degs) if d == 1),
        is_connected=is_connected(g),
        is_bipartite=colour is not None,
        bipartition=bip,
        odd_cycle=cycle,
    )


def remove_vertices(g: Graph, removed: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on the remaining vertices plus a new->old label map."""
    removed = set(removed)
    for v in removed:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    keep = [v for v in range(g.n) if v not in removed]
    new = {old: i for i, old in enumerate(keep)}
    edges = [(new[u], new[v]) for u, v in g.edges if u in new and v in new]
    return Graph(len(keep), edges), keep


# --------------------------------------------------------- small builders

def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
