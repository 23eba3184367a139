"""Exact matching parameters: nu, lambda, mu, mu', the pair sets Lambda and
Lambda_mu, and maximally intersecting triples (M, H, H').

All matchings are edge bitmasks over the graph's canonical edge order.
Ties are broken by integer order of the masks, so witnesses are stable for
a fixed input graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, NamedTuple, Optional

from . import budget, search
from .graph import EdgeMask, Graph, components, iter_bits

# documented soft limits for the exhaustive routines
SOFT_MAX_EDGES = 24
DEFAULT_CAP = 200_000


class DisjointPair(NamedTuple):
    h: EdgeMask
    hp: EdgeMask

    @property
    def total(self) -> int:
        return self.h.bit_count() + self.hp.bit_count()

    @property
    def union(self) -> EdgeMask:
        return self.h | self.hp

    def swapped(self) -> "DisjointPair":
        return DisjointPair(self.hp, self.h)


@dataclass(frozen=True)
class TripleStats:
    size_m: int
    size_h: int
    size_hp: int
    m_in_union: int
    m_in_h: int


@dataclass(frozen=True, order=True)
class MatchingTriple:
    m: EdgeMask
    h: EdgeMask
    hp: EdgeMask

    @property
    def pair(self) -> DisjointPair:
        return DisjointPair(self.h, self.hp)

    @property
    def stats(self) -> TripleStats:
        return TripleStats(
            size_m=self.m.bit_count(),
            size_h=self.h.bit_count(),
            size_hp=self.hp.bit_count(),
            m_in_union=(self.m & (self.h | self.hp)).bit_count(),
            m_in_h=(self.m & self.h).bit_count(),
        )

    def covers(self, g: Graph) -> bool:
        return (self.m | self.h | self.hp) == g.full_mask


class Capped(NamedTuple):
    """A possibly truncated result list; ``overflow`` is never silent."""

    items: list
    overflow: bool


# ------------------------------------------------------------- matchings

def _matching_dfs(g: Graph, target: Optional[int], visit) -> None:
    """Enumerate matchings by branching on the lowest undecided vertex.

    Each matching is produced exactly once. With ``target`` set, branches
    that cannot reach ``target`` edges are cut.
    """
    adj = g.adjmask

    def rec(undecided: int, count: int, chosen: EdgeMask) -> bool:
        # drop vertices with no undecided neighbour
        live = 0
        for v in iter_bits(undecided):
            if adj[v] & undecided:
                live |= 1 << v
        if target is not None and count + live.bit_count() // 2 < target:
            return False
        if not live:
            return bool(visit(chosen, count))
        v = (live & -live).bit_length() - 1
        rest = live & ~(1 << v)
        for w in iter_bits(adj[v] & rest):
            if rec(rest & ~(1 << w), count + 1, chosen | (1 << g.index(v, w))):
                return True
        return rec(rest, count, chosen)

    rec((1 << g.n) - 1, 0, 0)


def all_matchings(g: Graph) -> list[EdgeMask]:
    out: list[EdgeMask] = []
    counter = [0]

    def visit(mask, _count):
        out.append(mask)
        counter[0] += 1
        if counter[0] & 1023 == 0:
            budget.check()

    _matching_dfs(g, None, visit)
    out.sort()
    return out


def matching_number(g: Graph) -> int:
    return max_matching(g).bit_count()


def max_matching(g: Graph) -> EdgeMask:
    """A maximum matching, found by branch and bound over matchings."""
    adj = g.adjmask
    upper = g.n // 2
    best = [-1, 0]
    nodes = [0]

    def rec(undecided: int, count: int, chosen: EdgeMask) -> bool:
        nodes[0] += 1
        if nodes[0] & 1023 == 0:
            budget.check()
        live = 0
        for v in iter_bits(undecided):
            if adj[v] & undecided:
                live |= 1 << v
        if count + live.bit_count() // 2 <= best[0]:
            return False
        if not live:
            best[0], best[1] = count, chosen
            return count >= upper
        v = (live & -live).bit_length() - 1
        rest = live & ~(1 << v)
        for w in iter_bits(adj[v] & rest):
            if rec(rest & ~(1 << w), count + 1, chosen | (1 << g.index(v, w))):
                return True
        return rec(rest, count, chosen)

    rec((1 << g.n) - 1, 0, 0)
    return best[1]


def enumerate_maximum_matchings(g: Graph, cap: int = DEFAULT_CAP) -> Capped:
    """All matchings of size nu(g), sorted, truncated at ``cap``."""
    nu = matching_number(g)
    out: list[EdgeMask] = []
    overflow = [False]

    def visit(mask, count):
        if count == nu:
            if len(out) >= cap:
                overflow[0] = True
                return True
            out.append(mask)
            if len(out) & 1023 == 0:
                budget.check()

    _matching_dfs(g, nu, visit)
    out.sort()
    return Capped(out, overflow[0])


def perfect_matchings(g: Graph) -> list[EdgeMask]:
    if g.n % 2:
        return []
    found = enumerate_maximum_matchings(g)
    return [m for m in found.items if m.bit_count() * 2 == g.n]


# ------------------------------------------------- pairs via decompositions

@dataclass(frozen=True)
class Split:
    """Alternate 2-colourings of one path/even-cycle subgraph ``E'``.

    ``chains`` lists each nontrivial component as its edge indices in
    traversal order, tagged ``"path"`` or ``"cycle"``. Colouring 0 of a chain
    puts positions 0, 2, 4, ... in ``H``.
    """

    union: EdgeMask
    chains: tuple[tuple[str, tuple[int, ...]], ...]

    def colour_options(self, i: int) -> tuple[EdgeMask, EdgeMask]:
        _, idx = self.chains[i]
        even = sum(1 << e for e in idx[0::2])
        odd = sum(1 << e for e in idx[1::2])
        return even, odd

    def max_h(self) -> int:
        total = 0
        for kind, idx in self.chains:
            total += (len(idx) + 1) // 2 if kind == "path" else len(idx) // 2
        return total

    def mu_options(self) -> tuple[EdgeMask, list[tuple[EdgeMask, EdgeMask]]]:
        """Forced ``H`` edges and free binary choices for a largest ``H``."""
        fixed = 0
        free = []
        for i, (kind, idx) in enumerate(self.chains):
            a, b = self.colour_options(i)
            if kind == "path" and len(idx) % 2 == 1:
                fixed |= a
            else:
                free.append((a, b))
        return fixed, free

    def pairs(self) -> Iterator[DisjointPair]:
        opts = [self.colour_options(i) for i in range(len(self.chains))]
        for choice in product(*opts):
            h = 0
            for part in choice:
                h |= part
            yield DisjointPair(h, self.union & ~h)

    def mu_pairs(self) -> Iterator[DisjointPair]:
        fixed, free = self.mu_options()
        for choice in product(*free):
            h = fixed
            for part in choice:
                h |= part
            yield DisjointPair(h, self.union & ~h)


def split(g: Graph, mask: EdgeMask) -> Split:
    census = components(g, mask)
    if not census.is_linear or census.odd_cycles:
        raise ValueError("edge set is not a path/even-cycle subgraph")
    chains = []
    for p in census.paths:
        if len(p) > 1:
            chains.append(("path", tuple(g.index(p[k], p[k + 1]) for k in range(len(p) - 1))))
    for c in census.cycles:
        chains.append(("cycle", tuple(g.index(c[k], c[(k + 1) % len(c)]) for k in range(len(c)))))
    return Split(mask, tuple(chains))


@dataclass(frozen=True)
class LambdaResult:
    lam: int
    pairs: list
    overflow: bool
    unions: tuple[EdgeMask, ...] = field(repr=False)


def lambda_value(g: Graph) -> int:
    """lambda(g) by branch and bound over path/even-cycle subgraphs."""
    return search.max_edges(g)[0]


def lambda_and_Lambda(g: Graph, cap: int = DEFAULT_CAP) -> LambdaResult:
    """lambda(g) and the pairs of Lambda(g) (up to ``cap``)."""
    lam = lambda_value(g)
    unions = tuple(search.masks_with_edges(g, lam))
    pairs: list[DisjointPair] = []
    overflow = False
    for u in unions:
        for pair in split(g, u).pairs():
            if len(pairs) >= cap:
                overflow = True
                break
            pairs.append(pair)
        if overflow:
            break
    pairs.sort()
    return LambdaResult(lam, pairs, overflow, unions)


@dataclass(frozen=True)
class MuResult:
    lam: int
    mu: int
    mu_prime: int
    pairs: list
    overflow: bool
    splits: tuple[Split, ...] = field(repr=False)


# several public entry points need the same splits for one graph
@lru_cache(maxsize=8)
def _mu_splits(g: Graph) -> tuple[int, int, tuple[Split, ...]]:
    lam = lambda_value(g)
    splits = [split(g, u) for u in search.masks_with_edges(g, lam)]
    mu = max((s.max_h() for s in splits), default=0)
    return lam, mu, tuple(s for s in splits if s.max_h() == mu)


def mu_and_Lambda_mu(g: Graph, cap: int = DEFAULT_CAP) -> MuResult:
    """mu(g), mu'(g) and the pairs of Lambda_mu(g) (up to ``cap``)."""
    lam, mu, splits = _mu_splits(g)
    pairs: list[DisjointPair] = []
    overflow = False
    for s in splits:
        for pair in s.mu_pairs():
            if len(pairs) >= cap:
                overflow = True
                break
            pairs.append(pair)
        if overflow:
            break
    pairs.sort()
    return MuResult(lam, mu, lam - mu, pairs, overflow, tuple(splits))


def lambda_exhaustive(g: Graph) -> tuple[int, list[DisjointPair]]:
    """lambda(g) and Lambda(g) by brute force over pairs of matchings.

    Independent of the decomposition search; exponential, small graphs only.
    """
    ms = all_matchings(g)
    best = 0
    pairs: list[DisjointPair] = []
    for h in ms:
        for hp in ms:
            if h & hp:
                continue
            t = h.bit_count() + hp.bit_count()
            if t > best:
                best, pairs = t, []
            if t == best:
                pairs.append(DisjointPair(h, hp))
    pairs.sort()
    return best, pairs


# ------------------------------------------------ maximally intersecting

@dataclass(frozen=True)
class TripleSearch:
    """All optima of the lexicographic triple search, in compact form.

    Each candidate is ``(M, split, options)`` where ``options[j]`` lists the
    tied colour choices of the j-th free chain of ``split``.
    """

    key: tuple[int, int]
    candidates: tuple
    overflow: bool

    def witness(self) -> MatchingTriple:
        return min(self._candidate_minima())

    def _candidate_minima(self) -> Iterator[MatchingTriple]:
        for m, s, fixed, options in self.candidates:
            h = fixed
            for opts in options:
                h |= min(opts)
            yield MatchingTriple(m, h, s.union & ~h)

    def iter_triples(self) -> Iterator[MatchingTriple]:
        for m, s, fixed, options in self.candidates:
            for choice in product(*options):
                h = fixed
                for part in choice:
                    h |= part
                yield MatchingTriple(m, h, s.union & ~h)

    def count(self) -> int:
        total = 0
        for _m, _s, _f, options in self.candidates:
            k = 1
            for opts in options:
                k *= len(opts)
            total += k
        return total

    def covering(self, g: Graph) -> tuple[bool, bool]:
        """(some optimum covers E, all optima cover E)."""
        flags = [(m | s.union) == g.full_mask for m, s, _f, _o in self.candidates]
        return any(flags), all(flags)


def triple_search(g: Graph, cap: int = DEFAULT_CAP) -> TripleSearch:
    """Search maximum matchings x Lambda_mu for maximally intersecting triples.

    Priority: |M & (H | H')| first, then |M & H|.
    """
    mms = enumerate_maximum_matchings(g, cap)
    _lam, _mu, splits = _mu_splits(g)
    prepared = [(s, *s.mu_options()) for s in splits]

    best_union = -1
    stage1 = []
    for m in mms.items:
        for s, fixed, free in prepared:
            k = (m & s.union).bit_count()
            if k > best_union:
                best_union = k
                stage1 = [(m, s, fixed, free)]
            elif k == best_union:
                stage1.append((m, s, fixed, free))
        budget.check()

    best_h = -1
    cands = []
    for m, s, fixed, free in stage1:
        score = (m & fixed).bit_count()
        options = []
        for a, b in free:
            ka, kb = (m & a).bit_count(), (m & b).bit_count()
            if ka > kb:
                score += ka
                options.append((a,))
            elif kb > ka:
                score += kb
                options.append((b,))
            else:
                score += ka
                options.append((a, b))
        if score > best_h:
            best_h = score
            cands = [(m, s, fixed, tuple(options))]
        elif score == best_h:
            cands.append((m, s, fixed, tuple(options)))
    return TripleSearch((best_union, best_h), tuple(cands), mms.overflow)


def maximally_intersecting(g: Graph) -> MatchingTriple:
    """The canonical (least-mask) maximally intersecting triple."""
    if g.m == 0:
        return MatchingTriple(0, 0, 0)
    return triple_search(g).witness()


def all_maximally_intersecting(g: Graph, cap: int = DEFAULT_CAP) -> Capped:
    if g.m == 0:
        return Capped([MatchingTriple(0, 0, 0)], False)
    ts = triple_search(g, cap)
    out = []
    for t in ts.iter_triples():
        if len(out) >= cap:
            return Capped(sorted(out, key=_triple_key), True)
        out.append(t)
    return Capped(sorted(out, key=_triple_key), ts.overflow)


def _triple_key(t: MatchingTriple):
    return (t.m, t.h, t.hp)


@dataclass(frozen=True)
class Saturation:
    saturated: bool
    witness: Optional[MatchingTriple]
    all_triples_agree: bool


def is_saturated(g: Graph) -> Saturation:
    """Whether some maximally intersecting triple covers every edge."""
    if g.m == 0:
        return Saturation(True, MatchingTriple(0, 0, 0), True)
    ts = triple_search(g)
    some, every = ts.covering(g)
    witness = None
    if some:
        witness = min(t for t in ts._candidate_minima() if t.covers(g))
    return Saturation(some, witness, some == every)


# ---------------------------------------------------------------- report

@dataclass(frozen=True)
class ParamReport:
    nu: int
    lam: int
    mu: int
    mu_prime: int
    ratio: Optional[Fraction]
    max_matching: EdgeMask
    mu_pair: Optional[DisjointPair]

    def ratio_text(self) -> str:
        if self.ratio is None:
            return "undefined"
        return f"{self.ratio.numerator}/{self.ratio.denominator}"


def param_report(g: Graph) -> ParamReport:
    mm = max_matching(g)
    nu = mm.bit_count()
    lam, mu, splits = _mu_splits(g)
    pair = min((p for s in splits for p in s.mu_pairs()), default=None)
    ratio = Fraction(mu, nu) if nu else None
    if mu > nu or lam - mu > mu:
        raise AssertionError(f"parameter invariants violated: nu={nu} lambda={lam} mu={mu}")
    return ParamReport(nu, lam, mu, lam - mu, ratio, mm, pair)
