"""Path/even-cycle (PEC) decompositions and the minima p, e and e_p.

A PEC decomposition is a spanning subgraph whose components are paths or
even cycles; isolated vertices count as even paths. ``p`` counts path
components and ``e`` even-path components.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from . import matchings, search
from .graph import ComponentCensus, EdgeMask, Graph, components, to_graph6
from .matchings import DisjointPair


class PecError(ValueError):
    pass


@dataclass(frozen=True)
class PecDecomposition:
    mask: EdgeMask
    census: ComponentCensus

    @property
    def p(self) -> int:
        return len(self.census.paths)

    @property
    def e(self) -> int:
        return self.census.even_paths

    @property
    def size(self) -> int:
        return self.mask.bit_count()


def decomposition(g: Graph, mask: EdgeMask) -> PecDecomposition:
    """Wrap an edge set, checking that it really is a PEC decomposition."""
    census = components(g, mask)
    if not census.is_linear:
        comp, v = census.other[0]
        raise PecError(f"vertex {v} has degree above 2 in the subgraph")
    if census.odd_cycles:
        raise PecError("subgraph contains an odd cycle")
    return PecDecomposition(mask, census)


def enumerate_pec(g: Graph, cap: Optional[int] = None) -> Iterator[PecDecomposition]:
    """Yield every PEC decomposition once; stops after ``cap`` items.

    Use :func:`count_pec` when the overflow flag is needed.
    """
    for k, mask in enumerate(search.iter_all(g)):
        if cap is not None and k >= cap:
            return
        yield decomposition(g, mask)


def count_pec(g: Graph, cap: int) -> tuple[int, bool]:
    """Number of PEC decompositions, saturating at ``cap`` with a flag."""
    k = 0
    for _ in search.iter_all(g):
        k += 1
        if k > cap:
            return cap, True
    return k, False


@dataclass(frozen=True)
class PecMinima:
    p: int
    e: int
    ep: int
    p_witness: PecDecomposition
    e_witness: PecDecomposition
    ep_witness: PecDecomposition


def pec_minima(g: Graph) -> PecMinima:
    """Exact p(G), e(G) and e_p(G), each with a witness decomposition.

    Both searches minimise component counts directly (no use of edge
    counts), so they stay independent of the matching solvers.
    """
    # n and e(G') share parity, which gives a floor for the e search
    (e_best,), e_mask = search.minimize(g, lambda p, e: (e,), floor=(g.n % 2,))
    (p_best, ep_best), pe_mask = search.minimize(g, lambda p, e: (p, e))
    pe = decomposition(g, pe_mask)
    return PecMinima(p_best, e_best, ep_best, pe, decomposition(g, e_mask), pe)


def pec_from_matching(g: Graph, m: EdgeMask) -> PecDecomposition:
    """The decomposition ``(V, M)`` for a maximum matching ``M``."""
    if not g.is_matching(m):
        raise PecError("edge set is not a matching")
    if m.bit_count() != matchings.matching_number(g):
        raise PecError("matching is not maximum")
    return decomposition(g, m)


def pec_from_pair(g: Graph, pair: DisjointPair, minima: Optional[PecMinima] = None) -> PecDecomposition:
    """The decomposition ``(V, H | H')`` for a pair in Lambda(G).

    Asserts ``p = p(G)``, and ``e = e_p(G)`` when the pair is in Lambda_mu(G).
    """
    h, hp = pair
    if h & hp or not g.is_matching(h) or not g.is_matching(hp):
        raise PecError("not a pair of disjoint matchings")
    lam = matchings.lambda_value(g)
    if pair.total != lam:
        raise PecError(f"pair has {pair.total} edges but lambda(G) = {lam}")
    d = decomposition(g, h | hp)
    minima = minima or pec_minima(g)
    if d.p != minima.p:
        raise AssertionError(f"p mismatch for {to_graph6(g)}: {d.p} != {minima.p}")
    mu = matchings.mu_and_Lambda_mu(g, cap=1).mu
    if h.bit_count() == mu and d.e != minima.ep:
        raise AssertionError(f"e_p mismatch for {to_graph6(g)}: {d.e} != {minima.ep}")
    return d


@dataclass(frozen=True)
class Identity:
    name: str
    lhs: object
    rhs: object

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class IdentityVerdict:
    graph6: str
    identities: tuple[Identity, ...]

    @property
    def ok(self) -> bool:
        return all(i.ok for i in self.identities)

    def failures(self) -> list[Identity]:
        return [i for i in self.identities if not i.ok]


def check_pec_identities(g: Graph, params: Optional[matchings.ParamReport] = None,
                         minima: Optional[PecMinima] = None) -> IdentityVerdict:
    """Compare nu, lambda, mu, mu' with their decomposition formulas.

    Twice-scaled quantities are compared so odd numerators show up as
    failures instead of being rounded away.
    """
    params = params or matchings.param_report(g)
    minima = minima or pec_minima(g)
    n = g.n
    ids = (
        Identity("2nu = n - e", 2 * params.nu, n - minima.e),
        Identity("lambda = n - p", params.lam, n - minima.p),
        Identity("2mu = n - e_p", 2 * params.mu, n - minima.ep),
        Identity("mu - mu' = p - e_p", params.mu - params.mu_prime, minima.p - minima.ep),
        Identity("mu = nu iff e = e_p", params.mu == params.nu, minima.e == minima.ep),
    )
    return IdentityVerdict(to_graph6(g), ids)
