"""Per-graph analysis pipeline and the fixed registry of checks.

Every graph yields one report record; records are plain dicts so they can
cross process boundaries and serialise to stable JSON.
"""

from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Optional

from . import alternating, budget, matchings, pec, skeleton
from .graph import Graph, parse_graph6, to_graph6

REGISTRY = (
    "pec-identities",
    "lemma-4.2",
    "lemma-4.3",
    "lemma-6.1",
    "lemma-6.2",
    "thm-5.3",
    "thm-5.4",
    "prop-5.2",
    "conjecture",
)

# findings of this check are reported but never turn the exit status red
ADVISORY = frozenset({"conjecture"})

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass(frozen=True)
class Options:
    checks: tuple[str, ...] = REGISTRY
    strict_viii: bool = False
    max_edges: Optional[int] = None
    time_limit: Optional[float] = None
    cap: int = matchings.DEFAULT_CAP
    timing: bool = False


def parse_checks(text: str) -> tuple[str, ...]:
    """Comma-separated check names, or ``all``; result follows registry order."""
    if text.strip() == "all":
        return REGISTRY
    names = {t.strip() for t in text.split(",") if t.strip()}
    unknown = names - set(REGISTRY)
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(sorted(unknown))}")
    if not names:
        raise ValueError("no checks selected")
    return tuple(c for c in REGISTRY if c in names)


def _edges(g: Graph, mask: int) -> list[list[int]]:
    return [list(e) for e in g.edges_of(mask)]


def _triple_record(g: Graph, t: matchings.MatchingTriple) -> dict:
    return {"M": _edges(g, t.m), "H": _edges(g, t.h), "Hprime": _edges(g, t.hp)}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(y) for y in x]
    return x


class _Context:
    """Lazily computed, shared intermediate results for one graph."""

    def __init__(self, g: Graph, opts: Options):
        self.g = g
        self.opts = opts
        self._cache: dict[str, object] = {}

    def get(self, key, make: Callable[[], object]):
        if key not in self._cache:
            self._cache[key] = make()
        return self._cache[key]

    @property
    def params(self) -> matchings.ParamReport:
        return self.get("params", lambda: matchings.param_report(self.g))

    @property
    def minima(self) -> pec.PecMinima:
        return self.get("minima", lambda: pec.pec_minima(self.g))

    @property
    def saturation(self) -> matchings.Saturation:
        return self.get("saturation", lambda: matchings.is_saturated(self.g))

    @property
    def triples(self) -> matchings.Capped:
        return self.get("triples", lambda: matchings.all_maximally_intersecting(self.g, self.opts.cap))

    @property
    def mu_pairs(self) -> matchings.MuResult:
        return self.get("mu_pairs", lambda: matchings.mu_and_Lambda_mu(self.g, self.opts.cap))

    @property
    def theorems(self) -> skeleton.TheoremVerdict:
        return self.get("theorems", lambda: skeleton.verify_skeleton_theorems(
            self.g, self.opts.strict_viii, self.params, self.saturation.saturated))


def _check_identities(ctx: _Context):
    v = pec.check_pec_identities(ctx.g, ctx.params, ctx.minima)
    if v.ok:
        return PASS, None
    return FAIL, [{"identity": i.name, "lhs": i.lhs, "rhs": i.rhs} for i in v.failures()]


def _lemma4(which: str):
    checker = alternating.check_MH_lemma if which == "MH" else alternating.check_HH_lemma

    def run(ctx: _Context):
        found = ctx.triples
        for t in found.items:
            v = checker(ctx.g, t)
            if not v.ok:
                bad = sorted(f for f, ok in v.flags.items() if not ok)
                return FAIL, {"flags": bad, "triple": _triple_record(ctx.g, t),
                              "chain": _jsonable(v.counterexamples[bad[0]])}
        if found.overflow:
            return SKIP, "triple cap reached"
        return PASS, None

    return run


def _adjacency(flag: str, scoped: str):
    def run(ctx: _Context):
        res = ctx.mu_pairs
        first = None
        scoped_ok = True
        for pair in res.pairs:
            v = ctx.get(("adjacency", pair), lambda: alternating.check_unsaturated_adjacency(
                ctx.g, pair, res.lam, res.mu))
            scoped_ok = scoped_ok and v.flags[scoped]
            if first is None and not v.flags[flag]:
                first = {"H": _edges(ctx.g, pair.h), "Hprime": _edges(ctx.g, pair.hp),
                         "where": _jsonable(v.counterexamples[flag])}
        if first is not None:
            first[scoped] = PASS if scoped_ok else FAIL
            return FAIL, first
        if res.overflow:
            return SKIP, "pair cap reached"
        return PASS, None

    return run


def _theorem(name: str):
    def run(ctx: _Context):
        v = ctx.theorems
        if v.status == "unknown" and name != "prop-5.2":
            return SKIP, "skeleton search budget exhausted"
        if v.flags[name]:
            return PASS, None
        return FAIL, v.notes.get(name)

    return run


def _conjecture(ctx: _Context):
    res = alternating.conjecture_scan(ctx.g, ctx.opts.cap)
    if not res.applicable or res.holds:
        if res.applicable and res.witness and res.witness.get("overflow"):
            return SKIP, "triple cap reached"
        return PASS, None
    return FAIL, _jsonable(res.witness)


CHECKS: dict[str, Callable] = {
    "pec-identities": _check_identities,
    "lemma-4.2": _lemma4("MH"),
    "lemma-4.3": _lemma4("HH"),
    "lemma-6.1": _adjacency("unsaturated-pair", "unsaturated-pair-outside"),
    "lemma-6.2": _adjacency("even-end", "even-end-distinct"),
    "thm-5.3": _theorem("thm-5.3"),
    "thm-5.4": _theorem("thm-5.4"),
    "prop-5.2": _theorem("prop-5.2"),
    "conjecture": _conjecture,
}


def _params_record(p: matchings.ParamReport) -> dict:
    return {"nu": p.nu, "lambda": p.lam, "mu": p.mu, "mu_prime": p.mu_prime, "ratio": p.ratio_text()}


def analyze_graph(g: Graph, opts: Options = Options()) -> dict:
    """Full report record for one graph."""
    start = time.perf_counter()
    rec: dict = {"graph6": to_graph6(g), "n": g.n, "m": g.m, "params": None, "pec": None,
                 "saturated": None, "skeletonK": None,
                 "verdicts": {c: SKIP for c in opts.checks}, "details": {}}
    if opts.max_edges is not None and g.m > opts.max_edges:
        rec["details"]["budget"] = f"skipped: budget (m={g.m} > {opts.max_edges})"
    else:
        ctx = _Context(g, opts)
        try:
            with budget.limit(opts.time_limit):
                rec["params"] = _params_record(ctx.params)
                m = ctx.minima
                rec["pec"] = {"p": m.p, "e": m.e, "e_p": m.ep}
                rec["saturated"] = ctx.saturation.saturated
                rec["skeletonK"] = ctx.theorems.recognized
                for name in opts.checks:
                    try:
                        verdict, detail = CHECKS[name](ctx)
                    except (AssertionError, skeleton.SkeletonError, ValueError) as exc:
                        verdict, detail = FAIL, f"error: {exc}"
                    rec["verdicts"][name] = verdict
                    if detail is not None:
                        rec["details"][name] = detail
        except budget.BudgetExceeded:
            rec["details"]["budget"] = "skipped: budget (time limit)"
    if not rec["details"]:
        del rec["details"]
    if opts.timing:
        rec["elapsedMicros"] = int((time.perf_counter() - start) * 1e6)
    return rec


def analyze_graph6(args: tuple[str, Options]) -> dict:
    """Process-pool entry point."""
    text, opts = args
    return analyze_graph(parse_graph6(text), opts)


def conjecture_record(g: Graph, opts: Options = Options()) -> dict:
    rec: dict = {"graph6": to_graph6(g), "applicable": None, "holds": None}
    try:
        with budget.limit(opts.time_limit):
            res = alternating.conjecture_scan(g, opts.cap)
    except budget.BudgetExceeded:
        rec["skipped"] = "budget"
        return rec
    rec["applicable"] = res.applicable
    rec["holds"] = res.holds
    if res.applicable:
        if res.holds:
            rec["triples"] = res.witness["triples"]
            rec["overflow"] = res.witness["overflow"]
        else:
            rec["violation"] = _jsonable(res.witness)
    return rec


def conjecture_graph6(args: tuple[str, Options]) -> dict:
    text, opts = args
    return conjecture_record(parse_graph6(text), opts)


def dumps(rec: dict) -> str:
    return json.dumps(rec, sort_keys=True, separators=(",", ":"))


class Tally:
    """Per-check pass/fail/skip counts for the human summary."""

    def __init__(self, checks: tuple[str, ...]):
        self.checks = checks
        self.counts = {c: Counter() for c in checks}
        self.graphs = 0
        self.malformed = 0
        self.budget_skips = 0

    def add(self, rec: dict) -> None:
        self.graphs += 1
        if "budget" in rec.get("details", {}):
            self.budget_skips += 1
        for c, v in rec["verdicts"].items():
            self.counts[c][v] += 1

    def failures(self, include_advisory: bool = False) -> int:
        return sum(self.counts[c][FAIL] for c in self.checks
                   if include_advisory or c not in ADVISORY)

    def render(self) -> str:
        rows = [("check", PASS, FAIL, SKIP)]
        rows += [(c, *(str(self.counts[c][k]) for k in (PASS, FAIL, SKIP))) for c in self.checks]
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        lines = ["  ".join(cell.ljust(w) if i == 0 else cell.rjust(w)
                           for i, (cell, w) in enumerate(zip(r, widths))) for r in rows]
        lines.append(f"graphs {self.graphs}  malformed {self.malformed}  budget-skipped {self.budget_skips}")
        return "\n".join(lines)
