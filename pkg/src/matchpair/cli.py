"""Command-line front end: ``matchpair analyze | verify | generate | conjecture``.

Exit status: 0 when every check passed, 1 on check failures, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Iterator, Optional

from . import checks, corpus, skeleton
from .graph import (Graph, GraphFormatError, basic_queries, parse_edge_list, parse_graph6,
                    to_graph6)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


def _quad(text: str) -> tuple[int, float, int, int]:
    try:
        n, p, count, seed = text.split(",")
        return int(n), float(p), int(count), int(seed)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected n,p,count,seed, got {text!r}") from None


def _add_corpus_args(sp: argparse.ArgumentParser) -> None:
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="FILE", help="graph6 lines ('-' for stdin)")
    src.add_argument("--all-connected", type=int, metavar="N",
                     help=f"every connected graph on 1..N vertices (N <= {corpus.EXHAUSTIVE_LIMIT})")
    src.add_argument("--random", type=_quad, metavar="n,p,count,seed", help="random graphs")
    src.add_argument("--random-bipartite", type=_quad, metavar="n,p,count,seed",
                     help="random bipartite graphs")
    sp.add_argument("--format", choices=("graph6", "edgelist"), default="graph6",
                    help="format of --input (edgelist: one graph per file)")
    sp.add_argument("--bipartite-only", action="store_true", help="keep bipartite graphs only")
    sp.add_argument("--connected-only", action="store_true", help="keep connected graphs only")
    sp.add_argument("--jobs", type=int, default=1, metavar="K", help="worker processes")
    sp.add_argument("--keep-going", action="store_true", help="skip malformed input lines")
    sp.add_argument("--max-edges", type=int, metavar="M", help="skip graphs with more edges")
    sp.add_argument("--time-limit-per-graph", type=float, metavar="SEC",
                    help="skip the rest of a graph's analysis after SEC seconds")
    sp.add_argument("--strict-viii", action="store_true",
                    help="build the (viii) matching from even edges of G - V'")
    sp.add_argument("--timing", action="store_true", help="add elapsedMicros to each record")
    out = sp.add_mutually_exclusive_group()
    out.add_argument("--json", dest="mode", action="store_const", const="json",
                     help="JSON-lines on stdout, summary on stderr (default)")
    out.add_argument("--summary", dest="mode", action="store_const", const="summary",
                     help="only the summary table, on stdout")
    sp.set_defaults(mode="json")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="matchpair", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="one report record per graph")
    _add_corpus_args(an)
    an.add_argument("--checks", default="all", help="comma-separated check names or 'all'")

    ve = sub.add_parser("verify", help="run checks, print failures, exit 1 on any")
    _add_corpus_args(ve)
    ve.add_argument("--checks", default="all", help="comma-separated check names or 'all'")

    co = sub.add_parser("conjecture", help="scan for leaf end-vertices of M-H paths")
    _add_corpus_args(co)

    ge = sub.add_parser("generate", help="emit graph6 lines")
    ge.add_argument("kind", choices=("spanner", "k-skeleton", "all-connected", "random",
                                     "random-bipartite"))
    ge.add_argument("arg", nargs="?", help="k, N, or n,p,count,seed depending on kind")
    ge.add_argument("--seed", type=int, default=0, help="k-skeleton variant")
    ge.add_argument("--with-gprime", action="store_true",
                    help="for k-skeleton, also print the G' edges on stderr")
    return ap


def _read_input(args) -> Iterator[tuple[int, object]]:
    """(line number, graph6 text or GraphFormatError) per input graph."""
    try:
        fh = sys.stdin if args.input == "-" else open(args.input, encoding="ascii")
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc.strerror}") from None
    with fh:
        if args.format == "edgelist":
            try:
                yield 1, to_graph6(parse_edge_list(fh.read()))
            except GraphFormatError as exc:
                yield exc.position, exc
            return
        for lineno, line in enumerate(fh, 1):
            text = line.strip()
            if not text:
                continue
            try:
                yield lineno, to_graph6(parse_graph6(text))
            except GraphFormatError as exc:
                yield lineno, exc


def _source(args) -> Iterator[tuple[int, object]]:
    if args.input is not None:
        yield from _read_input(args)
        return
    if args.all_connected is not None:
        if not 1 <= args.all_connected <= corpus.EXHAUSTIVE_LIMIT:
            raise InputError(f"--all-connected must be in 1..{corpus.EXHAUSTIVE_LIMIT}; "
                             "ingest larger corpora with --input")
        graphs: Iterable[Graph] = corpus.all_connected(args.all_connected)
    elif args.random is not None:
        graphs = corpus.random_graphs(*args.random)
    else:
        graphs = corpus.random_bipartite(*args.random_bipartite)
    for k, g in enumerate(graphs, 1):
        yield k, to_graph6(g)


def _graphs(args, tally: checks.Tally) -> Iterator[str]:
    for lineno, item in _source(args):
        if isinstance(item, GraphFormatError):
            print(f"input line {lineno}: {item}", file=sys.stderr)
            tally.malformed += 1
            if not args.keep_going:
                raise InputError("aborting on malformed input (use --keep-going to skip)")
            continue
        if args.bipartite_only or args.connected_only:
            q = basic_queries(parse_graph6(item))
            if args.bipartite_only and not q.is_bipartite:
                continue
            if args.connected_only and not q.is_connected:
                continue
        yield item


def _run(func, items: Iterable, jobs: int) -> Iterator[dict]:
    if jobs <= 1:
        yield from map(func, items)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map keeps input order regardless of completion order
        yield from pool.map(func, items, chunksize=8)


def _options(args, names: tuple[str, ...]) -> checks.Options:
    return checks.Options(checks=names, strict_viii=args.strict_viii, max_edges=args.max_edges,
                          time_limit=args.time_limit_per_graph, timing=args.timing)


def cmd_analyze(args, only_failures: bool = False) -> int:
    try:
        names = checks.parse_checks(args.checks)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    opts = _options(args, names)
    tally = checks.Tally(names)
    items = ((g6, opts) for g6 in _graphs(args, tally))
    for rec in _run(checks.analyze_graph6, items, args.jobs):
        tally.add(rec)
        failed = any(v == checks.FAIL for v in rec["verdicts"].values())
        if args.mode == "json" and (failed or not only_failures):
            print(checks.dumps(rec), flush=True)
    print(tally.render(), file=sys.stderr if args.mode == "json" else sys.stdout)
    if tally.malformed:
        return EXIT_USAGE
    if only_failures and tally.failures():
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args) -> int:
    return cmd_analyze(args, only_failures=True)


def cmd_conjecture(args) -> int:
    opts = _options(args, ("conjecture",))
    tally = checks.Tally(("conjecture",))
    counts = {"graphs": 0, "applicable": 0, "holds": 0, "violations": 0, "skipped": 0}
    items = ((g6, opts) for g6 in _graphs(args, tally))
    for rec in _run(checks.conjecture_graph6, items, args.jobs):
        counts["graphs"] += 1
        if rec.get("skipped"):
            counts["skipped"] += 1
        elif rec["applicable"]:
            counts["applicable"] += 1
            counts["holds" if rec["holds"] else "violations"] += 1
        if args.mode == "json":
            print(checks.dumps(rec), flush=True)
    width = max(map(len, counts))
    text = "\n".join(f"{k.ljust(width)}  {v}" for k, v in counts.items())
    print(text, file=sys.stderr if args.mode == "json" else sys.stdout)
    return EXIT_USAGE if tally.malformed else EXIT_OK


def _need(arg: Optional[str], what: str) -> str:
    if arg is None:
        raise InputError(f"generate needs {what}")
    return arg


def cmd_generate(args) -> int:
    kind = args.kind
    if kind == "spanner":
        print(to_graph6(skeleton.generate_spanner()))
        return EXIT_OK
    if kind == "k-skeleton":
        k = int(_need(args.arg, "k"))
        g, gprime = skeleton.generate_k_skeleton(k, args.seed)
        print(to_graph6(g))
        if args.with_gprime:
            print(" ".join(f"{u}-{v}" for u, v in g.edges_of(gprime)), file=sys.stderr)
        return EXIT_OK
    if kind == "all-connected":
        n = int(_need(args.arg, "N"))
        if not 1 <= n <= corpus.EXHAUSTIVE_LIMIT:
            raise InputError(f"N must be in 1..{corpus.EXHAUSTIVE_LIMIT}; "
                             "larger corpora need an external enumerator")
        for g in corpus.connected_of_order(n):
            print(to_graph6(g))
        return EXIT_OK
    spec = _quad(_need(args.arg, "n,p,count,seed"))
    gen = corpus.random_graphs if kind == "random" else corpus.random_bipartite
    for g in gen(*spec):
        print(to_graph6(g))
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "verify": cmd_verify,
            "conjecture": cmd_conjecture, "generate": cmd_generate}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (InputError, argparse.ArgumentTypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
