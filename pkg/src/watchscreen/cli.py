"""Command line interface: index, search, serve, bench, eval, synth."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional

from .costs import DEFAULT_SCHEDULE, CostMatrices, ThresholdSchedule
from .engine import Screener, save_snapshot, snapshot_shards
from .filtering import FilterConfig
from .forest import SearchConfig, build_forest
from .index import IndexBuildError, ReferenceFormatError, read_reference_list

log = logging.getLogger("watchscreen")


def _add_engine_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--reference", "-r", required=True, help="reference list or snapshot (doc_id<TAB>name)")
    p.add_argument("--shards", type=int, default=None, help="number of trie shards (default: snapshot value or 1)")
    p.add_argument("--k", type=int, default=20, help="result slots (default 20)")
    p.add_argument("--sigma", type=float, default=60.0, help="minimum percentage score (default 60)")
    p.add_argument("--thresholds", default=str(DEFAULT_SCHEDULE), help="edit budget bands maxlen:dist,...")
    p.add_argument("--costs", default=None, help="confusion-matrix file, or 'phonetic' for the bundled sample")
    p.add_argument("--window", type=int, default=4, help="query window limit (default 4)")
    w = p.add_mutually_exclusive_group()
    w.add_argument("--weighted", dest="weighted", action="store_true", default=None)
    w.add_argument("--unweighted", dest="weighted", action="store_false")


def _costs(source: Optional[str]) -> CostMatrices:
    if source is None:
        return CostMatrices()
    if source == "phonetic":
        return CostMatrices.phonetic_sample()
    return CostMatrices.from_file(source)


def _config(args) -> SearchConfig:
    return SearchConfig(
        filter=FilterConfig(args.k, args.sigma),
        costs=_costs(args.costs),
        schedule=ThresholdSchedule.parse(args.thresholds),
        window_limit=args.window,
        weighted=args.weighted,
    )


def _screener(args) -> Screener:
    docs = read_reference_list(args.reference)
    shards = args.shards or snapshot_shards(args.reference) or 1
    t0 = time.perf_counter()
    forest = build_forest(docs, shards)
    log.info("loaded %d documents into %d shard(s) in %.0f ms", len(docs), shards,
             (time.perf_counter() - t0) * 1000)
    return Screener(forest, _config(args))


def cmd_index(args) -> int:
    t0 = time.perf_counter()
    docs = read_reference_list(args.reference_path)
    forest = build_forest(docs, args.shards)
    build_ms = (time.perf_counter() - t0) * 1000
    if args.out:
        save_snapshot(docs, args.out, args.shards)
    summary = {
        "docs": forest.n_docs,
        "tokens": forest.n_tokens,
        "nodes": forest.n_nodes,
        "shards": forest.n_shards,
        "build_ms": round(build_ms, 3),
    }
    print(json.dumps(summary))
    return 0


def _read_payloads(args) -> List[str]:
    payloads = list(args.query)
    if args.input:
        text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text(encoding="utf-8")
        if args.format == "mt":
            payloads.append(text)
        else:
            payloads.extend(line for line in text.splitlines() if line.strip())
    return payloads


def cmd_search(args) -> int:
    payloads = _read_payloads(args)
    if not payloads:
        print("error: no query given", file=sys.stderr)
        return 2
    screener = _screener(args)
    for payload in payloads:
        result = screener.screen(payload, args.format)
        print(result.to_json())
        if args.timing:
            print(f"latency_ms={result.latency_ms:.3f}", file=sys.stderr)
    return 0


def cmd_serve(args) -> int:
    from .service import ScreenService, make_server

    service = ScreenService()
    server = make_server(service, args.host, args.port)
    log.info("listening on %s:%d, loading index", args.host, args.port)
    service.load_async(lambda: _screener(args))
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def cmd_bench(args) -> int:
    from .bench import loglog_slope, run_bench, time_indexing, write_bench

    out = Path(args.out_dir)
    queries = [q for q in Path(args.queries).read_text(encoding="utf-8").splitlines() if q.strip()]
    if not queries:
        print("error: query file is empty", file=sys.stderr)
        return 2
    screener = _screener(args)
    report = run_bench(screener, queries, args.repetitions)
    summary = write_bench(report, out)
    if args.index_sizes:
        from .plotting import plot_indexing
        from .synth import synth_documents

        sizes = [int(s) for s in args.index_sizes.split(",")]
        pairs = [[(d.doc_id, d.raw_name) for d in synth_documents(n, seed=args.seed)] for n in sizes]
        seconds = time_indexing(pairs)
        summary["indexing"] = {"sizes": sizes, "seconds": seconds, "loglog_slope": loglog_slope(sizes, seconds)}
        plot_indexing(sizes, seconds, out / "indexing.png")
        (out / "latency.json").write_text(json.dumps(summary, indent=2) + "\n")
    print(json.dumps(summary))
    return 0


def cmd_eval(args) -> int:
    from .evaluation import evaluate, read_labels
    from .plotting import plot_metrics

    labels = read_labels(args.labels)
    screener = _screener(args)
    known = screener.forest.stats.documents
    missing = sorted({d for lab in labels for d in lab.expected_doc_ids} - set(known))
    if missing:
        print(f"error: labels reference unknown doc ids {missing[:10]}", file=sys.stderr)
        return 2
    retrieved = [[r.doc_id for r in screener.screen(lab.query_text, args.format).results] for lab in labels]
    metrics = evaluate(retrieved, labels, args.beta)
    print(metrics.table())
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "metrics.json").write_text(json.dumps(metrics.to_dict(), indent=2) + "\n")
        (out / "metrics.txt").write_text(metrics.table() + "\n")
        plot_metrics(metrics, out / "metrics.png")
    return 0


def cmd_synth(args) -> int:
    from .evaluation import write_labels
    from .index import write_reference_list
    from .synth import bench_queries, synth_corpus

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    docs, labels = synth_corpus(args.docs, args.typo_rate, args.seed, n_queries=args.queries)
    write_reference_list(docs, out / "reference.tsv")
    write_labels(labels, out / "labels.tsv")
    queries = bench_queries(docs, args.queries, n_tokens=args.query_tokens, seed=args.seed + 2)
    (out / "queries.txt").write_text("\n".join(queries) + "\n", encoding="utf-8")
    print(json.dumps({"docs": len(docs), "labeled_queries": len(labels), "bench_queries": len(queries)}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="watchscreen", description="Approximate watch-list screening of free text.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index", help="build the index and report counts and timing")
    p.add_argument("reference_path")
    p.add_argument("--out", "-o", help="write a snapshot file")
    p.add_argument("--shards", type=int, default=1)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("search", help="screen queries and print JSON results")
    _add_engine_args(p)
    p.add_argument("query", nargs="*")
    p.add_argument("--input", "-i", help="file with one query per line (or one MT message); '-' for stdin")
    p.add_argument("--format", choices=("mt", "text"), default="text")
    p.add_argument("--timing", action="store_true", help="print per-query latency to stderr")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("serve", help="run the HTTP screening service")
    _add_engine_args(p)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("bench", help="replay queries and report latency percentiles")
    _add_engine_args(p)
    p.add_argument("--queries", "-q", required=True, help="file with one query per line")
    p.add_argument("--repetitions", type=int, default=1)
    p.add_argument("--out-dir", default="bench-out")
    p.add_argument("--index-sizes", help="also time indexing of synthetic lists, e.g. 10000,100000")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("eval", help="precision, recall and F-beta over a labels file")
    _add_engine_args(p)
    p.add_argument("--labels", "-l", required=True)
    p.add_argument("--beta", type=float, default=5.0)
    p.add_argument("--format", choices=("mt", "text"), default="text")
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("synth", help="write a synthetic reference list, labels and bench queries")
    p.add_argument("--docs", type=int, default=10000)
    p.add_argument("--queries", type=int, default=1000)
    p.add_argument("--query-tokens", type=int, default=5)
    p.add_argument("--typo-rate", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", default="synth-out")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ReferenceFormatError, IndexBuildError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
