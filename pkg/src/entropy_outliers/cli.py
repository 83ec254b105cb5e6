"""Command-line frontend: detect, exact, eval, and bench subcommands.

Results are emitted as a JSON run manifest (detect/exact), a coverage table
(eval), or a CSV timing series (bench). Exit codes: 0 success, 1 data or
runtime error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

from . import __version__
from ._kernel import available_engines
from .evaluate import RareClassSpec, coverage_table, format_coverage, rank_outliers, top_count
from .ingest import IngestSpec, SynthSpec, generate, load
from .model import Dataset
from .search import SearchConfig, SearchResult, exact_solve, lsa


def _parse_synth(text: str, seed: int) -> SynthSpec:
    parts = text.split(":")
    if len(parts) != 4:
        raise ValueError(
            f"--synth expects rows:attributes:values:classes, got {text!r}"
        )
    try:
        rows, attrs, values, classes = (int(p) for p in parts)
    except ValueError:
        raise ValueError(f"--synth fields must be integers, got {text!r}") from None
    return SynthSpec(rows, attrs, values, classes, seed=seed)


def _parse_int_list(text: str, flag: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ValueError(f"{flag} expects comma-separated integers, got {text!r}") from None


def _ingest_spec(args) -> IngestSpec:
    numeric = None
    if args.numeric_cols:
        if args.numeric_cols == "auto":
            numeric = "auto"
        else:
            numeric = []
            for part in args.numeric_cols.split(","):
                part = part.strip()
                numeric.append(int(part) if part.lstrip("-").isdigit() else part)
    label = None
    if args.label_col is not None:
        label = int(args.label_col) if args.label_col.lstrip("-").isdigit() else args.label_col
    return IngestSpec(
        delimiter=args.delimiter,
        has_header=args.header,
        label_column=label,
        numeric_columns=numeric,
        bins=args.bins,
    )


def _load_input(args) -> tuple[Dataset, dict, float]:
    """Dataset, its manifest description, and the ingest wall time."""
    start = time.perf_counter()
    if args.synth:
        spec = _parse_synth(args.synth, args.seed)
        dataset = generate(spec)
        source = {
            "synth": {
                "rows": spec.rows,
                "attributes": spec.attributes,
                "values_per_attribute": spec.values_per_attribute,
                "classes": spec.classes,
                "seed": spec.seed,
            }
        }
    else:
        dataset = load(args.input, _ingest_spec(args))
        source = {"path": str(args.input)}
    return dataset, source, time.perf_counter() - start


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _search_config(args, k: int) -> SearchConfig:
    return SearchConfig(
        k=k,
        init=args.init,
        seed=args.seed,
        epsilon=args.epsilon,
        max_sweeps=args.max_sweeps,
        engine=args.engine,
    )


def _detect_manifest(args, command: str, source: dict, config: SearchConfig,
                     result: SearchResult, ranked: list[int], timing: dict) -> dict:
    return {
        "command": command,
        "input": source,
        "config": {
            "k": config.k,
            "init": config.init,
            "seed": config.seed,
            "epsilon": config.epsilon,
            "max_sweeps": config.max_sweeps,
            "bins": args.bins,
            "engine": result.engine,
        },
        "timing": timing,
        "result": {
            "objective": result.objective,
            "initial_objective": result.initial_objective,
            "sweeps": result.sweeps,
            "swaps": result.swaps,
            "capped": result.capped,
            "outlier_indices": result.outlier_indices,
            "ranked_outliers": ranked,
        },
    }


def cmd_detect(args) -> int:
    dataset, source, ingest_s = _load_input(args)
    config = _search_config(args, args.k)
    start = time.perf_counter()
    result = lsa(dataset, config)
    search_s = time.perf_counter() - start
    start = time.perf_counter()
    ranked = rank_outliers(result, dataset)
    rank_s = time.perf_counter() - start
    timing = {
        "ingest_s": round(ingest_s, 6),
        "search_s": round(search_s, 6),
        "rank_s": round(rank_s, 6),
        "total_s": round(ingest_s + search_s + rank_s, 6),
    }
    manifest = _detect_manifest(args, "detect", source, config, result, ranked, timing)
    _emit(json.dumps(manifest, indent=2) + "\n", args.out)
    return 0


def cmd_exact(args) -> int:
    dataset, source, ingest_s = _load_input(args)
    start = time.perf_counter()
    result = exact_solve(dataset, args.k, max_candidates=args.max_candidates)
    search_s = time.perf_counter() - start
    manifest = {
        "command": "exact",
        "input": source,
        "config": {"k": args.k, "max_candidates": args.max_candidates, "bins": args.bins},
        "timing": {"ingest_s": round(ingest_s, 6), "search_s": round(search_s, 6)},
        "result": {
            "objective": result.objective,
            "outlier_indices": result.outlier_indices,
        },
    }
    _emit(json.dumps(manifest, indent=2) + "\n", args.out)
    return 0


def cmd_eval(args) -> int:
    dataset, source, ingest_s = _load_input(args)
    if dataset.labels is None:
        raise ValueError("evaluation needs class labels; pass --label-col")
    ratios = [float(p) / 100.0 for p in args.ratios.split(",") if p.strip()]
    spec = RareClassSpec(frozenset(args.rare_labels.split(",")))

    if args.ranking_file:
        text = Path(args.ranking_file).read_text(encoding="utf-8")
        ranking = [int(tok) for tok in text.replace(",", " ").split()]
        detail: dict = {"ranking": {"path": args.ranking_file}}
    else:
        k = args.k if args.k is not None else max(top_count(r, dataset.n) for r in ratios)
        result = lsa(dataset, _search_config(args, k))
        ranking = rank_outliers(result, dataset)
        detail = {
            "search": {
                "k": k,
                "objective": result.objective,
                "sweeps": result.sweeps,
                "swaps": result.swaps,
                "engine": result.engine,
            }
        }

    rows = coverage_table(ranking, dataset.labels, spec, ratios)
    if args.format == "json":
        payload = {
            "command": "eval",
            "input": source,
            "rare_labels": sorted(spec.rare_labels),
            **detail,
            "table": [
                {
                    "top_ratio": r.top_ratio,
                    "top_count": r.top_count,
                    "detected": r.detected,
                    "coverage": r.coverage,
                }
                for r in rows
            ],
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _emit(format_coverage(rows, style=args.format), args.out)
    return 0


def cmd_bench(args) -> int:
    rows_grid = _parse_int_list(args.rows, "--rows")
    k_grid = _parse_int_list(args.ks, "--ks")
    engines = list(available_engines()) if args.engine == "both" else [args.engine]
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(
        ["engine", "n", "m", "p", "classes", "k", "sweeps", "swaps", "objective", "seconds"]
    )
    for n in rows_grid:
        spec = SynthSpec(n, args.attrs, args.values, args.classes, seed=args.seed)
        dataset = generate(spec)
        for k in k_grid:
            for engine in engines:
                config = SearchConfig(k=k, init=args.init, seed=args.seed,
                                      epsilon=args.epsilon, engine=engine)
                start = time.perf_counter()
                result = lsa(dataset, config)
                seconds = time.perf_counter() - start
                writer.writerow(
                    [
                        result.engine,
                        n,
                        args.attrs,
                        args.values,
                        args.classes,
                        k,
                        result.sweeps,
                        result.swaps,
                        f"{result.objective:.6f}",
                        f"{seconds:.4f}",
                    ]
                )
    _emit(out.getvalue(), args.out)
    return 0


def _add_input_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("input", nargs="?", help="delimited input file")
    sub.add_argument("--synth", metavar="R:A:V:C",
                     help="generate rows:attributes:values:classes instead of reading a file")
    sub.add_argument("--delimiter", default=",", help="field delimiter (default comma)")
    sub.add_argument("--header", action="store_true", help="first row is a header")
    sub.add_argument("--label-col", default=None,
                     help="class label column (index or header name)")
    sub.add_argument("--numeric-cols", default=None, metavar="COLS",
                     help="'auto' or comma-separated columns to bin as numeric")
    sub.add_argument("--bins", type=int, default=10,
                     help="equal-width bin count for numeric columns (default 10)")


def _add_search_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--init", choices=("first", "random"), default="first",
                     help="initial outlier choice (default first)")
    sub.add_argument("--seed", type=int, default=0,
                     help="seed for random init and synthetic data (default 0)")
    sub.add_argument("--epsilon", type=float, default=1e-12,
                     help="minimum accepted improvement in bits (default 1e-12)")
    sub.add_argument("--max-sweeps", type=int, default=None,
                     help="safety cap on sweeps (default unlimited)")
    sub.add_argument("--engine", choices=("auto", "compiled", "python"), default="auto",
                     help="sweep kernel to use (default auto)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entropy-outliers",
        description="Detect the k most outlying records of a categorical "
        "dataset by minimizing the entropy of what remains.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    detect = commands.add_parser("detect", help="run the local search")
    _add_input_options(detect)
    _add_search_options(detect)
    detect.add_argument("--k", type=int, required=True, help="number of outliers")
    detect.add_argument("--out", default=None, help="write the JSON manifest here")
    detect.set_defaults(func=cmd_detect)

    exact = commands.add_parser("exact", help="enumerate all size-k subsets (small inputs)")
    _add_input_options(exact)
    exact.add_argument("--k", type=int, required=True, help="number of outliers")
    exact.add_argument("--seed", type=int, default=0, help="seed for synthetic data")
    exact.add_argument("--max-candidates", type=int, default=2_000_000,
                       help="refuse when C(n, k) exceeds this (default 2000000)")
    exact.add_argument("--out", default=None, help="write the JSON manifest here")
    exact.set_defaults(func=cmd_exact)

    evaluate = commands.add_parser("eval", help="score rare-class coverage per top ratio")
    _add_input_options(evaluate)
    _add_search_options(evaluate)
    evaluate.add_argument("--rare-labels", required=True,
                          help="comma-separated class tokens treated as rare")
    evaluate.add_argument("--ratios", required=True,
                          help="comma-separated top ratios, in percent (e.g. 5,10,20)")
    evaluate.add_argument("--k", type=int, default=None,
                          help="outliers to search for (default: largest cutoff)")
    evaluate.add_argument("--ranking-file", default=None,
                          help="score this externally produced ranking instead of searching")
    evaluate.add_argument("--format", choices=("plain", "csv", "json"), default="plain",
                          help="table format (default plain)")
    evaluate.add_argument("--out", default=None, help="write the table here")
    evaluate.set_defaults(func=cmd_eval)

    bench = commands.add_parser("bench", help="time the search over a synthetic grid")
    bench.add_argument("--rows", required=True, help="comma-separated record counts")
    bench.add_argument("--ks", required=True, help="comma-separated outlier counts")
    bench.add_argument("--attrs", type=int, default=10, help="attributes (default 10)")
    bench.add_argument("--values", type=int, default=10,
                       help="distinct values per attribute (default 10)")
    bench.add_argument("--classes", type=int, default=10, help="clusters (default 10)")
    bench.add_argument("--seed", type=int, default=0, help="generator seed (default 0)")
    bench.add_argument("--init", choices=("first", "random"), default="first")
    bench.add_argument("--epsilon", type=float, default=1e-12)
    bench.add_argument("--engine", choices=("auto", "compiled", "python", "both"),
                       default="auto", help="kernel to time; 'both' compares them")
    bench.add_argument("--out", default=None, help="write the CSV series here")
    bench.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "synth") and bool(args.synth) == bool(args.input):
        parser.error("exactly one of an input file or --synth is required")
    try:
        return args.func(args)
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
