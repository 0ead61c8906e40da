"""Command line entry points.

``nextviz recommend`` prints a RecommendationSet as JSON on stdout with a
stable field order, suitable for golden-file comparisons and scripting.
``nextviz serve`` runs the HTTP service.

Exit codes for recommend: 0 success (even with an empty set), 1 unreadable
or unparseable input files, 2 a view spec that is invalid for the dataset.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .dataset import DatasetError, LoadOptions, load_csv, load_schema_overrides
from .recommend import RecommenderConfig, recommend
from .specs import SpecError, spec_from_json

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_SPEC = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nextviz")
    sub = parser.add_subparsers(dest="command", required=True)

    rec = sub.add_parser("recommend", help="print recommendations for a dataset as JSON")
    rec.add_argument("dataset", help="path to a CSV file with a header row")
    rec.add_argument("--view", help="path to a view spec JSON file", default=None)
    rec.add_argument("--k", type=int, default=10, help="items per category")
    rec.add_argument("--baseline", action="store_true", help="flatten into the shuffled baseline")
    rec.add_argument("--seed", type=int, default=0, help="baseline shuffle seed")
    rec.add_argument("--category-seed", type=int, default=None,
                     help="shuffle category display order with this seed")
    rec.add_argument("--metric", choices=["spearman", "mi"], default="spearman")
    rec.add_argument("--cardinality-cap", type=int, default=50)
    rec.add_argument("--similarity", choices=["similar", "different"], default="similar")
    rec.add_argument("--schema-override", default=None,
                     help="path to a sidecar schema JSON overriding dtype/role per column")
    rec.add_argument("--include-charts", action="store_true",
                     help="inline chart data for each recommendation")

    srv = sub.add_parser("serve", help="run the HTTP service")
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=None,
                     help="defaults to RECSVC_PORT or 8000")
    srv.add_argument("--log", default=None, help="JSON-lines interaction log path")
    srv.add_argument("--preload", nargs="*", default=(),
                     help="built-in sample datasets to load at startup (cars college medals)")
    srv.add_argument("--snapshot", default=None,
                     help="JSON session snapshot loaded at startup, saved at shutdown")
    return parser


def _run_recommend(args: argparse.Namespace) -> int:
    try:
        overrides = None
        if args.schema_override:
            overrides = load_schema_overrides(Path(args.schema_override).read_text("utf-8"))
        ds = load_csv(
            Path(args.dataset).read_bytes(),
            LoadOptions(schema_overrides=overrides),
            name=Path(args.dataset).stem,
        )
    except (OSError, DatasetError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    view = None
    if args.view:
        try:
            body = json.loads(Path(args.view).read_text("utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_PARSE
        try:
            view = spec_from_json(body, ds.schema)
        except SpecError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_SPEC

    config = RecommenderConfig(
        k=args.k,
        metric=args.metric,
        cardinality_cap=args.cardinality_cap,
        similarity_direction=args.similarity,
        category_order_seed=args.category_seed,
        baseline=args.baseline,
        baseline_seed=args.seed,
    )
    recset = recommend(view, ds, config)
    if args.include_charts:
        from .service import recommendations_payload

        payload = recommendations_payload(recset, ds)
    else:
        payload = recset.to_json()
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    return EXIT_OK


def _run_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    port = args.port if args.port is not None else int(os.environ.get("RECSVC_PORT", "8000"))
    app = create_app(
        log_path=args.log,
        preload=tuple(args.preload),
        snapshot_path=args.snapshot,
    )
    uvicorn.run(app, host=args.host, port=port, log_level="warning")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "recommend":
        return _run_recommend(args)
    return _run_serve(args)


if __name__ == "__main__":
    sys.exit(main())
