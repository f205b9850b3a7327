"""Command-line entry point: synth | ingest | metrics | layout | train |
predict | serve."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .corpus import export_ndjson, ingest_dir, load_snapshot, save_snapshot
from .errors import ValidationError
from .landscape import build_landscape
from .metrics import IMPACT_TYPES, aggregate_impact
from .predictor import (
    LAG_PRESETS,
    load_models,
    predict_and_highlight,
    save_model,
    train_impact_models,
)
from .service import load_config, serve_api
from .synth import generate_synthetic_corpus


def _write_json(payload, out: str | None):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out is None or out == "-":
        print(text)
    else:
        Path(out).write_text(text + "\n")


def _cmd_synth(args) -> int:
    overrides = {}
    for name in ("grants", "papers", "patents", "clinical_trials",
                 "policies", "newsfeeds", "researchers"):
        value = getattr(args, name)
        if value is not None:
            overrides[name] = value
    corpus = generate_synthetic_corpus(args.seed, **overrides)
    out = Path(args.out)
    if args.format == "ndjson":
        out.mkdir(parents=True, exist_ok=True)
        files = export_ndjson(corpus, out)
        print(f"wrote {len(files)} files to {out} (snapshot {corpus.snapshot_id})")
    else:
        save_snapshot(corpus, out)
        print(f"wrote snapshot {corpus.snapshot_id} to {out}")
    return 0


def _cmd_ingest(args) -> int:
    corpus = ingest_dir(args.input, (args.year_min, args.year_max))
    save_snapshot(corpus, args.out)
    report = corpus.report
    print(f"snapshot {corpus.snapshot_id}: "
          f"{len(corpus.grants)} grants, {len(corpus.papers)} papers, "
          f"{len(corpus.docs)} impact docs, "
          f"{len(corpus.researchers)} researchers")
    if report is not None and report.warning_count:
        print(f"{report.warning_count} ingest warnings", file=sys.stderr)
    return 0


def _cmd_metrics(args) -> int:
    corpus = load_snapshot(args.snapshot)
    summaries, _ = aggregate_impact(corpus, args.level)
    payload = {
        "snapshot_id": corpus.snapshot_id,
        "level": args.level,
        "groups": {
            "/".join(k) if isinstance(k, tuple) else str(k): {
                "members": len(v.members),
                "impact": v.vector.to_dict(),
                "rii": v.rii,
            }
            for k, v in summaries.items()
        },
    }
    _write_json(payload, args.out)
    return 0


def _cmd_layout(args) -> int:
    corpus = load_snapshot(args.snapshot)
    payload = build_landscape(
        corpus, mode=args.mode, field=args.field, seed=args.seed
    )
    _write_json(payload, args.out)
    return 0


def _cmd_train(args) -> int:
    corpus = load_snapshot(args.snapshot)
    override = LAG_PRESETS.get(args.lag_preset) if args.lag_preset else None
    records = train_impact_models(
        corpus, args.impact, seed=args.seed, coverage=args.coverage,
        min_positives=args.min_positives, lag_override=override,
    )
    if not records:
        print("no trainable topics", file=sys.stderr)
        return 1
    for record in records:
        path = save_model(record, args.registry)
        print(f"{'/'.join(record.topic)}: AUC {record.test_auc:.3f} -> {path}")
    return 0


def _cmd_predict(args) -> int:
    corpus = load_snapshot(args.snapshot)
    models = load_models(args.registry, args.impact)
    if not models:
        print("registry holds no matching models", file=sys.stderr)
        return 1
    by_type: dict[str, list] = {}
    for record in models:
        by_type.setdefault(record.impact_type, []).append(record)
    lines = []
    for impact_type in sorted(by_type):
        result = predict_and_highlight(
            corpus, by_type[impact_type], threshold=args.threshold
        )
        for score in result.scores:
            lines.append(json.dumps({
                "grant_id": score.grant_id,
                "topic": "/".join(score.topic),
                "impact_type": score.impact_type,
                "score": score.score,
                "high": score.score > args.threshold,
            }, sort_keys=True))
    text = "\n".join(lines) + ("\n" if lines else "")
    if args.out is None or args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
        print(f"wrote {len(lines)} scores to {args.out}")
    return 0


def _cmd_serve(args) -> int:
    config = load_config(
        args.config,
        port=args.port,
        snapshot_path=args.snapshot,
        registry_path=args.registry,
        static_path=args.static,
    )
    serve_api(config)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fundscape",
        description="Science-funding impact analytics: corpus, metrics, "
                    "landscape layout, prediction, and HTTP service.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic corpus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("ndjson", "snapshot"),
                   default="snapshot")
    for name in ("grants", "papers", "patents", "clinical-trials",
                 "policies", "newsfeeds", "researchers"):
        p.add_argument(f"--{name}", dest=name.replace("-", "_"), type=int)
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("ingest", help="load NDJSON files into a snapshot")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--year-min", type=int, default=2000)
    p.add_argument("--year-max", type=int, default=2021)
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("metrics", help="aggregate impact metrics and RII")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--level", choices=("pi", "field", "agency"),
                   default="field")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("layout", help="compute a landscape layout document")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--field")
    p.add_argument("--mode", choices=("direct", "broad"), default="broad")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_layout)

    p = sub.add_parser("train", help="train per-topic impact models")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--impact", required=True, choices=IMPACT_TYPES)
    p.add_argument("--registry", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--coverage", type=float, default=0.8)
    p.add_argument("--min-positives", type=int, default=100)
    p.add_argument("--lag-preset", choices=sorted(LAG_PRESETS))
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("predict", help="score recent grants with a registry")
    p.add_argument("--registry", required=True)
    p.add_argument("--snapshot", required=True)
    p.add_argument("--impact", choices=IMPACT_TYPES)
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--config")
    p.add_argument("--snapshot")
    p.add_argument("--registry")
    p.add_argument("--static")
    p.add_argument("--port", type=int)
    p.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
