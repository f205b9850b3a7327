"""HTTP API over one loaded snapshot and an optional model registry.

Every endpoint is a pure function of (snapshot, registry, query params):
the snapshot is immutable, prediction scores are computed once at
startup, and landscape layouts are memoized in a bounded LRU with
per-key request coalescing.
"""

from __future__ import annotations

import warnings
from pathlib import Path

import numpy as np
from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .. import atlas, metrics
from ..corpus import CorpusSnapshot, load_snapshot, query_grants
from ..corpus import _grant_obj  # shared serialization, package-internal
from ..errors import (
    UnknownEntityError,
    UnsupportedCombinationError,
    ValidationError,
)
from ..landscape import build_landscape
from ..predictor import load_models, rethreshold, score_recent_grants
from ..records import DOC_TYPES
from .cache import ComputeCache
from .config import ServiceConfig

_RANK_METRICS = ("h_index", "productivity", "avg_log_c10")


def _topic_str(topic: tuple) -> str:
    return "/".join(topic)


def _year_range(year_min, year_max):
    if year_min is None and year_max is None:
        return None
    return (year_min, year_max)


def _startup_scores(corpus: CorpusSnapshot, registry_path) -> dict:
    """Score recent grants once per impact type found in the registry."""
    state: dict[str, dict] = {}
    if registry_path is None:
        return state
    records = load_models(registry_path)
    by_type: dict[str, list] = {}
    for record in records:
        by_type.setdefault(record.impact_type, []).append(record)
    for impact_type, models in sorted(by_type.items()):
        scores, recent = score_recent_grants(corpus, models)
        state[impact_type] = {
            "scores": scores,
            "recent": recent,
            "topics": sorted({m.topic for m in models}),
            "test_auc": {
                _topic_str(m.topic): m.test_auc for m in models
            },
        }
    return state


def create_app(corpus: CorpusSnapshot | None = None,
               config: ServiceConfig | None = None,
               prediction_state: dict | None = None) -> FastAPI:
    config = config or ServiceConfig()
    if corpus is None:
        if config.snapshot_path is None:
            raise ValidationError("a snapshot (object or path) is required")
        corpus = load_snapshot(config.snapshot_path)
    if prediction_state is None:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            prediction_state = _startup_scores(corpus, config.registry_path)

    app = FastAPI(title="fundscape", docs_url=None, redoc_url=None)
    layout_cache = ComputeCache(config.cache_size)

    @app.exception_handler(ValidationError)
    async def _validation(request: Request, exc: ValidationError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.exception_handler(UnsupportedCombinationError)
    async def _unsupported(request: Request, exc: UnsupportedCombinationError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.exception_handler(UnknownEntityError)
    async def _unknown(request: Request, exc: UnknownEntityError):
        return JSONResponse(status_code=404, content={"error": str(exc)})

    @app.get("/api/health")
    def health():
        return {
            "status": "ok",
            "snapshot_id": corpus.snapshot_id,
            "grants": len(corpus.grants),
        }

    @app.get("/api/grants")
    def grants(funder_org: str | None = None, field: str | None = None,
               year_min: int | None = None, year_max: int | None = None,
               amount_min: float | None = None,
               amount_max: float | None = None):
        prefix = tuple(field.split("/")) if field else None
        amount = (
            (amount_min, amount_max)
            if amount_min is not None or amount_max is not None
            else None
        )
        rows = query_grants(
            corpus,
            funder_org=funder_org,
            year_range=_year_range(year_min, year_max),
            amount_range=amount,
            field_prefix=prefix,
        )
        return {"count": len(rows), "grants": [_grant_obj(g) for g in rows]}

    @app.get("/api/fields")
    def fields(seed: int | None = None, level: int = 1):
        bubbles = atlas.grant_field_bubbles(
            corpus, seed=config.seed if seed is None else seed,
            field_level=level,
        )
        return {
            "fields": [
                {
                    "field_path": list(b.field_path),
                    "x": b.x,
                    "y": b.y,
                    "radius": b.radius,
                    "total_funding": b.total_funding,
                    "grant_count": b.grant_count,
                }
                for b in bubbles
            ]
        }

    @app.get("/api/pis")
    def pis(field: str | None = None, rank_by: str = "h_index",
            limit: int = Query(default=50, ge=1, le=500)):
        if rank_by not in _RANK_METRICS:
            raise ValidationError(f"rank_by must be one of {_RANK_METRICS}")
        prefix = tuple(field.split("/")) if field else None
        researcher_ids = set()
        for grant in corpus.grants.values():
            if prefix and grant.field_path[: len(prefix)] != prefix:
                continue
            researcher_ids.update(grant.investigator_ids)
        profiles = [
            metrics.pi_profile(corpus, rid)
            for rid in sorted(researcher_ids)
            if rid in corpus.researchers
        ]
        profiles.sort(key=lambda p: (-getattr(p, rank_by), p.researcher_id))
        return {
            "rank_by": rank_by,
            "field": field,
            "pis": [
                {
                    "researcher_id": p.researcher_id,
                    "name": corpus.researchers[p.researcher_id].name,
                    "h_index": p.h_index,
                    "productivity": p.productivity,
                    "avg_log_c10": p.avg_log_c10,
                    "career_age": p.career_age,
                    "impact": p.impact.to_dict(),
                }
                for p in profiles[:limit]
            ],
        }

    @app.get("/api/landscape")
    def landscape(field: str | None = None, mode: str = "broad",
                  types: str | None = None,
                  threshold: float | None = None,
                  seed: int | None = None):
        seed = config.seed if seed is None else seed
        threshold = config.threshold if threshold is None else threshold
        doc_types = tuple(sorted(types.split(","))) if types else None
        key = (corpus.snapshot_id, field, mode, doc_types, threshold, seed)

        def compute():
            scores = None
            if mode == "prediction":
                scores = [
                    s for state in prediction_state.values()
                    for s in state["scores"]
                ]
            return build_landscape(
                corpus, mode=mode, field=field, seed=seed,
                scores=scores, threshold=threshold, doc_types=doc_types,
            )

        return layout_cache.get_or_compute(key, compute)

    @app.get("/api/impact-types")
    def impact_types(mode: str = "direct", funder_org: str | None = None,
                     field: str | None = None,
                     year_min: int | None = None,
                     year_max: int | None = None):
        if mode == "direct":
            type_names = metrics.DIRECT_IMPACT_TYPES
        elif mode == "broad":
            type_names = metrics.BROAD_IMPACT_TYPES
        else:
            raise ValidationError("mode must be 'direct' or 'broad'")
        prefix = tuple(field.split("/")) if field else None
        selected = query_grants(
            corpus,
            funder_org=funder_org,
            year_range=_year_range(year_min, year_max),
            field_prefix=prefix,
        )
        impacts = metrics.all_grant_impacts(corpus)
        entries = []
        for name in type_names:
            baseline = float(
                np.mean([v.get(name) for v in impacts.values()])
            ) if impacts else None
            mean = (
                float(np.mean([impacts[g.grant_id].get(name) for g in selected]))
                if selected else None
            )
            entries.append(
                {"impact_type": name, "mean": mean, "baseline": baseline}
            )
        return {"mode": mode, "grant_count": len(selected), "types": entries}

    @app.get("/api/entity-distribution")
    def entity_distribution(doc_type: str, dimension: str):
        if doc_type not in DOC_TYPES:
            raise ValidationError(f"unknown doc_type {doc_type!r}")
        histogram = atlas.impact_entity_distribution(
            corpus.docs_of_type(doc_type), dimension
        )
        return {
            "doc_type": doc_type,
            "dimension": dimension,
            "entries": [
                {"value": value, "count": count} for value, count in histogram
            ],
        }

    @app.get("/api/topics/{topic_id:path}/keywords")
    def topic_keywords(topic_id: str,
                       top_n: int = Query(default=50, ge=1, le=500)):
        kind, _, path_str = topic_id.partition(":")
        if not path_str or kind not in ("grant", "paper", *DOC_TYPES):
            raise UnknownEntityError(f"unknown topic id {topic_id!r}")
        path = tuple(path_str.split("/"))
        if kind == "grant":
            entities = list(corpus.grants.values())
        elif kind == "paper":
            entities = list(corpus.papers.values())
        else:
            entities = corpus.docs_of_type(kind)
        for node in atlas.aggregate_by_topic(entities, len(path)):
            if node.topic_path == path:
                stats = atlas.keyword_cloud(node, corpus, top_n)
                return {
                    "topic_id": topic_id,
                    "count": node.count,
                    "keywords": [
                        {
                            "token": s.token,
                            "total_freq": s.total_freq,
                            "yearly": {str(y): c for y, c in s.yearly.items()},
                        }
                        for s in stats
                    ],
                }
        raise UnknownEntityError(f"no topic node matches {topic_id!r}")

    @app.get("/api/predictions")
    def predictions(impact_type: str | None = None,
                    topic: str | None = None,
                    threshold: float | None = None,
                    rank_by: str = "h_index"):
        threshold = config.threshold if threshold is None else threshold
        if impact_type is None:
            return {
                "impact_types": sorted(prediction_state),
                "threshold": threshold,
            }
        state = prediction_state.get(impact_type)
        if state is None:
            raise UnknownEntityError(
                f"no trained models for impact type {impact_type!r}"
            )
        scores = state["scores"]
        if topic is not None:
            wanted = tuple(topic.split("/"))
            scores = tuple(s for s in scores if s.topic == wanted)
        high_counts, ranked, high = rethreshold(
            corpus, scores, threshold, rank_by
        )
        return {
            "impact_type": impact_type,
            "threshold": threshold,
            "topics": [_topic_str(t) for t in state["topics"]],
            "test_auc": state["test_auc"],
            "recent_grants": len(state["recent"]),
            "scores": [
                {
                    "grant_id": s.grant_id,
                    "topic": _topic_str(s.topic),
                    "score": s.score,
                }
                for s in scores
            ],
            "high_counts": {
                _topic_str(t): c for t, c in sorted(high_counts.items())
            },
            "high_score_grants": sorted(high),
            "ranked_pis": [
                {"researcher_id": rid, "value": value} for rid, value in ranked
            ],
        }

    if config.static_path and Path(config.static_path).is_dir():
        app.mount(
            "/", StaticFiles(directory=config.static_path, html=True),
            name="static",
        )
    return app


def serve_api(config: ServiceConfig):
    """Run the service under uvicorn (blocking)."""
    import uvicorn

    app = create_app(config=config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
