"""Score recent grants with trained models and rank their investigators."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from ..corpus import CorpusSnapshot
from ..errors import ValidationError
from ..metrics import HitPaperConfig, pi_profile
from .datasets import embed_grants
from .train import TopicModelRecord

PI_RANK_METRICS = ("h_index", "productivity", "avg_log_c10", "career_age")


@dataclass(frozen=True)
class PredictionScore:
    grant_id: str
    topic: tuple
    impact_type: str
    score: float

    def __post_init__(self):
        if not (np.isfinite(self.score) and 0.0 <= self.score <= 1.0):
            raise ValidationError("score must be finite in [0, 1]")


@dataclass(frozen=True)
class PredictionResult:
    impact_type: str
    scores: tuple[PredictionScore, ...]
    #: topic -> number of recent grants scoring above the threshold
    high_counts: dict = field(default_factory=dict)
    #: (researcher_id, metric value), best first
    ranked_pis: tuple = ()
    threshold: float = 0.5
    recent_grant_ids: tuple[str, ...] = ()


def recent_grants(corpus: CorpusSnapshot, lag_years: int) -> list[str]:
    """Grants too recent for their impacts to have materialized."""
    cutoff = corpus.window.year_max - lag_years
    return sorted(
        gid for gid, g in corpus.grants.items() if g.start_year > cutoff
    )


def score_recent_grants(corpus: CorpusSnapshot,
                        models: list[TopicModelRecord],
                        provider=None) -> tuple[tuple[PredictionScore, ...],
                                                tuple[str, ...]]:
    """Run every topic model of one impact type over the recent grants.
    Models with unreadable blobs are skipped with a warning."""
    if not models:
        raise ValidationError("at least one trained model is required")
    impact_types = {m.impact_type for m in models}
    if len(impact_types) != 1:
        raise ValidationError("models must share one impact type")
    impact_type = impact_types.pop()

    lag = max(m.metadata.get("lag_years", 1) for m in models)
    grant_ids = recent_grants(corpus, lag)
    if not grant_ids:
        return (), ()
    embeddings = embed_grants(corpus, provider)
    features = np.stack([embeddings[g] for g in grant_ids])

    scores: list[PredictionScore] = []
    for record in sorted(models, key=lambda m: m.topic):
        try:
            classifier = record.classifier()
        except ValidationError as err:
            warnings.warn(f"skipping topic {record.topic}: {err}", stacklevel=2)
            continue
        probs = classifier.predict_proba(features)
        scores.extend(
            PredictionScore(gid, record.topic, impact_type, float(p))
            for gid, p in zip(grant_ids, probs)
        )
    return tuple(scores), tuple(grant_ids)


def rethreshold(corpus: CorpusSnapshot, scores, threshold: float,
                rank_by: str = "h_index",
                hit_config: HitPaperConfig | None = None,
                query_year: int | None = None) -> tuple[dict, tuple, set]:
    """Per-topic high-score counts and the ranked investigator list for a
    given threshold, from already-computed scores."""
    if rank_by not in PI_RANK_METRICS:
        raise ValidationError(f"rank_by must be one of {PI_RANK_METRICS}")
    high_counts: dict[tuple, int] = {}
    high_grants: set[str] = set()
    seen_topics: set[tuple] = set()
    for entry in scores:
        seen_topics.add(entry.topic)
        if entry.score > threshold:
            high_counts[entry.topic] = high_counts.get(entry.topic, 0) + 1
            high_grants.add(entry.grant_id)
    for topic in seen_topics:
        high_counts.setdefault(topic, 0)

    values = {}
    for gid in sorted(high_grants):
        for rid in corpus.grants[gid].investigator_ids:
            if rid not in values and rid in corpus.researchers:
                profile = pi_profile(corpus, rid, query_year, hit_config)
                metric = getattr(profile, rank_by)
                values[rid] = -1.0 if metric is None else float(metric)
    ranked = tuple(sorted(values.items(), key=lambda kv: (-kv[1], kv[0])))
    return high_counts, ranked, high_grants


def predict_and_highlight(corpus: CorpusSnapshot,
                          models: list[TopicModelRecord],
                          threshold: float = 0.5,
                          rank_by: str = "h_index",
                          provider=None,
                          hit_config: HitPaperConfig | None = None,
                          query_year: int | None = None) -> PredictionResult:
    """Score every recent grant against every topic model of one impact
    type; collect per-topic high-score counts and the investigators of
    high-score grants ranked by a profile metric."""
    scores, grant_ids = score_recent_grants(corpus, models, provider)
    high_counts, ranked, _ = rethreshold(
        corpus, scores, threshold, rank_by, hit_config, query_year
    )
    return PredictionResult(
        impact_type=models[0].impact_type,
        scores=scores,
        high_counts=high_counts,
        ranked_pis=ranked,
        threshold=threshold,
        recent_grant_ids=grant_ids,
    )
