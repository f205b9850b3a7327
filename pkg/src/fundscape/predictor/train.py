"""Train per-(topic, impact type) models and record their test AUC."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from ..corpus import CorpusSnapshot
from ..errors import TrainingError, ValidationError
from ..metrics import HitPaperConfig
from .auc import evaluate_auc
from .boosting import BoostedStumps, blob_hash
from .datasets import (
    TrainingSet,
    build_training_set,
    embed_grants,
    select_topics,
)
from .timelag import compute_time_lag


@dataclass(frozen=True)
class TopicModelRecord:
    topic: tuple
    impact_type: str
    blob: bytes
    blob_hash: str
    test_auc: float
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0.0 <= self.test_auc <= 1.0:
            raise ValidationError("test_auc must be in [0, 1]")

    def classifier(self) -> BoostedStumps:
        return BoostedStumps.from_blob(self.blob)


def train_topic_model(training_set: TrainingSet, classifier=None,
                      seed: int = 0) -> TopicModelRecord:
    """Fit one classifier on the train split and measure AUC on the test
    split. ``classifier`` may be any object with fit/predict_proba/to_blob;
    the default is a seeded BoostedStumps."""
    if classifier is None:
        classifier = BoostedStumps(seed=seed)
    train, test = training_set.train_idx, training_set.test_idx
    if train.size == 0 or test.size == 0:
        raise TrainingError("empty train or test split")
    x, y = training_set.features, training_set.labels
    if len(set(y[train].tolist())) < 2:
        raise TrainingError("train split is single-class; cannot fit")
    classifier.fit(x[train], y[train])
    if len(set(y[test].tolist())) < 2:
        raise TrainingError("test split is single-class; AUC undefined")
    scores = classifier.predict_proba(x[test])
    auc = evaluate_auc(zip(scores.tolist(), y[test].tolist()))
    blob = classifier.to_blob()
    return TopicModelRecord(
        topic=training_set.topic,
        impact_type=training_set.impact_type,
        blob=blob,
        blob_hash=blob_hash(blob),
        test_auc=float(auc),
        metadata={
            "seed": seed,
            "lag_years": training_set.lag_years,
            "train_size": int(train.size),
            "test_size": int(test.size),
            **training_set.meta,
        },
    )


def train_impact_models(corpus: CorpusSnapshot, impact_type: str,
                        seed: int = 0, coverage: float = 0.8,
                        min_positives: int = 100,
                        lag_override: dict | None = None,
                        hit_config: HitPaperConfig | None = None,
                        provider=None, topic_level: int = 1,
                        max_workers: int = 4) -> list[TopicModelRecord]:
    """Select topics for one impact type and train a model per topic.

    Topic jobs are independent and run on a small thread pool; results
    come back in topic order regardless of completion order. Topics whose
    training set degenerates are skipped.
    """
    lag = compute_time_lag(corpus, impact_type, lag_override, hit_config)
    topics = select_topics(
        corpus, impact_type, coverage, min_positives, hit_config, topic_level
    )

    def job(topic):
        try:
            training_set = build_training_set(
                corpus, topic, impact_type, lag, seed, hit_config, provider
            )
            return train_topic_model(training_set, seed=seed)
        except TrainingError:
            return None

    if not topics:
        return []
    # Warm shared per-snapshot caches serially before fanning out.
    embed_grants(corpus, provider)
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        job_results = list(pool.map(job, topics))
    return [record for record in job_results if record is not None]
