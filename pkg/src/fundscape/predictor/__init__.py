"""Future-impact prediction: embeddings, lags, training sets, boosting,
scoring, and the model registry."""

from .auc import evaluate_auc
from .boosting import BoostedStumps, blob_hash
from .datasets import (
    TrainingSet,
    build_training_set,
    embed_grants,
    select_topics,
)
from .predict import (
    PI_RANK_METRICS,
    PredictionResult,
    PredictionScore,
    predict_and_highlight,
    recent_grants,
    rethreshold,
    score_recent_grants,
)
from .registry import load_models, save_model
from .timelag import LAG_PRESETS, compute_time_lag, impact_events, lag_table
from .train import TopicModelRecord, train_impact_models, train_topic_model

__all__ = [
    "LAG_PRESETS",
    "PI_RANK_METRICS",
    "BoostedStumps",
    "PredictionResult",
    "PredictionScore",
    "TopicModelRecord",
    "TrainingSet",
    "blob_hash",
    "build_training_set",
    "compute_time_lag",
    "embed_grants",
    "evaluate_auc",
    "impact_events",
    "lag_table",
    "load_models",
    "predict_and_highlight",
    "recent_grants",
    "rethreshold",
    "save_model",
    "score_recent_grants",
    "select_topics",
    "train_impact_models",
    "train_topic_model",
]
