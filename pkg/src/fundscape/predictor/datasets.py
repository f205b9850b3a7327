"""Training-set construction for per-(topic, impact type) classifiers.

Eligible grants start early enough that the impact lag Y has fully
elapsed within the corpus window. Positives have at least one impact of
the target type in the target topic; negatives are a seeded equal-size
sample of eligible grants with no such impact anywhere. The 80/20 split
is stratified by label.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..corpus import CorpusSnapshot
from ..embedding import HashingEmbedder, embed_abstract
from ..errors import TrainingError, ValidationError
from ..metrics import HitPaperConfig
from .timelag import impact_events


def embed_grants(corpus: CorpusSnapshot, provider=None) -> dict[str, np.ndarray]:
    """Abstract embeddings for every grant, cached per snapshot for the
    default provider."""
    if provider is None:
        provider = HashingEmbedder()
        cache_key = ("grant_embeddings", provider.dim, provider.seed)
        if cache_key not in corpus.cache:
            corpus.cache[cache_key] = {
                gid: embed_abstract(g.abstract, provider)
                for gid, g in corpus.grants.items()
            }
        return corpus.cache[cache_key]
    return {
        gid: embed_abstract(g.abstract, provider)
        for gid, g in corpus.grants.items()
    }


def _topic_sets(corpus: CorpusSnapshot, impact_type: str,
                hit_config: HitPaperConfig | None,
                topic_level: int) -> dict[str, set]:
    """grant id -> set of topics where it has >= 1 impact of the type."""
    key = ("impact_topics", impact_type, hit_config, topic_level)
    if key not in corpus.cache:
        corpus.cache[key] = {
            gid: {
                topic
                for topic, _ in impact_events(
                    corpus, gid, impact_type, hit_config, topic_level
                )
            }
            for gid in corpus.grants
        }
    return corpus.cache[key]


def select_topics(corpus: CorpusSnapshot, impact_type: str,
                  coverage: float = 0.8, min_positives: int = 100,
                  hit_config: HitPaperConfig | None = None,
                  topic_level: int = 1) -> list[tuple]:
    """Topics worth training models for.

    Topics are ranked by positive-grant count; the smallest prefix of
    that ranking covering at least ``coverage`` of all impacted grants is
    kept, then topics with fewer than ``min_positives`` positives are
    dropped. May return an empty list.
    """
    if not 0 < coverage <= 1:
        raise ValidationError("coverage must be in (0, 1]")
    topics_of = _topic_sets(corpus, impact_type, hit_config, topic_level)
    impacted = {gid for gid, topics in topics_of.items() if topics}
    if not impacted:
        return []
    positives: dict[tuple, int] = {}
    for gid in impacted:
        for topic in topics_of[gid]:
            positives[topic] = positives.get(topic, 0) + 1
    ranked = sorted(positives, key=lambda t: (-positives[t], t))
    selected: list[tuple] = []
    covered: set = set()
    for topic in ranked:
        selected.append(topic)
        covered |= {gid for gid in impacted if topic in topics_of[gid]}
        if len(covered) >= coverage * len(impacted):
            break
    return [t for t in selected if positives[t] >= min_positives]


@dataclass
class TrainingSet:
    topic: tuple
    impact_type: str
    grant_ids: tuple[str, ...]
    features: np.ndarray  # (n, dim)
    labels: np.ndarray  # (n,) in {0, 1}
    train_idx: np.ndarray
    test_idx: np.ndarray
    lag_years: int
    seed: int
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if set(np.unique(self.labels)) - {0, 1}:
            raise ValidationError("labels must be binary")
        if np.intersect1d(self.train_idx, self.test_idx).size:
            raise ValidationError("train/test overlap")
        n_pos = int(self.labels.sum())
        if n_pos * 2 != self.labels.size:
            raise ValidationError("positives and negatives must balance exactly")


def build_training_set(corpus: CorpusSnapshot, topic, impact_type: str,
                       lag_years: int, seed: int,
                       hit_config: HitPaperConfig | None = None,
                       provider=None, train_fraction: float = 0.8,
                       ) -> TrainingSet:
    """Balanced, time-respecting training set for one (topic, impact type).

    Only grants whose start year is at most window.year_max - lag_years
    are eligible; later grants lack the observation window. If fewer
    negatives exist than positives, positives are subsampled to keep the
    balance exact.
    """
    topic = tuple(topic)
    if lag_years < 1:
        raise ValidationError("lag_years must be >= 1")
    window = corpus.window
    cutoff = window.year_max - lag_years
    if cutoff < window.year_min:
        raise TrainingError(
            f"lag {lag_years} leaves no eligible years in "
            f"[{window.year_min}, {window.year_max}]"
        )
    topics_of = _topic_sets(corpus, impact_type, hit_config, len(topic))
    eligible = [
        gid for gid, g in corpus.grants.items()
        if window.year_min <= g.start_year <= cutoff
    ]
    positives = sorted(g for g in eligible if topic in topics_of[g])
    negative_pool = sorted(g for g in eligible if not topics_of[g])
    if not positives:
        raise TrainingError(
            f"no positive grants for {impact_type!r} in topic {topic!r}"
        )
    if not negative_pool:
        raise TrainingError(
            f"no negative grants available for {impact_type!r} in topic {topic!r}"
        )
    rng = np.random.default_rng(seed)
    if len(negative_pool) >= len(positives):
        negatives = sorted(
            str(g) for g in
            rng.choice(negative_pool, size=len(positives), replace=False)
        )
    else:
        positives = sorted(
            str(g) for g in
            rng.choice(positives, size=len(negative_pool), replace=False)
        )
        negatives = negative_pool

    grant_ids = tuple(positives + negatives)
    embeddings = embed_grants(corpus, provider)
    features = np.stack([embeddings[g] for g in grant_ids])
    labels = np.array([1] * len(positives) + [0] * len(negatives))

    # Stratified split: same train fraction within each class.
    pos_idx = rng.permutation(len(positives))
    neg_idx = len(positives) + rng.permutation(len(negatives))
    pos_cut = round(train_fraction * len(positives))
    neg_cut = round(train_fraction * len(negatives))
    train_idx = np.sort(np.concatenate([pos_idx[:pos_cut], neg_idx[:neg_cut]]))
    test_idx = np.sort(np.concatenate([pos_idx[pos_cut:], neg_idx[neg_cut:]]))

    return TrainingSet(
        topic=topic,
        impact_type=impact_type,
        grant_ids=grant_ids,
        features=features,
        labels=labels,
        train_idx=train_idx,
        test_idx=test_idx,
        lag_years=lag_years,
        seed=seed,
        meta={
            "n_positive": len(positives),
            "n_negative": len(negatives),
            "eligible_years": [window.year_min, cutoff],
        },
    )
