"""Topic-level views of a corpus: aggregation, keyword clouds, field
bubbles, and impact-entity histograms."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import metrics
from .corpus import CorpusSnapshot
from .embedding import HashingEmbedder, embed_abstract
from .errors import UnsupportedCombinationError, ValidationError
from .records import GrantRecord, ImpactDocRecord, TopicPath, record_year

UNCLASSIFIED: TopicPath = ("unclassified",)


@dataclass(frozen=True)
class TopicNodeSummary:
    topic_path: TopicPath
    member_ids: tuple[str, ...]
    doc_type: str | None = None
    total_funding: float | None = None
    impact: metrics.ImpactVector | None = None
    rii: dict | None = None

    @property
    def count(self) -> int:
        return len(self.member_ids)

    @property
    def node_id(self) -> str:
        return "/".join(self.topic_path)


@dataclass(frozen=True)
class KeywordStat:
    token: str
    total_freq: int
    yearly: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.total_freq != sum(self.yearly.values()):
            raise ValidationError(
                f"{self.token!r}: total_freq != sum of yearly counts"
            )


@dataclass(frozen=True)
class FieldBubble:
    field_path: TopicPath
    x: float
    y: float
    radius: float
    total_funding: float
    grant_count: int

    def __post_init__(self):
        if not (
            np.isfinite(self.x) and np.isfinite(self.y) and np.isfinite(self.radius)
        ):
            raise ValidationError("bubble position/radius must be finite")
        if self.radius <= 0:
            raise ValidationError("bubble radius must be positive")


def _entity_id(entity) -> str:
    for attr in ("grant_id", "paper_id", "doc_id", "researcher_id"):
        if hasattr(entity, attr):
            return getattr(entity, attr)
    raise ValidationError(f"entity {entity!r} has no id")


def _entity_path(entity) -> TopicPath:
    path = getattr(entity, "field_path", None) or getattr(entity, "topic_path", None)
    return path if path else UNCLASSIFIED


def aggregate_by_topic(entities, level: int,
                       corpus: CorpusSnapshot | None = None,
                       hit_config: metrics.HitPaperConfig | None = None,
                       ) -> list[TopicNodeSummary]:
    """Group entities by topic-path prefix at the given level.

    Paths shorter than the level group under the whole path; newsfeeds
    (no topic label) fall into a single "unclassified" node. Grant nodes
    additionally carry funding totals and, when a corpus is supplied,
    summed impact and an RII row.
    """
    if level < 1:
        raise ValidationError("topic level must be >= 1")
    groups: dict[TopicPath, list] = {}
    for entity in entities:
        groups.setdefault(_entity_path(entity)[:level], []).append(entity)

    nodes = []
    for path in sorted(groups):
        members = groups[path]
        ids = tuple(_entity_id(m) for m in members)
        doc_types = {m.doc_type for m in members if isinstance(m, ImpactDocRecord)}
        all_grants = all(isinstance(m, GrantRecord) for m in members)
        funding = impact = rii_row = None
        if all_grants:
            funding = float(sum(m.funding_amount for m in members))
            if corpus is not None:
                impacts = metrics.all_grant_impacts(corpus, hit_config)
                impact = metrics.ImpactVector()
                for gid in ids:
                    impact = impact + impacts[gid]
                rii_row = {
                    t: metrics.rii(corpus, ids, t, hit_config)
                    for t in metrics.IMPACT_TYPES
                }
        nodes.append(
            TopicNodeSummary(
                topic_path=path,
                member_ids=ids,
                doc_type=doc_types.pop() if len(doc_types) == 1 else None,
                total_funding=funding,
                impact=impact,
                rii=rii_row,
            )
        )
    return nodes


# -- keyword cloud ---------------------------------------------------------------

def load_stopwords() -> frozenset[str]:
    text = (
        resources.files("fundscape.data").joinpath("stopwords_en.txt").read_text()
    )
    return frozenset(
        line.strip()
        for line in text.splitlines()
        if line.strip() and not line.startswith("#")
    )


_STOPWORDS = None


def _stopwords() -> frozenset[str]:
    global _STOPWORDS
    if _STOPWORDS is None:
        _STOPWORDS = load_stopwords()
    return _STOPWORDS


def _resolve_member(corpus: CorpusSnapshot, member_id: str):
    for collection in (corpus.grants, corpus.papers, corpus.docs):
        record = collection.get(member_id)
        if record is not None:
            return record
    raise ValidationError(f"unknown member id {member_id!r}")


def _member_text(record, include_abstract: bool) -> str:
    text = record.title
    abstract = getattr(record, "abstract", None)
    if include_abstract and abstract:
        text = f"{text} {abstract}"
    return text


def keyword_cloud(node: TopicNodeSummary, corpus: CorpusSnapshot,
                  top_n: int = 50,
                  include_abstract: bool = True) -> list[KeywordStat]:
    """Stopword-filtered unigram frequencies over a node's member texts,
    ranked by total count (ties lexicographic) with per-year series."""
    from .embedding import tokenize

    stop = _stopwords()
    totals: Counter = Counter()
    yearly: dict[str, Counter] = {}
    for member_id in node.member_ids:
        record = _resolve_member(corpus, member_id)
        year = record_year(record)
        for token in tokenize(_member_text(record, include_abstract)):
            if token in stop:
                continue
            totals[token] += 1
            yearly.setdefault(token, Counter())[year] += 1
    ranked = sorted(totals, key=lambda t: (-totals[t], t))[:top_n]
    return [
        KeywordStat(token, totals[token], dict(sorted(yearly[token].items())))
        for token in ranked
    ]


# -- field bubbles ---------------------------------------------------------------

def classical_mds(distances: np.ndarray, seed: int = 0) -> np.ndarray:
    """Deterministic 2D classical (Torgerson) MDS.

    Double-centers the squared distance matrix and projects onto the top
    two eigenvectors; axis signs are fixed so the largest-magnitude
    coordinate on each axis is positive, keeping output independent of
    eigensolver sign conventions. The seed is part of the reducer contract
    but unused here (the solution is closed-form).
    """
    d = np.asarray(distances, dtype=float)
    n = d.shape[0]
    if d.shape != (n, n):
        raise ValidationError("distance matrix must be square")
    if n == 1:
        return np.zeros((1, 2))
    j = np.eye(n) - np.full((n, n), 1.0 / n)
    b = -0.5 * j @ (d * d) @ j
    eigvals, eigvecs = np.linalg.eigh(b)
    order = np.argsort(eigvals)[::-1][:2]
    coords = np.zeros((n, 2))
    for axis, idx in enumerate(order):
        scale = np.sqrt(max(eigvals[idx], 0.0))
        column = eigvecs[:, idx] * scale
        anchor = np.argmax(np.abs(column))
        if column[anchor] < 0:
            column = -column
        coords[:, axis] = column
    if not np.all(np.isfinite(coords)):
        raise ValidationError("MDS produced non-finite coordinates")
    return coords


def _circular_fallback(n: int, seed: int) -> np.ndarray:
    rotation = np.random.default_rng(seed).uniform(0.0, 2.0 * np.pi)
    angles = rotation + 2.0 * np.pi * np.arange(n) / max(n, 1)
    return np.column_stack([np.cos(angles), np.sin(angles)])


def _cosine_distances(vectors: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(vectors, axis=1)
    safe = np.where(norms > 0, norms, 1.0)
    unit = vectors / safe[:, None]
    similarity = np.clip(unit @ unit.T, -1.0, 1.0)
    return 1.0 - similarity


def grant_field_bubbles(corpus: CorpusSnapshot, reducer=None, seed: int = 0,
                        field_level: int = 1, provider=None,
                        radius_min: float = 8.0,
                        radius_scale: float = 0.05) -> list[FieldBubble]:
    """One bubble per grant field: position from 2D reduction of the field's
    mean abstract embedding, radius grows with sqrt(total funding).

    A reducer failure degrades to a circular layout rather than crashing.
    """
    if reducer is None:
        reducer = classical_mds
    provider = provider or HashingEmbedder(seed=seed)

    fields: dict[TopicPath, list[GrantRecord]] = {}
    for grant in corpus.grants.values():
        fields.setdefault(grant.field_path[:field_level], []).append(grant)
    if not fields:
        raise ValidationError("corpus has no grants to place")
    paths = sorted(fields)

    means = np.array([
        np.mean([embed_abstract(g.abstract, provider) for g in fields[p]], axis=0)
        for p in paths
    ])
    try:
        positions = reducer(_cosine_distances(means), seed)
        positions = np.asarray(positions, dtype=float)
        if positions.shape != (len(paths), 2) or not np.all(np.isfinite(positions)):
            raise ValidationError("reducer output malformed")
    except Exception:
        positions = _circular_fallback(len(paths), seed)

    bubbles = []
    for path, position in zip(paths, positions):
        funding = float(sum(g.funding_amount for g in fields[path]))
        bubbles.append(
            FieldBubble(
                field_path=path,
                x=float(position[0]),
                y=float(position[1]),
                radius=radius_min + radius_scale * float(np.sqrt(funding)),
                total_funding=funding,
                grant_count=len(fields[path]),
            )
        )
    return bubbles


# -- impact entity distributions ---------------------------------------------------

#: dimension -> {doc_type: attribute key}
_DIMENSION_KEYS = {
    "assignee": {"patent": "assignee_org"},
    "trial_phase": {"clinical_trial": "phase"},
    "policy_source": {"policy": "source_title"},
    "news_outlet": {"newsfeed": "outlet"},
    "source_country": {"policy": "source_country", "newsfeed": "country"},
}

DISTRIBUTION_DIMENSIONS = tuple(sorted(_DIMENSION_KEYS))


def impact_entity_distribution(docs, dimension: str) -> list[tuple[str, int]]:
    """Histogram of one attribute over impact documents, count-descending
    (ties lexicographic)."""
    if dimension not in _DIMENSION_KEYS:
        raise ValidationError(
            f"unknown dimension {dimension!r}; expected one of "
            f"{DISTRIBUTION_DIMENSIONS}"
        )
    keys = _DIMENSION_KEYS[dimension]
    counts: Counter = Counter()
    for doc in docs:
        key = keys.get(doc.doc_type)
        if key is None:
            raise UnsupportedCombinationError(
                f"dimension {dimension!r} does not apply to {doc.doc_type!r} docs"
            )
        counts[str(doc.attributes[key])] += 1
    return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
