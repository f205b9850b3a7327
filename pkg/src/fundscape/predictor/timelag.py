"""Impact time lags: how many years an impact type needs to materialize.

The lag Y for an impact type is the mean of (impact year - grant start
year) over all realized grant->impact pairs, rounded half-up and clamped
to at least one year. Two preset override tables ship for the common case
where a corpus is too sparse to measure lags directly.
"""

from __future__ import annotations

import math

from ..corpus import CorpusSnapshot
from ..errors import TrainingError, ValidationError
from ..metrics import (
    IMPACT_TYPES,
    HitPaperConfig,
    disruptive_paper_flags,
    hit_paper_flags,
)
from ..records import ImpactDocRecord

#: preset lag tables (years), keyed by impact type
LAG_PRESETS: dict[str, dict[str, int]] = {
    "case1": {
        "direct_paper": 5,
        "direct_hit_paper": 5,
        "direct_disruptive_paper": 5,
        "direct_patent": 6,
        "direct_clinical": 2,
        "broad_patent": 9,
        "broad_clinical": 8,
        "broad_policy": 10,
        "broad_newsfeed": 6,
    },
    "case2": {
        "direct_paper": 3,
        "direct_hit_paper": 3,
        "direct_disruptive_paper": 3,
        "direct_patent": 5,
        "broad_patent": 8,
        "broad_policy": 7,
        "broad_newsfeed": 3,
    },
}

_BROAD_LINKS = {
    "broad_patent": "paper_patent",
    "broad_clinical": "paper_clinical",
    "broad_policy": "paper_policy",
    "broad_newsfeed": "paper_newsfeed",
}
_DIRECT_DOC_LINKS = {
    "direct_patent": "grant_patent",
    "direct_clinical": "grant_clinical",
}


def impact_events(corpus: CorpusSnapshot, grant_id: str, impact_type: str,
                  hit_config: HitPaperConfig | None = None,
                  topic_level: int = 1) -> list[tuple[tuple, int]]:
    """Realized impact events of one type for one grant, as
    (topic prefix, year) pairs. Paper-flavored types use the paper's field
    path; document types use the document's topic path (newsfeeds fall
    under "unclassified")."""
    if impact_type not in IMPACT_TYPES:
        raise ValidationError(f"unknown impact type {impact_type!r}")

    def doc_event(doc: ImpactDocRecord) -> tuple[tuple, int]:
        path = doc.topic_path[:topic_level] if doc.topic_path else ("unclassified",)
        return path, doc.year

    events = []
    if impact_type in ("direct_paper", "direct_hit_paper",
                       "direct_disruptive_paper"):
        keep = None
        if impact_type == "direct_hit_paper":
            keep = hit_paper_flags(corpus, hit_config)
        elif impact_type == "direct_disruptive_paper":
            keep = disruptive_paper_flags(corpus)
        for pid in corpus.funded_papers(grant_id):
            if keep is not None and not keep[pid]:
                continue
            paper = corpus.papers[pid]
            events.append((paper.field_path[:topic_level], paper.publication_year))
    elif impact_type in _DIRECT_DOC_LINKS:
        for did in corpus.out_links(_DIRECT_DOC_LINKS[impact_type], grant_id):
            events.append(doc_event(corpus.docs[did]))
    else:
        link_type = _BROAD_LINKS[impact_type]
        for pid in corpus.funded_papers(grant_id):
            for did in corpus.out_links(link_type, pid):
                events.append(doc_event(corpus.docs[did]))
    return events


def compute_time_lag(corpus: CorpusSnapshot, impact_type: str,
                     override: dict | None = None,
                     hit_config: HitPaperConfig | None = None) -> int:
    """Mean realized lag for an impact type, rounded half-up, at least 1.

    ``override`` short-circuits measurement (e.g. one of LAG_PRESETS).
    With no override and no realized pairs this raises, pointing at the
    preset tables.
    """
    if override is not None and impact_type in override:
        lag = int(override[impact_type])
        if lag < 1:
            raise ValidationError(f"override lag for {impact_type!r} must be >= 1")
        return lag
    gaps = []
    for gid, grant in corpus.grants.items():
        for _, year in impact_events(corpus, gid, impact_type, hit_config):
            gaps.append(year - grant.start_year)
    if not gaps:
        raise TrainingError(
            f"no realized {impact_type!r} pairs to measure a lag from; "
            "supply an override table (see LAG_PRESETS)"
        )
    mean = sum(gaps) / len(gaps)
    return max(1, math.floor(mean + 0.5))


def lag_table(corpus: CorpusSnapshot, impact_types=IMPACT_TYPES,
              override: dict | None = None,
              hit_config: HitPaperConfig | None = None) -> dict[str, int]:
    """Lags for several impact types at once; types that cannot be
    measured and have no override are omitted."""
    table = {}
    for impact_type in impact_types:
        try:
            table[impact_type] = compute_time_lag(
                corpus, impact_type, override, hit_config
            )
        except TrainingError:
            continue
    return table
