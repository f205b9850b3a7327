"""Funding-impact metrics over a corpus snapshot.

Covers the per-grant direct and broader impact counts, hit-paper and
disruption flags, researcher profiles (h-index, productivity, average
LogC10), group aggregation, and the Relative Impact Index (RII). Everything
is a pure function of the immutable snapshot; expensive intermediates are
memoized on ``corpus.cache``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .corpus import CorpusSnapshot
from .errors import UnknownEntityError, ValidationError

DIRECT_IMPACT_TYPES = (
    "direct_paper",
    "direct_hit_paper",
    "direct_disruptive_paper",
    "direct_patent",
    "direct_clinical",
)
BROAD_IMPACT_TYPES = (
    "broad_patent",
    "broad_clinical",
    "broad_policy",
    "broad_newsfeed",
)
IMPACT_TYPES = DIRECT_IMPACT_TYPES + BROAD_IMPACT_TYPES

#: impact type -> (section, ImpactVector field)
_TYPE_FIELDS = {
    "direct_paper": ("direct", "papers"),
    "direct_hit_paper": ("direct", "hit_papers"),
    "direct_disruptive_paper": ("direct", "disruptive_papers"),
    "direct_patent": ("direct", "patents"),
    "direct_clinical": ("direct", "clinical_trials"),
    "broad_patent": ("broad", "patent_citations"),
    "broad_clinical": ("broad", "clinical_citations"),
    "broad_policy": ("broad", "policy_citations"),
    "broad_newsfeed": ("broad", "newsfeed_citations"),
}


@dataclass(frozen=True)
class DisruptionCounts:
    n_i: int  # citers of the focal paper that cite none of its references
    n_j: int  # citers of the focal paper that cite at least one reference
    n_k: int  # references never cited by any citer of the focal paper

    def __post_init__(self):
        if min(self.n_i, self.n_j, self.n_k) < 0:
            raise ValidationError("disruption counts must be non-negative")

    @property
    def denominator(self) -> int:
        return self.n_i + self.n_j + self.n_k


@dataclass(frozen=True)
class HitPaperConfig:
    """Hit papers exceed the top-T percentile of citations in their
    (field, year) group; grouping uses the topic path truncated to
    ``field_level``."""

    percentile_threshold: float = 0.05
    field_level: int = 1

    def __post_init__(self):
        if not 0 < self.percentile_threshold < 1:
            raise ValidationError("percentile_threshold must be in (0, 1)")
        if self.field_level < 1:
            raise ValidationError("field_level must be >= 1")


@dataclass(frozen=True)
class DirectCounts:
    papers: int = 0
    hit_papers: int = 0
    disruptive_papers: int = 0
    patents: int = 0
    clinical_trials: int = 0


@dataclass(frozen=True)
class BroadCounts:
    patent_citations: int = 0
    clinical_citations: int = 0
    policy_citations: int = 0
    newsfeed_citations: int = 0


@dataclass(frozen=True)
class ImpactVector:
    direct: DirectCounts = field(default_factory=DirectCounts)
    broad: BroadCounts = field(default_factory=BroadCounts)

    def __post_init__(self):
        values = list(vars(self.direct).values()) + list(vars(self.broad).values())
        if min(values) < 0:
            raise ValidationError("impact counts must be non-negative")
        if self.direct.hit_papers > self.direct.papers:
            raise ValidationError("hit_papers cannot exceed papers")
        if self.direct.disruptive_papers > self.direct.papers:
            raise ValidationError("disruptive_papers cannot exceed papers")

    def get(self, impact_type: str) -> int:
        if impact_type not in _TYPE_FIELDS:
            raise ValidationError(f"unknown impact type {impact_type!r}")
        section, name = _TYPE_FIELDS[impact_type]
        return getattr(getattr(self, section), name)

    def __add__(self, other: "ImpactVector") -> "ImpactVector":
        return ImpactVector(
            DirectCounts(**{
                k: getattr(self.direct, k) + getattr(other.direct, k)
                for k in vars(self.direct)
            }),
            BroadCounts(**{
                k: getattr(self.broad, k) + getattr(other.broad, k)
                for k in vars(self.broad)
            }),
        )

    def to_dict(self) -> dict:
        return {"direct": dict(vars(self.direct)), "broad": dict(vars(self.broad))}


@dataclass(frozen=True)
class PIProfile:
    researcher_id: str
    h_index: int
    productivity: int
    avg_log_c10: float
    career_age: int | None
    impact: ImpactVector


class RIITable:
    """RII values keyed by (group, impact type); None marks 'no baseline'."""

    def __init__(self):
        self.entries: dict[tuple, float | None] = {}

    def set(self, group, impact_type: str, value: float | None):
        self.entries[(group, impact_type)] = value

    def get(self, group, impact_type: str) -> float | None:
        return self.entries[(group, impact_type)]

    def row(self, group) -> dict[str, float | None]:
        return {t: v for (g, t), v in self.entries.items() if g == group}

    def groups(self) -> list:
        return sorted({g for g, _ in self.entries}, key=repr)


# -- disruption index ----------------------------------------------------------

def disruption_counts(corpus: CorpusSnapshot, focal: str) -> DisruptionCounts:
    if focal not in corpus.papers:
        raise UnknownEntityError(f"unknown paper id {focal!r}")
    references = set(corpus.out_links("paper_paper", focal))
    citers = corpus.in_links("paper_paper", focal)
    n_i = n_j = 0
    for citer in citers:
        cited = corpus.out_links("paper_paper", citer)
        if any(c in references for c in cited if c != focal):
            n_j += 1
        else:
            n_i += 1
    citer_set = set(citers)
    n_k = sum(
        1
        for ref in references
        if not any(src in citer_set for src in corpus.in_links("paper_paper", ref))
    )
    return DisruptionCounts(n_i, n_j, n_k)


def disruption_from_counts(counts: DisruptionCounts) -> float | None:
    if counts.denominator == 0:
        return None
    return (counts.n_i - counts.n_j) / counts.denominator


def disruption_index(corpus: CorpusSnapshot, focal: str) -> float | None:
    """Disruption of one paper in [-1, 1]; None when it has no citers and
    every reference is cited by a citer (zero denominator)."""
    return disruption_from_counts(disruption_counts(corpus, focal))


def all_disruption_indices(corpus: CorpusSnapshot) -> dict[str, float | None]:
    key = ("disruption",)
    if key not in corpus.cache:
        corpus.cache[key] = {
            pid: disruption_index(corpus, pid) for pid in corpus.papers
        }
    return corpus.cache[key]


def disruptive_paper_flags(corpus: CorpusSnapshot,
                           top_fraction: float = 0.05) -> dict[str, bool]:
    """Papers in the global top fraction by disruption index.

    The cut is strict: a paper is flagged iff its index strictly exceeds the
    (1 - top_fraction) quantile over all papers with a defined index, the
    same tie-conservative convention used for hit papers. Undefined indices
    are excluded from the ranking.
    """
    key = ("disruptive_flags", top_fraction)
    if key in corpus.cache:
        return corpus.cache[key]
    indices = all_disruption_indices(corpus)
    defined = {pid: d for pid, d in indices.items() if d is not None}
    flags = {pid: False for pid in corpus.papers}
    if defined:
        cut = float(np.quantile(list(defined.values()), 1.0 - top_fraction))
        for pid, d in defined.items():
            flags[pid] = d > cut
    corpus.cache[key] = flags
    return flags


# -- hit papers ----------------------------------------------------------------

def hit_paper_flags(corpus: CorpusSnapshot,
                    config: HitPaperConfig | None = None) -> dict[str, bool]:
    """Flag papers whose citation count strictly exceeds the (1-T)-quantile
    of their (field, year) group; ties are never flagged."""
    config = config or HitPaperConfig()
    key = ("hit_flags", config)
    if key in corpus.cache:
        return corpus.cache[key]
    groups: dict[tuple, list[str]] = {}
    for pid, paper in corpus.papers.items():
        group = (paper.field_path[: config.field_level], paper.publication_year)
        groups.setdefault(group, []).append(pid)
    flags = {}
    q = 1.0 - config.percentile_threshold
    for members in groups.values():
        counts = np.array([corpus.papers[p].citation_count for p in members])
        cut = float(np.quantile(counts, q))
        for pid, count in zip(members, counts):
            flags[pid] = bool(count > cut)
    corpus.cache[key] = flags
    return flags


# -- grant impact ----------------------------------------------------------------

_BROAD_FIELD_LINKS = (
    ("patent_citations", "paper_patent"),
    ("clinical_citations", "paper_clinical"),
    ("policy_citations", "paper_policy"),
    ("newsfeed_citations", "paper_newsfeed"),
)


def grant_impact(corpus: CorpusSnapshot, grant_id: str,
                 hit_config: HitPaperConfig | None = None,
                 disruptive_top_fraction: float = 0.05,
                 dedup: bool = False) -> ImpactVector:
    """Direct and broader impact counts of one grant.

    Broad counts follow grant -> funded paper -> document chains, one unit
    per citation pair; ``dedup`` counts each distinct document once.
    """
    if grant_id not in corpus.grants:
        raise UnknownEntityError(f"unknown grant id {grant_id!r}")
    hit_config = hit_config or HitPaperConfig()
    hits = hit_paper_flags(corpus, hit_config)
    disruptive = disruptive_paper_flags(corpus, disruptive_top_fraction)

    funded = corpus.funded_papers(grant_id)
    direct = DirectCounts(
        papers=len(funded),
        hit_papers=sum(hits[p] for p in funded),
        disruptive_papers=sum(disruptive[p] for p in funded),
        patents=len(corpus.out_links("grant_patent", grant_id)),
        clinical_trials=len(corpus.out_links("grant_clinical", grant_id)),
    )
    broad_counts = {}
    for fname, link_type in _BROAD_FIELD_LINKS:
        hits_for_type = [
            doc for p in funded for doc in corpus.out_links(link_type, p)
        ]
        broad_counts[fname] = len(set(hits_for_type)) if dedup else len(hits_for_type)
    return ImpactVector(direct, BroadCounts(**broad_counts))


def all_grant_impacts(corpus: CorpusSnapshot,
                      hit_config: HitPaperConfig | None = None,
                      disruptive_top_fraction: float = 0.05,
                      dedup: bool = False) -> dict[str, ImpactVector]:
    hit_config = hit_config or HitPaperConfig()
    key = ("grant_impacts", hit_config, disruptive_top_fraction, dedup)
    if key not in corpus.cache:
        corpus.cache[key] = {
            gid: grant_impact(corpus, gid, hit_config, disruptive_top_fraction, dedup)
            for gid in corpus.grants
        }
    return corpus.cache[key]


# -- researcher profiles ---------------------------------------------------------

def h_index(citations) -> int:
    """Largest h with h papers cited at least h times each."""
    ordered = sorted(citations, reverse=True)
    h = 0
    for rank, count in enumerate(ordered, start=1):
        if count >= rank:
            h = rank
        else:
            break
    return h


def pi_profile(corpus: CorpusSnapshot, researcher_id: str,
               query_year: int | None = None,
               hit_config: HitPaperConfig | None = None) -> PIProfile:
    """Scientific metrics plus aggregated grant impact for one researcher."""
    researcher = corpus.researchers.get(researcher_id)
    if researcher is None:
        raise UnknownEntityError(f"unknown researcher id {researcher_id!r}")
    if query_year is None:
        query_year = corpus.window.year_max

    authored = corpus.in_links("paper_author", researcher_id)
    citations = [corpus.papers[p].citation_count for p in authored]
    c10_values = [corpus.papers[p].c10 for p in authored]
    mean_c10 = float(np.mean(c10_values)) if c10_values else 0.0

    impacts = all_grant_impacts(corpus, hit_config)
    total = ImpactVector()
    for gid in corpus.in_links("grant_pi", researcher_id):
        total = total + impacts[gid]

    return PIProfile(
        researcher_id=researcher_id,
        h_index=h_index(citations),
        productivity=len(authored),
        avg_log_c10=math.log10(1.0 + mean_c10),
        career_age=(
            query_year - researcher.first_pub_year
            if researcher.first_pub_year is not None
            else None
        ),
        impact=total,
    )


# -- RII and aggregation ---------------------------------------------------------

def rii(corpus: CorpusSnapshot, group, impact_type: str,
        hit_config: HitPaperConfig | None = None) -> float | None:
    """Fraction of the group's grants with at least one impact of the given
    type, normalized by the same fraction over all grants; None when the
    global fraction is zero (no baseline)."""
    if impact_type not in _TYPE_FIELDS:
        raise ValidationError(f"unknown impact type {impact_type!r}")
    group_ids = sorted(g if isinstance(g, str) else g.grant_id for g in group)
    if not group_ids:
        raise ValidationError("RII group must be non-empty")
    for gid in group_ids:
        if gid not in corpus.grants:
            raise UnknownEntityError(f"unknown grant id {gid!r}")
    impacts = all_grant_impacts(corpus, hit_config)
    global_with = sum(1 for v in impacts.values() if v.get(impact_type) >= 1)
    if global_with == 0:
        return None
    group_with = sum(1 for gid in group_ids if impacts[gid].get(impact_type) >= 1)
    group_fraction = group_with / len(group_ids)
    global_fraction = global_with / len(corpus.grants)
    return group_fraction / global_fraction


def grant_groups(corpus: CorpusSnapshot, level: str,
                 field_level: int = 1) -> dict:
    """Partition (pi/field/agency) of grants used for aggregation."""
    groups: dict = {}
    if level == "pi":
        for rid in corpus.researchers:
            members = corpus.in_links("grant_pi", rid)
            if members:
                groups[rid] = sorted(members)
    elif level == "field":
        for gid, grant in corpus.grants.items():
            groups.setdefault(grant.field_path[:field_level], []).append(gid)
    elif level == "agency":
        for gid, grant in corpus.grants.items():
            groups.setdefault(grant.funder_org, []).append(gid)
    else:
        raise ValidationError(f"level must be pi|field|agency, got {level!r}")
    return {k: sorted(v) for k, v in sorted(groups.items(), key=lambda kv: repr(kv[0]))}


@dataclass(frozen=True)
class GroupImpact:
    group: object
    members: tuple[str, ...]
    vector: ImpactVector
    rii: dict


def aggregate_impact(corpus: CorpusSnapshot, level: str,
                     hit_config: HitPaperConfig | None = None,
                     field_level: int = 1) -> tuple[dict, RIITable]:
    """Element-wise ImpactVector sums and RII rows per group at one level."""
    impacts = all_grant_impacts(corpus, hit_config)
    groups = grant_groups(corpus, level, field_level)
    table = RIITable()
    summaries = {}
    for name, members in groups.items():
        vector = ImpactVector()
        for gid in members:
            vector = vector + impacts[gid]
        row = {}
        for impact_type in IMPACT_TYPES:
            value = rii(corpus, members, impact_type, hit_config)
            row[impact_type] = value
            table.set(name, impact_type, value)
        summaries[name] = GroupImpact(name, tuple(members), vector, row)
    return summaries, table
