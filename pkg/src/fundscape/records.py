"""Domain records for the science-ecosystem corpus.

Entities are immutable dataclasses; list-valued fields are stored as tuples
so records can be compared and shared freely. Topic hierarchies are plain
tuples of labels, root first (``("Engineering", "Robotics")``).
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field

from .errors import ValidationError

TopicPath = tuple[str, ...]

DOC_TYPES = ("patent", "clinical_trial", "policy", "newsfeed")

#: Attributes that must be present for each impact-document type.
REQUIRED_DOC_ATTRIBUTES = {
    "patent": ("assignee_org",),
    "clinical_trial": ("phase", "interventions"),
    "policy": ("source_type", "source_title", "source_country"),
    "newsfeed": ("outlet", "country"),
}

GENDER_VALUES = ("female", "male", "other", "undisclosed")

#: link_type -> (source collection, target collection). ``paper_paper`` links
#: run citing paper -> cited paper; every other type runs upstream entity ->
#: downstream entity in the order the type name spells out.
LINK_ENDPOINTS = {
    "grant_paper": ("grant", "paper"),
    "grant_patent": ("grant", "patent"),
    "grant_clinical": ("grant", "clinical_trial"),
    "paper_patent": ("paper", "patent"),
    "paper_clinical": ("paper", "clinical_trial"),
    "paper_policy": ("paper", "policy"),
    "paper_newsfeed": ("paper", "newsfeed"),
    "paper_paper": ("paper", "paper"),
    "grant_pi": ("grant", "researcher"),
    "paper_author": ("paper", "researcher"),
}

LINK_TYPES = tuple(LINK_ENDPOINTS)


def _as_topic_path(value) -> TopicPath:
    if value is None:
        return ()
    if isinstance(value, str):
        raise ValidationError(f"topic path must be a sequence of labels, got {value!r}")
    path = tuple(str(level) for level in value)
    if any(not level for level in path):
        raise ValidationError(f"topic path contains an empty label: {path!r}")
    return path


def _as_date(value) -> dt.date:
    if isinstance(value, dt.date):
        return value
    try:
        return dt.date.fromisoformat(str(value))
    except ValueError as exc:
        raise ValidationError(f"not an ISO-8601 date: {value!r}") from exc


@dataclass(frozen=True)
class YearWindow:
    """Closed year range every dated record must fall into."""

    year_min: int
    year_max: int

    def __post_init__(self):
        if self.year_min > self.year_max:
            raise ValidationError(
                f"empty window: {self.year_min} > {self.year_max}"
            )

    def __contains__(self, year: int) -> bool:
        return self.year_min <= year <= self.year_max


@dataclass(frozen=True)
class GrantRecord:
    grant_id: str
    title: str
    abstract: str
    funding_amount: float
    funder_org: str
    research_orgs: tuple[str, ...]
    grant_start_date: dt.date
    grant_end_date: dt.date
    investigator_ids: tuple[str, ...]
    field_path: TopicPath

    def __post_init__(self):
        object.__setattr__(self, "research_orgs", tuple(self.research_orgs))
        object.__setattr__(self, "investigator_ids", tuple(self.investigator_ids))
        object.__setattr__(self, "grant_start_date", _as_date(self.grant_start_date))
        object.__setattr__(self, "grant_end_date", _as_date(self.grant_end_date))
        object.__setattr__(self, "field_path", _as_topic_path(self.field_path))
        if not self.grant_id:
            raise ValidationError("grant_id must be non-empty")
        if self.funding_amount < 0:
            raise ValidationError(f"{self.grant_id}: funding_amount < 0")
        if self.grant_start_date > self.grant_end_date:
            raise ValidationError(f"{self.grant_id}: start date after end date")
        if not self.field_path:
            raise ValidationError(f"{self.grant_id}: field_path is empty")

    @property
    def start_year(self) -> int:
        return self.grant_start_date.year


@dataclass(frozen=True)
class PaperRecord:
    paper_id: str
    title: str
    publication_year: int
    field_path: TopicPath
    citation_count: int
    c10: int
    author_ids: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "author_ids", tuple(self.author_ids))
        object.__setattr__(self, "field_path", _as_topic_path(self.field_path))
        if not self.paper_id:
            raise ValidationError("paper_id must be non-empty")
        if self.citation_count < 0:
            raise ValidationError(f"{self.paper_id}: citation_count < 0")
        if self.c10 < 0:
            raise ValidationError(f"{self.paper_id}: c10 < 0")
        if not self.field_path:
            raise ValidationError(f"{self.paper_id}: field_path is empty")


@dataclass(frozen=True)
class ImpactDocRecord:
    doc_id: str
    doc_type: str
    title: str
    year: int
    topic_path: TopicPath
    attributes: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "topic_path", _as_topic_path(self.topic_path))
        if not self.doc_id:
            raise ValidationError("doc_id must be non-empty")
        if self.doc_type not in DOC_TYPES:
            raise ValidationError(
                f"{self.doc_id}: unknown doc_type {self.doc_type!r}"
            )
        for key in REQUIRED_DOC_ATTRIBUTES[self.doc_type]:
            if key not in self.attributes:
                raise ValidationError(
                    f"{self.doc_id}: {self.doc_type} requires attribute '{key}'"
                )
        # Newsfeeds carry no topic classification; everything else must.
        if self.doc_type != "newsfeed" and not self.topic_path:
            raise ValidationError(f"{self.doc_id}: topic_path is empty")


@dataclass(frozen=True)
class ResearcherRecord:
    researcher_id: str
    name: str
    gender: str | None = None
    first_pub_year: int | None = None
    research_orgs: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "research_orgs", tuple(self.research_orgs))
        if not self.researcher_id:
            raise ValidationError("researcher_id must be non-empty")
        if self.gender is not None and self.gender not in GENDER_VALUES:
            raise ValidationError(
                f"{self.researcher_id}: gender must be one of {GENDER_VALUES}"
            )


@dataclass(frozen=True)
class CitationLink:
    source_id: str
    target_id: str
    link_type: str

    def __post_init__(self):
        if self.link_type not in LINK_ENDPOINTS:
            raise ValidationError(f"unknown link_type {self.link_type!r}")


def record_year(record) -> int | None:
    """Year used for window filtering; None for undated entities."""
    if isinstance(record, GrantRecord):
        return record.start_year
    if isinstance(record, PaperRecord):
        return record.publication_year
    if isinstance(record, ImpactDocRecord):
        return record.year
    return None
