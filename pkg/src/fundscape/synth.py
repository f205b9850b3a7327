"""Deterministic synthetic corpora for desk-scale runs and tests.

Generation is a pure function of (seed, config): one RNG, fixed draw order.
The planted-structure knobs can force known outcomes, e.g. a grant field
whose members always yield patents, or a marker token in abstracts that
guarantees a patent outcome (used to give predictors a learnable signal).
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field, replace

import numpy as np

from .corpus import CorpusSnapshot
from .errors import ValidationError
from .records import (
    CitationLink,
    GrantRecord,
    ImpactDocRecord,
    PaperRecord,
    ResearcherRecord,
    YearWindow,
)

GRANT_FIELDS = {
    "Engineering": ("Robotics", "Materials", "Energy Systems"),
    "Biomedical": ("Neuroscience", "Immunology", "Clinical Medicine"),
    "Computing": ("Machine Learning", "Data Systems", "Visualization"),
    "Environment": ("Climate", "Oceans", "Ecology"),
    "Social Sciences": ("Economics", "Education", "Policy Studies"),
}

PAPER_FIELDS = GRANT_FIELDS

PATENT_TOPICS = {
    "Human Necessities": ("Medical Devices", "Agriculture"),
    "Chemistry": ("Biochemistry", "Polymers"),
    "Physics": ("Computing Hardware", "Optics"),
    "Electricity": ("Digital Communication", "Power"),
}

TRIAL_TOPICS = {
    "Nervous System Diseases": ("Alzheimer Disease", "Stroke"),
    "Neoplasms": ("Lung Neoplasms", "Leukemia"),
    "Virus Diseases": ("Influenza", "Hepatitis"),
}

POLICY_TOPICS = {
    "Health Policy": ("Public Health", "Drug Regulation"),
    "Environment Policy": ("Climate Change", "Conservation"),
    "Innovation Policy": ("Research Funding", "Technology Transfer"),
}

FUNDERS = ("NSF-X", "NIH-Y", "ERC-Z", "Wellspring Trust", "Meridian Fund")

ORGS = (
    "Lakeside University", "Northbridge Institute", "Coastal Polytechnic",
    "Highland College", "Riverbend University", "Summit Research Center",
    "Harborview Institute", "Prairie State University",
)

PHASES = ("Phase 1", "Phase 2", "Phase 3", "Phase 4")
POLICY_SOURCE_TYPES = ("gov", "IGO", "think tank")
POLICY_SOURCES = (
    "Department of Health", "Environment Agency", "World Health Organization",
    "Economic Council", "Parliamentary Office", "Global Policy Institute",
)
COUNTRIES = ("US", "UK", "DE", "CN", "FR", "JP", "IGO")
OUTLETS = (
    "Daily Science", "The Observer Times", "TechWire", "Health Tribune",
    "Global News Desk", "Metro Herald",
)

FIRST_NAMES = (
    "Ada", "Boris", "Chen", "Dara", "Elif", "Farid", "Grace", "Hugo", "Ines",
    "Jun", "Kira", "Luis", "Mara", "Noor", "Omar", "Priya", "Quinn", "Rosa",
    "Sami", "Tara", "Uma", "Viktor", "Wen", "Xena", "Yuki", "Zane",
)
LAST_NAMES = (
    "Alvarez", "Bennett", "Cai", "Dubois", "Eriksen", "Fontaine", "Garcia",
    "Haddad", "Ivanov", "Jensen", "Kaur", "Lindqvist", "Moreau", "Nakamura",
    "Okafor", "Petrov", "Quiroga", "Rossi", "Sato", "Tanaka", "Underwood",
    "Vega", "Weber", "Xu", "Yilmaz", "Zhou",
)

WORDS = (
    "adaptive", "algorithm", "analysis", "antibody", "assembly", "bayesian",
    "biomarker", "carbon", "catalyst", "cellular", "climate", "clinical",
    "coastal", "cognitive", "computational", "coral", "cortical", "coupled",
    "dynamic", "ecosystem", "education", "efficient", "emission", "energy",
    "epidemic", "equity", "estimation", "fabrication", "fluid", "forecast",
    "genomic", "graph", "health", "hybrid", "imaging", "immune", "inference",
    "integrated", "interface", "kinetic", "language", "learning", "lattice",
    "low-cost", "magnetic", "membrane", "microbial", "modeling", "molecular",
    "network", "neural", "novel", "ocean", "optimization", "particle",
    "pathway", "perception", "photonic", "plasma", "policy", "polymer",
    "population", "prediction", "protein", "quantum", "regional", "renewable",
    "resilient", "robotic", "scalable", "sensor", "signal", "simulation",
    "social", "spatial", "spectral", "statistical", "storage", "structural",
    "synthesis", "therapeutic", "thermal", "tissue", "transport", "urban",
    "vaccine", "variational", "visual", "wireless",
)


@dataclass(frozen=True)
class SynthConfig:
    """Sizes, rates, and planted structure for one synthetic corpus."""

    grants: int = 120
    papers: int = 360
    patents: int = 80
    clinical_trials: int = 40
    policies: int = 50
    newsfeeds: int = 50
    researchers: int = 90
    window: tuple[int, int] = (2000, 2021)

    paper_funded_rate: float = 0.8      # P(a paper acknowledges >=1 grant)
    references_per_paper: float = 3.0   # Poisson mean over earlier papers
    base_patent_rate: float = 0.25      # P(grant has direct patent outcomes)
    base_clinical_rate: float = 0.12
    broad_citers_per_doc: float = 1.5   # Poisson mean of papers cited by a doc

    # planted structure
    patent_rate_by_field: dict = field(default_factory=dict)
    marker_token: str | None = None
    marker_fraction: float = 0.0
    marker_patent_rate: float = 1.0
    marker_topic: str | None = None     # top-level patent topic for planted links

    def __post_init__(self):
        for name in ("grants", "papers", "patents", "clinical_trials",
                     "policies", "newsfeeds", "researchers"):
            if getattr(self, name) <= 0:
                raise ValidationError(f"size '{name}' must be positive")


def generate_synthetic_corpus(seed: int, config: SynthConfig | None = None,
                              **overrides) -> CorpusSnapshot:
    """Build a referentially-closed snapshot from (seed, config) alone."""
    cfg = config or SynthConfig()
    if overrides:
        cfg = replace(cfg, **overrides)
    rng = np.random.default_rng(seed)
    window = YearWindow(*cfg.window)
    years = np.arange(window.year_min, window.year_max + 1)

    researchers = _make_researchers(rng, cfg, window)
    grants, marked = _make_grants(rng, cfg, window, list(researchers))
    papers = _make_papers(rng, cfg, window, list(researchers))
    patents = _make_docs(rng, "patent", cfg.patents, years, PATENT_TOPICS,
                         lambda: {"assignee_org": _pick(rng, ORGS)})
    trials = _make_docs(rng, "clinical_trial", cfg.clinical_trials, years,
                        TRIAL_TOPICS,
                        lambda: {"phase": _pick(rng, PHASES),
                                 "interventions": _phrase(rng, 2)})
    policies = _make_docs(rng, "policy", cfg.policies, years, POLICY_TOPICS,
                          lambda: {"source_type": _pick(rng, POLICY_SOURCE_TYPES),
                                   "source_title": _pick(rng, POLICY_SOURCES),
                                   "source_country": _pick(rng, COUNTRIES)})
    newsfeeds = _make_docs(rng, "newsfeed", cfg.newsfeeds, years, None,
                           lambda: {"outlet": _pick(rng, OUTLETS),
                                    "country": _pick(rng, COUNTRIES)})
    docs = {**patents, **trials, **policies, **newsfeeds}

    links: list[CitationLink] = []
    links += _pi_links(grants)
    links += _author_links(papers)
    links += _funding_links(rng, cfg, grants, papers)
    links += _reference_links(rng, cfg, papers)
    links += _direct_outcome_links(rng, cfg, grants, patents, trials, marked)
    for doc_group, link_type in ((patents, "paper_patent"),
                                 (trials, "paper_clinical"),
                                 (policies, "paper_policy"),
                                 (newsfeeds, "paper_newsfeed")):
        links += _broad_links(rng, cfg, papers, doc_group, link_type)

    return CorpusSnapshot(grants, papers, docs, researchers, links, window)


# -- entity builders ----------------------------------------------------------

def _pick(rng, items):
    return items[int(rng.integers(len(items)))]


def _phrase(rng, n):
    return " ".join(_pick(rng, WORDS) for _ in range(n))


def _make_researchers(rng, cfg, window):
    researchers = {}
    for i in range(cfg.researchers):
        rid = f"res-{i:04d}"
        gender_draw = rng.random()
        gender = "female" if gender_draw < 0.4 else "male" if gender_draw < 0.8 else None
        researchers[rid] = ResearcherRecord(
            researcher_id=rid,
            name=f"{_pick(rng, FIRST_NAMES)} {_pick(rng, LAST_NAMES)}",
            gender=gender,
            first_pub_year=int(rng.integers(window.year_min - 20, window.year_max - 4)),
            research_orgs=(_pick(rng, ORGS),),
        )
    return researchers


def _make_grants(rng, cfg, window, researcher_ids):
    top_fields = list(GRANT_FIELDS)
    grants = {}
    marked: set[str] = set()
    for i in range(cfg.grants):
        gid = f"grant-{i:04d}"
        top = _pick(rng, top_fields)
        sub = _pick(rng, GRANT_FIELDS[top])
        start_year = int(rng.integers(window.year_min, window.year_max + 1))
        start = dt.date(start_year, int(rng.integers(1, 13)), 1)
        end = dt.date(min(start_year + int(rng.integers(1, 6)), window.year_max + 5), 6, 30)
        abstract_words = [_pick(rng, WORDS) for _ in range(int(rng.integers(30, 61)))]
        if cfg.marker_token and rng.random() < cfg.marker_fraction:
            marked.add(gid)
            for _ in range(3):
                abstract_words.insert(
                    int(rng.integers(len(abstract_words) + 1)), cfg.marker_token
                )
        n_pi = 1 + int(rng.random() < 0.4)
        investigators = tuple(
            researcher_ids[j]
            for j in sorted(rng.choice(len(researcher_ids), size=n_pi, replace=False))
        )
        grants[gid] = GrantRecord(
            grant_id=gid,
            title=_phrase(rng, int(rng.integers(4, 9))),
            abstract=" ".join(abstract_words),
            funding_amount=float(np.round(10 ** rng.uniform(4.5, 7.0), 2)),
            funder_org=_pick(rng, FUNDERS),
            research_orgs=(_pick(rng, ORGS),),
            grant_start_date=start,
            grant_end_date=end,
            investigator_ids=investigators,
            field_path=(top, sub),
        )
    return grants, marked


def _make_papers(rng, cfg, window, researcher_ids):
    top_fields = list(PAPER_FIELDS)
    papers = {}
    for i in range(cfg.papers):
        pid = f"paper-{i:04d}"
        top = _pick(rng, top_fields)
        sub = _pick(rng, PAPER_FIELDS[top])
        citations = int(rng.negative_binomial(1, 0.05))
        n_authors = 1 + int(rng.integers(0, 3))
        authors = tuple(
            researcher_ids[j]
            for j in sorted(rng.choice(len(researcher_ids), size=n_authors, replace=False))
        )
        papers[pid] = PaperRecord(
            paper_id=pid,
            title=_phrase(rng, int(rng.integers(5, 11))),
            publication_year=int(rng.integers(window.year_min, window.year_max + 1)),
            field_path=(top, sub),
            citation_count=citations,
            c10=int(rng.binomial(citations, 0.7)) if citations else 0,
            author_ids=authors,
        )
    return papers


def _make_docs(rng, doc_type, count, years, topics, attr_factory):
    docs = {}
    prefix = {"patent": "pat", "clinical_trial": "trial",
              "policy": "pol", "newsfeed": "news"}[doc_type]
    top_topics = list(topics) if topics else None
    for i in range(count):
        did = f"{prefix}-{i:04d}"
        if top_topics:
            top = _pick(rng, top_topics)
            path = (top, _pick(rng, topics[top]))
        else:
            path = ()
        docs[did] = ImpactDocRecord(
            doc_id=did,
            doc_type=doc_type,
            title=_phrase(rng, int(rng.integers(4, 9))),
            year=int(_pick(rng, list(years))),
            topic_path=path,
            attributes=attr_factory(),
        )
    return docs


# -- link builders ------------------------------------------------------------

def _pi_links(grants):
    return [
        CitationLink(g.grant_id, rid, "grant_pi")
        for g in grants.values()
        for rid in g.investigator_ids
    ]


def _author_links(papers):
    return [
        CitationLink(p.paper_id, rid, "paper_author")
        for p in papers.values()
        for rid in p.author_ids
    ]


def _funding_links(rng, cfg, grants, papers):
    grant_list = list(grants.values())
    links = []
    for paper in papers.values():
        if rng.random() >= cfg.paper_funded_rate:
            continue
        eligible = [g for g in grant_list if g.start_year <= paper.publication_year]
        if not eligible:
            continue
        n = 1 + int(rng.random() < 0.15)
        chosen = rng.choice(len(eligible), size=min(n, len(eligible)), replace=False)
        for j in sorted(chosen):
            links.append(CitationLink(eligible[j].grant_id, paper.paper_id, "grant_paper"))
    return links


def _reference_links(rng, cfg, papers):
    by_year: dict[int, list[str]] = {}
    for p in papers.values():
        by_year.setdefault(p.publication_year, []).append(p.paper_id)
    links = []
    for p in papers.values():
        earlier = [
            pid for year, ids in by_year.items() if year < p.publication_year
            for pid in ids
        ]
        if not earlier:
            continue
        earlier.sort()
        n_refs = min(int(rng.poisson(cfg.references_per_paper)), len(earlier))
        if n_refs == 0:
            continue
        chosen = rng.choice(len(earlier), size=n_refs, replace=False)
        for j in sorted(chosen):
            links.append(CitationLink(p.paper_id, earlier[j], "paper_paper"))
    return links


def _direct_outcome_links(rng, cfg, grants, patents, trials, marked):
    patent_list = sorted(patents.values(), key=lambda d: d.doc_id)
    trial_list = sorted(trials.values(), key=lambda d: d.doc_id)
    marker_pool = [
        d for d in patent_list
        if cfg.marker_topic is None or d.topic_path[0] == cfg.marker_topic
    ]
    links = []
    for grant in grants.values():
        if grant.grant_id in marked:
            gets_patent = rng.random() < cfg.marker_patent_rate
            pool = marker_pool or patent_list
        else:
            rate = cfg.patent_rate_by_field.get(grant.field_path[0], cfg.base_patent_rate)
            gets_patent = rng.random() < rate
            pool = patent_list
        if gets_patent:
            links += _attach_outcomes(rng, grant, pool, "grant_patent")
        if rng.random() < cfg.base_clinical_rate:
            links += _attach_outcomes(rng, grant, trial_list, "grant_clinical")
    return links


def _attach_outcomes(rng, grant, pool, link_type):
    # Prefer documents dated at or after the grant start so realized time
    # lags stay non-negative; fall back to the whole pool to keep planted
    # guarantees (>=1 link) intact.
    later = [d for d in pool if d.year >= grant.start_year] or pool
    n = min(1 + int(rng.poisson(0.5)), len(later))
    chosen = rng.choice(len(later), size=n, replace=False)
    return [
        CitationLink(grant.grant_id, later[j].doc_id, link_type)
        for j in sorted(chosen)
    ]


def _broad_links(rng, cfg, papers, docs, link_type):
    paper_list = sorted(papers.values(), key=lambda p: p.paper_id)
    links = []
    for doc in docs.values():
        eligible = [p for p in paper_list if p.publication_year <= doc.year]
        if not eligible:
            continue
        n = min(int(rng.poisson(cfg.broad_citers_per_doc)), len(eligible))
        if n == 0:
            continue
        chosen = rng.choice(len(eligible), size=n, replace=False)
        for j in sorted(chosen):
            links.append(CitationLink(eligible[j].paper_id, doc.doc_id, link_type))
    return links
