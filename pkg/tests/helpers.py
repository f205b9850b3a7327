"""Handcrafted corpora and record factories shared across the suite.

The tiny corpus below is small enough to audit by hand; the comments pin
the numbers the metric tests assert. The RII corpus realizes exact
fractions (4/10 within the group, 20/100 globally).
"""

from __future__ import annotations

import datetime as dt

from fundscape.corpus import CorpusSnapshot
from fundscape.records import (
    CitationLink,
    GrantRecord,
    ImpactDocRecord,
    PaperRecord,
    ResearcherRecord,
    YearWindow,
)

import oracles

# -- record factories ----------------------------------------------------------

def make_grant(gid, field=("Computing", "Machine Learning"), year=2005,
               amount=100_000.0, funder="NSF-X", investigators=(),
               abstract="adaptive methods for structured data",
               duration=3):
    return GrantRecord(
        grant_id=gid,
        title=f"Grant {gid}",
        abstract=abstract,
        funding_amount=amount,
        funder_org=funder,
        research_orgs=("Lakeside University",),
        grant_start_date=dt.date(year, 1, 15),
        grant_end_date=dt.date(year + duration, 1, 14),
        investigator_ids=tuple(investigators),
        field_path=tuple(field),
    )


def make_paper(pid, field=("Computing", "Machine Learning"), year=2010,
               citations=10, c10=None, authors=(), title=None):
    return PaperRecord(
        paper_id=pid,
        title=title or f"Paper {pid}",
        publication_year=year,
        field_path=tuple(field),
        citation_count=citations,
        c10=citations // 2 if c10 is None else c10,
        author_ids=tuple(authors),
    )


_DOC_DEFAULTS = {
    "patent": {"assignee_org": "Summit Research Center"},
    "clinical_trial": {"phase": "Phase 2", "interventions": "device alpha"},
    "policy": {"source_type": "IGO", "source_title": "Global Health Brief",
               "source_country": "CH"},
    "newsfeed": {"outlet": "Daily Lens", "country": "US"},
}


def make_doc(did, doc_type, topic=("Physics", "Optics"), year=2012,
             **attributes):
    attrs = dict(_DOC_DEFAULTS[doc_type])
    attrs.update(attributes)
    return ImpactDocRecord(
        doc_id=did,
        doc_type=doc_type,
        title=f"{doc_type} {did}",
        year=year,
        topic_path=() if doc_type == "newsfeed" else tuple(topic),
        attributes=attrs,
    )


def make_researcher(rid, name=None, gender=None, first_pub_year=None):
    return ResearcherRecord(
        researcher_id=rid,
        name=name or f"Researcher {rid}",
        gender=gender,
        first_pub_year=first_pub_year,
    )


def link(source, target, link_type):
    return CitationLink(source, target, link_type)


def make_corpus(grants=(), papers=(), docs=(), researchers=(), links=(),
                window=(2000, 2021)):
    return CorpusSnapshot(
        grants={g.grant_id: g for g in grants},
        papers={p.paper_id: p for p in papers},
        docs={d.doc_id: d for d in docs},
        researchers={r.researcher_id: r for r in researchers},
        links=tuple(links),
        window=YearWindow(*window),
    )


# -- the hand-audited tiny corpus ------------------------------------------------

def make_tiny_corpus() -> CorpusSnapshot:
    """Four grants, eight papers, six impact docs, fully hand-checkable.

    Disruption of PF: citers PC1/PC3 touch no reference (n_i=2), PC2 also
    cites PR1 (n_j=1), PR2 is cited by no citer (n_k=1) -> D = 0.25.
    PH1 is the only hit paper (50 > q95 of its 2010 group [1, 10, 50]).
    Impact counts per grant:
      G1: 2 papers, 1 patent; broad 3 patent pairs (2 distinct), 1 policy,
          2 newsfeed.
      G2: 2 papers (1 hit), 1 trial; broad 1 clinical.
      G3: 1 paper; broad 1 newsfeed.
      G4: nothing.
    """
    researchers = [
        make_researcher("R1", "Ada Quill", "female", 2005),
        make_researcher("R2", "Bo Reyes", "male", 2010),
        make_researcher("R3", "Cy Tanaka"),
    ]
    ml = ("Computing", "Machine Learning")
    papers = [
        make_paper("PF", ml, 2008, citations=30, c10=12, authors=("R1",)),
        make_paper("PC1", ml, 2010, citations=10, c10=5, authors=("R1", "R2")),
        make_paper("PC2", ("Computing", "Data Systems"), 2011, citations=5,
                   c10=2, authors=("R2",)),
        make_paper("PC3", ml, 2012, citations=2, c10=1, authors=("R2",)),
        make_paper("PR1", ml, 2004, citations=40, c10=20, authors=("R1",)),
        make_paper("PR2", ("Biomedical", "Neuroscience"), 2003, citations=7,
                   c10=3, authors=("R1",)),
        make_paper("PH1", ("Computing", "Data Systems"), 2010, citations=50,
                   c10=25, authors=("R2",)),
        make_paper("PH2", ("Computing", "Visualization"), 2010, citations=1,
                   c10=0, authors=("R2",)),
    ]
    grants = [
        make_grant("G1", ml, 2004, 100_000.0, "NSF-X", ("R1",)),
        make_grant("G2", ("Computing", "Data Systems"), 2006, 200_000.0,
                   "NIH-Y", ("R2",)),
        make_grant("G3", ("Biomedical", "Neuroscience"), 2010, 50_000.0,
                   "NSF-X", ("R1", "R2")),
        make_grant("G4", ("Biomedical", "Immunology"), 2012, 75_000.0,
                   "Wellspring Trust", ("R3",)),
    ]
    docs = [
        make_doc("T1", "patent", ("Physics", "Computing Hardware"), 2012),
        make_doc("T2", "patent", ("Physics", "Optics"), 2014,
                 assignee_org="Coastal Polytechnic"),
        make_doc("C1", "clinical_trial", ("Neoplasms", "Leukemia"), 2013),
        make_doc("L1", "policy", ("Health Policy", "Public Health"), 2015),
        make_doc("N1", "newsfeed", year=2016),
        make_doc("N2", "newsfeed", year=2018, outlet="Morning Signal",
                 country="GB"),
    ]
    links = [
        link("G1", "PF", "grant_paper"),
        link("G1", "PC1", "grant_paper"),
        link("G2", "PC2", "grant_paper"),
        link("G2", "PH1", "grant_paper"),
        link("G3", "PC3", "grant_paper"),
        link("G1", "T1", "grant_patent"),
        link("G2", "C1", "grant_clinical"),
        link("PF", "PR1", "paper_paper"),
        link("PF", "PR2", "paper_paper"),
        link("PC1", "PF", "paper_paper"),
        link("PC2", "PF", "paper_paper"),
        link("PC2", "PR1", "paper_paper"),
        link("PC3", "PF", "paper_paper"),
        link("PF", "T1", "paper_patent"),
        link("PF", "T2", "paper_patent"),
        link("PC1", "T2", "paper_patent"),
        link("PC2", "C1", "paper_clinical"),
        link("PF", "L1", "paper_policy"),
        link("PC1", "N1", "paper_newsfeed"),
        link("PC1", "N2", "paper_newsfeed"),
        link("PC3", "N1", "paper_newsfeed"),
        link("G1", "R1", "grant_pi"),
        link("G2", "R2", "grant_pi"),
        link("G3", "R1", "grant_pi"),
        link("G3", "R2", "grant_pi"),
        link("G4", "R3", "grant_pi"),
        link("PF", "R1", "paper_author"),
        link("PC1", "R1", "paper_author"),
        link("PC1", "R2", "paper_author"),
        link("PC2", "R2", "paper_author"),
        link("PC3", "R2", "paper_author"),
        link("PR1", "R1", "paper_author"),
        link("PR2", "R1", "paper_author"),
        link("PH1", "R2", "paper_author"),
        link("PH2", "R2", "paper_author"),
    ]
    return make_corpus(grants, papers, docs, researchers, links)


def make_rii_corpus() -> CorpusSnapshot:
    """100 grants; 10 in field Alpha of which 4 hold patents; 16 of the 90
    Beta grants hold patents, so 20/100 globally. RII(Alpha, direct_patent)
    is exactly (4/10) / (20/100) = 2.0."""
    grants, docs, links = [], [], []
    patented = list(range(4)) + list(range(10, 26))
    for i in range(100):
        field = ("Alpha", "One") if i < 10 else ("Beta", "Two")
        gid = f"RG{i:03d}"
        grants.append(make_grant(gid, field, 2000 + i % 10))
        if i in patented:
            did = f"RP{i:03d}"
            docs.append(make_doc(did, "patent", year=2012))
            links.append(link(gid, did, "grant_patent"))
    return make_corpus(grants, docs=docs, links=links)


def make_labeled_corpus(n_pos=120, n_neg=200, lag=6,
                        pos_text="quantum sensor arrays for photonic readout",
                        neg_text="survey of archival lexicon curation methods",
                        window=(2000, 2021)) -> CorpusSnapshot:
    """Grants with/without patent outcomes in topic Physics, all starting
    early enough for the given lag; abstracts carry class-distinct
    vocabulary so a classifier has signal."""
    cutoff = window[1] - lag
    grants, docs, links = [], [], []
    for i in range(n_pos):
        gid = f"POS{i:04d}"
        year = window[0] + i % (cutoff - window[0] + 1)
        grants.append(make_grant(gid, ("Computing", "Machine Learning"),
                                 year, abstract=f"{pos_text} v{i}"))
        did = f"PAT{i:04d}"
        docs.append(make_doc(did, "patent", ("Physics", "Optics"),
                             year=min(year + 3, window[1])))
        links.append(link(gid, did, "grant_patent"))
    for i in range(n_neg):
        gid = f"NEG{i:04d}"
        year = window[0] + i % (cutoff - window[0] + 1)
        grants.append(make_grant(gid, ("Social Sciences", "Economics"),
                                 year, abstract=f"{neg_text} v{i}"))
    return make_corpus(grants, docs=docs, links=links, window=window)


# -- snapshot -> raw dicts for the oracles ------------------------------------------

_DOC_FILE = {"patent": "patents", "clinical_trial": "clinical_trials",
             "policy": "policies", "newsfeed": "newsfeeds"}


def snapshot_to_raw(corpus: CorpusSnapshot) -> dict:
    raw = {name: [] for name in oracles.ENTITY_NAMES}
    raw["links"] = {name: [] for name in oracles.LINK_NAMES}
    raw["grants"] = [
        {"grant_id": g.grant_id, "field_path": list(g.field_path),
         "start_year": g.start_year, "funder_org": g.funder_org,
         "funding_amount": g.funding_amount}
        for g in corpus.grants.values()
    ]
    raw["papers"] = [
        {"paper_id": p.paper_id, "field_path": list(p.field_path),
         "publication_year": p.publication_year,
         "citation_count": p.citation_count, "c10": p.c10}
        for p in corpus.papers.values()
    ]
    for doc in corpus.docs.values():
        raw[_DOC_FILE[doc.doc_type]].append(
            {"doc_id": doc.doc_id, "year": doc.year,
             "topic_path": list(doc.topic_path),
             "attributes": dict(doc.attributes)}
        )
    raw["researchers"] = [
        {"researcher_id": r.researcher_id} for r in corpus.researchers.values()
    ]
    for link_type, group in corpus.links_by_type.items():
        raw["links"][link_type] = [
            {"source_id": l.source_id, "target_id": l.target_id} for l in group
        ]
    return raw
