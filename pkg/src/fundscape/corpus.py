"""Corpus snapshots: NDJSON ingestion, indexing, queries, and traversals.

A :class:`CorpusSnapshot` is immutable once built. Ingestion validates every
record, drops out-of-window documents together with their links, drops
dangling links with a counted warning, and hard-fails on duplicate ids.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .errors import IngestError, UnknownEntityError, UnsupportedCombinationError, ValidationError
from .records import (
    DOC_TYPES,
    LINK_ENDPOINTS,
    CitationLink,
    GrantRecord,
    ImpactDocRecord,
    PaperRecord,
    ResearcherRecord,
    YearWindow,
    record_year,
)

ENTITY_FILES = {
    "grants.ndjson": "grant",
    "papers.ndjson": "paper",
    "patents.ndjson": "patent",
    "clinical_trials.ndjson": "clinical_trial",
    "policies.ndjson": "policy",
    "newsfeeds.ndjson": "newsfeed",
    "researchers.ndjson": "researcher",
}

#: Direct outcomes cite the grant itself; broader impacts cite a funded paper.
DIRECT_LINKS = {
    "paper": "grant_paper",
    "patent": "grant_patent",
    "clinical_trial": "grant_clinical",
}
BROAD_LINKS = {
    "patent": "paper_patent",
    "clinical_trial": "paper_clinical",
    "policy": "paper_policy",
    "newsfeed": "paper_newsfeed",
}


@dataclass
class IngestReport:
    loaded: dict = field(default_factory=dict)
    dropped_out_of_window: dict = field(default_factory=dict)
    dropped_dangling_links: int = 0
    dropped_duplicate_links: int = 0
    warnings: list = field(default_factory=list)

    @property
    def warning_count(self) -> int:
        return len(self.warnings)


class CorpusSnapshot:
    """Indexed, referentially-closed view of one ecosystem corpus.

    All collections are keyed by id; links are indexed both ways per type.
    Instances are never mutated after construction; analysis layers may use
    :attr:`cache` to memoize per-snapshot derived results.
    """

    def __init__(self, grants, papers, docs, researchers, links, window,
                 report=None):
        self.grants: dict[str, GrantRecord] = dict(grants)
        self.papers: dict[str, PaperRecord] = dict(papers)
        self.docs: dict[str, ImpactDocRecord] = dict(docs)
        self.researchers: dict[str, ResearcherRecord] = dict(researchers)
        self.window: YearWindow = window
        self.report: IngestReport | None = report
        self.cache: dict = {}

        self.links_by_type: dict[str, tuple[CitationLink, ...]] = {
            lt: () for lt in LINK_ENDPOINTS
        }
        grouped: dict[str, list[CitationLink]] = {lt: [] for lt in LINK_ENDPOINTS}
        for link in links:
            grouped[link.link_type].append(link)
        self._out: dict[str, dict[str, list[str]]] = {}
        self._in: dict[str, dict[str, list[str]]] = {}
        for lt, group in grouped.items():
            group.sort(key=lambda l: (l.source_id, l.target_id))
            self.links_by_type[lt] = tuple(group)
            out_idx: dict[str, list[str]] = {}
            in_idx: dict[str, list[str]] = {}
            for link in group:
                self._check_endpoint(link, lt)
                out_idx.setdefault(link.source_id, []).append(link.target_id)
                in_idx.setdefault(link.target_id, []).append(link.source_id)
            self._out[lt] = out_idx
            self._in[lt] = in_idx
        self.snapshot_id = self._content_hash()

    # -- construction helpers -------------------------------------------------

    def _check_endpoint(self, link: CitationLink, link_type: str):
        src_kind, tgt_kind = LINK_ENDPOINTS[link_type]
        if not self._resolves(link.source_id, src_kind):
            raise ValidationError(
                f"{link_type} link source {link.source_id!r} does not resolve"
            )
        if not self._resolves(link.target_id, tgt_kind):
            raise ValidationError(
                f"{link_type} link target {link.target_id!r} does not resolve"
            )

    def _resolves(self, entity_id: str, kind: str) -> bool:
        if kind == "grant":
            return entity_id in self.grants
        if kind == "paper":
            return entity_id in self.papers
        if kind == "researcher":
            return entity_id in self.researchers
        doc = self.docs.get(entity_id)
        return doc is not None and doc.doc_type == kind

    def _content_hash(self) -> str:
        digest = hashlib.sha256()
        for chunk in _canonical_chunks(self):
            digest.update(chunk.encode("utf-8"))
        return digest.hexdigest()[:16]

    # -- link traversal -------------------------------------------------------

    def out_links(self, link_type: str, source_id: str) -> list[str]:
        return self._out[link_type].get(source_id, [])

    def in_links(self, link_type: str, target_id: str) -> list[str]:
        return self._in[link_type].get(target_id, [])

    def funded_papers(self, grant_id: str) -> list[str]:
        return self.out_links("grant_paper", grant_id)

    def docs_of_type(self, doc_type: str) -> list[ImpactDocRecord]:
        return [d for d in self.docs.values() if d.doc_type == doc_type]

    # -- dunder ---------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, CorpusSnapshot):
            return NotImplemented
        return (
            self.grants == other.grants
            and self.papers == other.papers
            and self.docs == other.docs
            and self.researchers == other.researchers
            and self.links_by_type == other.links_by_type
            and self.window == other.window
        )

    def __repr__(self):
        n_links = sum(len(v) for v in self.links_by_type.values())
        return (
            f"CorpusSnapshot({len(self.grants)} grants, {len(self.papers)} papers, "
            f"{len(self.docs)} impact docs, {len(self.researchers)} researchers, "
            f"{n_links} links, window {self.window.year_min}-{self.window.year_max})"
        )


# -- parsing ------------------------------------------------------------------

def _require(obj: dict, key: str, path, line):
    if key not in obj:
        raise IngestError("missing required field", path=path, line=line, field=key)
    return obj[key]


def _parse_grant(obj, path, line):
    return GrantRecord(
        grant_id=_require(obj, "grant_id", path, line),
        title=_require(obj, "title", path, line),
        abstract=obj.get("abstract", ""),
        funding_amount=float(_require(obj, "funding_amount", path, line)),
        funder_org=_require(obj, "funder_org", path, line),
        research_orgs=tuple(obj.get("research_orgs", ())),
        grant_start_date=_require(obj, "grant_start_date", path, line),
        grant_end_date=_require(obj, "grant_end_date", path, line),
        investigator_ids=tuple(obj.get("investigator_ids", ())),
        field_path=tuple(_require(obj, "field_path", path, line)),
    )


def _parse_paper(obj, path, line):
    return PaperRecord(
        paper_id=_require(obj, "paper_id", path, line),
        title=_require(obj, "title", path, line),
        publication_year=int(_require(obj, "publication_year", path, line)),
        field_path=tuple(_require(obj, "field_path", path, line)),
        citation_count=int(_require(obj, "citation_count", path, line)),
        c10=int(_require(obj, "c10", path, line)),
        author_ids=tuple(obj.get("author_ids", ())),
    )


def _parse_doc(doc_type):
    def parse(obj, path, line):
        return ImpactDocRecord(
            doc_id=_require(obj, "doc_id", path, line),
            doc_type=doc_type,
            title=_require(obj, "title", path, line),
            year=int(_require(obj, "year", path, line)),
            topic_path=tuple(obj.get("topic_path") or ()),
            attributes=dict(obj.get("attributes", {})),
        )

    return parse


def _parse_researcher(obj, path, line):
    return ResearcherRecord(
        researcher_id=_require(obj, "researcher_id", path, line),
        name=_require(obj, "name", path, line),
        gender=obj.get("gender"),
        first_pub_year=obj.get("first_pub_year"),
        research_orgs=tuple(obj.get("research_orgs", ())),
    )


_PARSERS = {
    "grant": _parse_grant,
    "paper": _parse_paper,
    "patent": _parse_doc("patent"),
    "clinical_trial": _parse_doc("clinical_trial"),
    "policy": _parse_doc("policy"),
    "newsfeed": _parse_doc("newsfeed"),
    "researcher": _parse_researcher,
}


def _iter_ndjson(path):
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            raw = raw.strip()
            if not raw:
                continue
            try:
                obj = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise IngestError(f"invalid JSON ({exc.msg})", path=path, line=line_no)
            if not isinstance(obj, dict):
                raise IngestError("record is not a JSON object", path=path, line=line_no)
            yield line_no, obj


def _record_id(record) -> str:
    for attr in ("grant_id", "paper_id", "doc_id", "researcher_id"):
        if hasattr(record, attr):
            return getattr(record, attr)
    raise AttributeError(f"record without id: {record!r}")


def ingest_corpus(entity_files, link_files, window) -> CorpusSnapshot:
    """Load a corpus from NDJSON files into a referentially-closed snapshot.

    Out-of-window records are dropped (counted in the report) together with
    any link touching them. Dangling links are dropped with a warning; a
    duplicate entity id anywhere is a hard error.
    """
    if not isinstance(window, YearWindow):
        window = YearWindow(*window)

    grants: dict[str, GrantRecord] = {}
    papers: dict[str, PaperRecord] = {}
    docs: dict[str, ImpactDocRecord] = {}
    researchers: dict[str, ResearcherRecord] = {}
    by_kind = {"grant": grants, "paper": papers, "researcher": researchers}
    report = IngestReport(
        loaded=Counter(), dropped_out_of_window=Counter()
    )

    for path in entity_files:
        path = Path(path)
        kind = ENTITY_FILES.get(path.name)
        if kind is None:
            raise IngestError("unrecognized entity file name", path=path)
        parser = _PARSERS[kind]
        target = docs if kind in DOC_TYPES else by_kind[kind]
        for line_no, obj in _iter_ndjson(path):
            try:
                record = parser(obj, path, line_no)
            except IngestError:
                raise
            except (ValidationError, TypeError, ValueError) as exc:
                raise IngestError(str(exc), path=path, line=line_no) from exc
            year = record_year(record)
            if year is not None and year not in window:
                report.dropped_out_of_window[kind] += 1
                continue
            rid = _record_id(record)
            if rid in grants or rid in papers or rid in docs or rid in researchers:
                raise IngestError(f"duplicate id {rid!r}", path=path, line=line_no)
            target[rid] = record
            report.loaded[kind] += 1

    # Links resolve against the post-window-filter collections, so a link to a
    # dropped record counts as dangling.
    probe = CorpusSnapshot(grants, papers, docs, researchers, (), window)
    links: list[CitationLink] = []
    seen: set[tuple[str, str, str]] = set()
    for path in link_files:
        path = Path(path)
        link_type = _link_type_from_name(path)
        src_kind, tgt_kind = LINK_ENDPOINTS[link_type]
        for line_no, obj in _iter_ndjson(path):
            source = _require(obj, "source_id", path, line_no)
            target_id = _require(obj, "target_id", path, line_no)
            if not probe._resolves(source, src_kind) or not probe._resolves(
                target_id, tgt_kind
            ):
                report.dropped_dangling_links += 1
                report.warnings.append(
                    f"{path.name}:{line_no}: dangling {link_type} link "
                    f"{source} -> {target_id}, dropped"
                )
                continue
            key = (source, target_id, link_type)
            if key in seen:
                report.dropped_duplicate_links += 1
                report.warnings.append(
                    f"{path.name}:{line_no}: duplicate {link_type} link "
                    f"{source} -> {target_id}, dropped"
                )
                continue
            seen.add(key)
            links.append(CitationLink(source, target_id, link_type))

    report.loaded = dict(report.loaded)
    report.dropped_out_of_window = dict(report.dropped_out_of_window)
    return CorpusSnapshot(grants, papers, docs, researchers, links, window, report)


def _link_type_from_name(path: Path) -> str:
    stem = path.name
    if not (stem.startswith("links_") and stem.endswith(".ndjson")):
        raise IngestError("link files must be named links_<link_type>.ndjson", path=path)
    link_type = stem[len("links_"):-len(".ndjson")]
    if link_type not in LINK_ENDPOINTS:
        raise IngestError(f"unknown link_type {link_type!r}", path=path)
    return link_type


def ingest_dir(directory, window) -> CorpusSnapshot:
    """Ingest every recognized NDJSON file in a directory."""
    directory = Path(directory)
    entity_files = sorted(
        p for p in directory.glob("*.ndjson") if p.name in ENTITY_FILES
    )
    link_files = sorted(p for p in directory.glob("links_*.ndjson"))
    if not entity_files:
        raise IngestError("no entity files found", path=directory)
    return ingest_corpus(entity_files, link_files, window)


# -- queries ------------------------------------------------------------------

def query_grants(corpus: CorpusSnapshot, funder_org=None, year_range=None,
                 amount_range=None, field_prefix=None) -> list[GrantRecord]:
    """Grants satisfying the conjunction of all supplied predicates.

    ``year_range``/``amount_range`` are inclusive ``(lo, hi)`` pairs (either
    side may be None); years refer to the grant start year. An empty filter
    returns every grant.
    """
    year_range = _check_range(year_range, "year_range")
    amount_range = _check_range(amount_range, "amount_range")
    if field_prefix is not None:
        field_prefix = tuple(field_prefix)

    selected = []
    for grant in corpus.grants.values():
        if funder_org is not None and grant.funder_org != funder_org:
            continue
        if year_range is not None and not _in_range(grant.start_year, year_range):
            continue
        if amount_range is not None and not _in_range(
            grant.funding_amount, amount_range
        ):
            continue
        if field_prefix is not None and grant.field_path[: len(field_prefix)] != field_prefix:
            continue
        selected.append(grant)
    selected.sort(key=lambda g: g.grant_id)
    return selected


def _check_range(rng, name):
    if rng is None:
        return None
    lo, hi = rng
    if lo is not None and hi is not None and lo > hi:
        raise ValidationError(f"inverted {name}: {lo} > {hi}")
    return (lo, hi)


def _in_range(value, rng):
    lo, hi = rng
    return (lo is None or value >= lo) and (hi is None or value <= hi)


def linked_documents(corpus: CorpusSnapshot, grants, doc_type: str,
                     mode: str, dedup: bool = False) -> list:
    """Documents linked to a grant set, as a multiset of citation pairs.

    ``direct`` follows grant->document links; ``broad`` follows
    grant->paper->document chains, one element per qualifying pair. With
    ``dedup`` each distinct document appears once regardless of how many
    pairs reach it.
    """
    grant_ids = sorted(g if isinstance(g, str) else g.grant_id for g in grants)
    for gid in grant_ids:
        if gid not in corpus.grants:
            raise UnknownEntityError(f"unknown grant id {gid!r}")

    if mode == "direct":
        link_type = DIRECT_LINKS.get(doc_type)
        if link_type is None:
            raise UnsupportedCombinationError(
                f"no direct grant links exist for doc_type {doc_type!r}"
            )
        hits = [
            tgt for gid in grant_ids for tgt in corpus.out_links(link_type, gid)
        ]
    elif mode == "broad":
        link_type = BROAD_LINKS.get(doc_type)
        if link_type is None:
            raise UnsupportedCombinationError(
                f"no paper-mediated links exist for doc_type {doc_type!r}"
            )
        hits = [
            tgt
            for gid in grant_ids
            for pid in corpus.funded_papers(gid)
            for tgt in corpus.out_links(link_type, pid)
        ]
    else:
        raise ValidationError(f"mode must be 'direct' or 'broad', got {mode!r}")

    if dedup:
        hits = sorted(set(hits))
    lookup = corpus.papers if doc_type == "paper" else corpus.docs
    return [lookup[h] for h in hits]


# -- serialization ------------------------------------------------------------

def _grant_obj(g: GrantRecord) -> dict:
    return {
        "grant_id": g.grant_id,
        "title": g.title,
        "abstract": g.abstract,
        "funding_amount": g.funding_amount,
        "funder_org": g.funder_org,
        "research_orgs": list(g.research_orgs),
        "grant_start_date": g.grant_start_date.isoformat(),
        "grant_end_date": g.grant_end_date.isoformat(),
        "investigator_ids": list(g.investigator_ids),
        "field_path": list(g.field_path),
    }


def _paper_obj(p: PaperRecord) -> dict:
    return {
        "paper_id": p.paper_id,
        "title": p.title,
        "publication_year": p.publication_year,
        "field_path": list(p.field_path),
        "citation_count": p.citation_count,
        "c10": p.c10,
        "author_ids": list(p.author_ids),
    }


def _doc_obj(d: ImpactDocRecord) -> dict:
    return {
        "doc_id": d.doc_id,
        "title": d.title,
        "year": d.year,
        "topic_path": list(d.topic_path) if d.topic_path else None,
        "attributes": dict(sorted(d.attributes.items())),
    }


def _researcher_obj(r: ResearcherRecord) -> dict:
    return {
        "researcher_id": r.researcher_id,
        "name": r.name,
        "gender": r.gender,
        "first_pub_year": r.first_pub_year,
        "research_orgs": list(r.research_orgs),
    }


_DOC_FILE = {
    "patent": "patents.ndjson",
    "clinical_trial": "clinical_trials.ndjson",
    "policy": "policies.ndjson",
    "newsfeed": "newsfeeds.ndjson",
}


def _canonical_chunks(corpus: CorpusSnapshot):
    """Deterministic line stream covering the full corpus content."""
    yield f"window\t{corpus.window.year_min}\t{corpus.window.year_max}\n"
    for gid in sorted(corpus.grants):
        yield json.dumps(_grant_obj(corpus.grants[gid]), sort_keys=True) + "\n"
    for pid in sorted(corpus.papers):
        yield json.dumps(_paper_obj(corpus.papers[pid]), sort_keys=True) + "\n"
    for did in sorted(corpus.docs):
        doc = corpus.docs[did]
        yield json.dumps({"doc_type": doc.doc_type, **_doc_obj(doc)}, sort_keys=True) + "\n"
    for rid in sorted(corpus.researchers):
        yield json.dumps(_researcher_obj(corpus.researchers[rid]), sort_keys=True) + "\n"
    for lt in sorted(corpus.links_by_type):
        for link in corpus.links_by_type[lt]:
            yield f"{lt}\t{link.source_id}\t{link.target_id}\n"


def export_ndjson(corpus: CorpusSnapshot, directory) -> list[Path]:
    """Write the snapshot back out as the standard NDJSON file set.

    Output is sorted by id, so equal snapshots produce byte-identical files
    and re-ingesting an export reproduces an equal snapshot.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []

    def dump(name, objs):
        path = directory / name
        with open(path, "w", encoding="utf-8") as fh:
            for obj in objs:
                fh.write(json.dumps(obj, sort_keys=True) + "\n")
        written.append(path)

    dump("grants.ndjson", (_grant_obj(corpus.grants[g]) for g in sorted(corpus.grants)))
    dump("papers.ndjson", (_paper_obj(corpus.papers[p]) for p in sorted(corpus.papers)))
    for doc_type, name in _DOC_FILE.items():
        dump(
            name,
            (
                _doc_obj(corpus.docs[d])
                for d in sorted(corpus.docs)
                if corpus.docs[d].doc_type == doc_type
            ),
        )
    dump(
        "researchers.ndjson",
        (_researcher_obj(corpus.researchers[r]) for r in sorted(corpus.researchers)),
    )
    for lt, links in sorted(corpus.links_by_type.items()):
        dump(
            f"links_{lt}.ndjson",
            ({"source_id": l.source_id, "target_id": l.target_id} for l in links),
        )
    return written


def save_snapshot(corpus: CorpusSnapshot, path):
    """Persist the snapshot as a single JSON document."""
    payload = {
        "format": "fundscape-snapshot/1",
        "window": [corpus.window.year_min, corpus.window.year_max],
        "grants": [_grant_obj(corpus.grants[g]) for g in sorted(corpus.grants)],
        "papers": [_paper_obj(corpus.papers[p]) for p in sorted(corpus.papers)],
        "docs": [
            {"doc_type": corpus.docs[d].doc_type, **_doc_obj(corpus.docs[d])}
            for d in sorted(corpus.docs)
        ],
        "researchers": [
            _researcher_obj(corpus.researchers[r]) for r in sorted(corpus.researchers)
        ],
        "links": [
            {"source_id": l.source_id, "target_id": l.target_id, "link_type": lt}
            for lt in sorted(corpus.links_by_type)
            for l in corpus.links_by_type[lt]
        ],
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True)


def load_snapshot(path) -> CorpusSnapshot:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    if payload.get("format") != "fundscape-snapshot/1":
        raise ValidationError(f"{path}: not a fundscape snapshot file")
    grants = {}
    for obj in payload["grants"]:
        record = _parse_grant(obj, path, None)
        grants[record.grant_id] = record
    papers = {}
    for obj in payload["papers"]:
        record = _parse_paper(obj, path, None)
        papers[record.paper_id] = record
    docs = {}
    for obj in payload["docs"]:
        record = _PARSERS[obj["doc_type"]](obj, path, None)
        docs[record.doc_id] = record
    researchers = {}
    for obj in payload["researchers"]:
        record = _parse_researcher(obj, path, None)
        researchers[record.researcher_id] = record
    links = [
        CitationLink(o["source_id"], o["target_id"], o["link_type"])
        for o in payload["links"]
    ]
    return CorpusSnapshot(
        grants, papers, docs, researchers, links, YearWindow(*payload["window"])
    )
