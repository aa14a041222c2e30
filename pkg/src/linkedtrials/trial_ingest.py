"""Clinical-trial XML to a normalized entity graph and RDF triples."""

from __future__ import annotations

import logging
import os
import xml.etree.ElementTree as ET
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional

from .entity_model import (
    FOAF_PAGE,
    RDF_TYPE,
    RDFS_LABEL,
    EntityRecord,
    EntitySet,
    Triple,
    Uri,
    mint_uri,
    normalize_name,
    slugify,
)
from .errors import DuplicateKeyError, SchemaError, XmlParseError

logger = logging.getLogger(__name__)

CLINICALTRIALS_PAGE = "https://clinicaltrials.gov/show/"

# Row order of the published entity inventory table.
ENTITY_TYPES = (
    "trial",
    "condition",
    "intervention",
    "location",
    "collaborator_agency",
    "overall_official",
    "primary_outcome",
    "reference",
    "criteria",
)
ENTITY_LABELS = {
    "trial": "Trials",
    "condition": "Condition",
    "intervention": "Intervention",
    "location": "Location",
    "collaborator_agency": "Collaborator Agency",
    "overall_official": "Overall Official",
    "primary_outcome": "Primary Outcomes",
    "reference": "Reference",
    "criteria": "Criteria",
}


@dataclass(frozen=True)
class Intervention:
    type: str
    name: str


@dataclass(frozen=True)
class Location:
    facility: str
    city: str
    country: str

    def label(self):
        return ", ".join(p for p in (self.facility, self.city, self.country) if p)


@dataclass(frozen=True)
class Reference:
    pmid: str
    citation: str

    def label(self):
        return self.pmid or self.citation


@dataclass(frozen=True)
class TrialDocument:
    nct_id: str
    brief_title: str = ""
    conditions: tuple[str, ...] = ()
    interventions: tuple[Intervention, ...] = ()
    locations: tuple[Location, ...] = ()
    references: tuple[Reference, ...] = ()
    criteria: str = ""
    collaborators: tuple[str, ...] = ()
    overall_official: Optional[str] = None
    primary_outcomes: tuple[str, ...] = ()


@dataclass
class EntityGraph:
    """Entity sets keyed by type plus ``(trial_id, relation, entity_id)`` edges."""

    sets: dict[str, EntitySet] = field(default_factory=dict)
    edges: list[tuple[str, str, str]] = field(default_factory=list)

    def __getitem__(self, entity_type):
        return self.sets[entity_type]

    def __eq__(self, other):
        if not isinstance(other, EntityGraph):
            return NotImplemented
        return self.sets == other.sets and self.edges == other.edges


def _text(el) -> str:
    if el is None:
        return ""
    return " ".join("".join(el.itertext()).split())


def parse_trial_xml(document, source=None) -> TrialDocument:
    """Parse one ``<clinical_study>`` document.

    ``document`` may be bytes, a str, or a binary file object.  ``source``
    is only used to label errors.
    """
    if hasattr(document, "read"):
        document = document.read()
    if isinstance(document, str):
        document = document.encode("utf-8")
    try:
        root = ET.fromstring(document)
    except ET.ParseError as exc:
        line, col = exc.position
        msg = str(exc).split(":")[0]
        raise XmlParseError(f"malformed XML: {msg}", path=source, line=line,
                            column=col) from exc
    if root.tag != "clinical_study":
        raise SchemaError(f"root element is <{root.tag}>, expected <clinical_study>",
                          path=source)
    nct_id = _text(root.find("nct_id"))
    if not nct_id:
        raise SchemaError("missing required element <nct_id>", path=source)

    official = root.find("overall_official")
    return TrialDocument(
        nct_id=nct_id,
        brief_title=_text(root.find("brief_title")),
        conditions=tuple(t for t in map(_text, root.findall("condition")) if t),
        interventions=tuple(
            Intervention(_text(el.find("type")), _text(el.find("name")))
            for el in root.findall("intervention")
            if _text(el.find("name"))
        ),
        locations=tuple(
            loc for loc in (
                Location(_text(el.find("facility")), _text(el.find("city")),
                         _text(el.find("country")))
                for el in root.findall("location")
            ) if loc.label()
        ),
        references=tuple(
            ref for ref in (
                Reference(_text(el.find("pmid")), _text(el.find("citation")))
                for el in root.findall("reference")
            ) if ref.label()
        ),
        criteria=_text(root.find("criteria")),
        collaborators=tuple(t for t in map(_text, root.findall("collaborator")) if t),
        overall_official=_text(official) or None,
        primary_outcomes=tuple(t for t in map(_text, root.findall("primary_outcome")) if t),
    )


def parse_trial_file(path) -> TrialDocument:
    path = Path(path)
    with open(path, "rb") as fh:
        return parse_trial_xml(fh.read(), source=str(path))


def read_corpus(directory, jobs: Optional[int] = None) -> list[TrialDocument]:
    """Parse every ``*.xml`` file of a directory, in file-name order."""
    paths = sorted(Path(directory).glob("*.xml"))
    jobs = jobs or os.cpu_count() or 1
    logger.info("parsing %d trial files with %d workers", len(paths), jobs)
    if jobs == 1 or len(paths) < 2:
        return [parse_trial_file(p) for p in paths]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        # map preserves input order, so output is independent of scheduling
        return list(pool.map(parse_trial_file, paths))


def _mentions(trial: TrialDocument) -> Iterator[tuple[str, str]]:
    """(entity_type, raw match field) for every non-trial entity a trial names."""
    for c in trial.conditions:
        yield "condition", c
    for iv in trial.interventions:
        yield "intervention", iv.name
    for loc in trial.locations:
        yield "location", loc.label()
    for c in trial.collaborators:
        yield "collaborator_agency", c
    if trial.overall_official:
        yield "overall_official", trial.overall_official
    for o in trial.primary_outcomes:
        yield "primary_outcome", o
    for ref in trial.references:
        yield "reference", ref.label()


def build_entity_graph(trials: Iterable[TrialDocument]) -> EntityGraph:
    """Deduplicate entities across trials and count trial occurrences.

    Entities of one type merge when their normalized match fields agree;
    the smallest raw spelling becomes the label, so input order never
    changes the output.  Criteria
    are kept as one entity per trial.  Record ids are slugs of the
    normalized name, suffixed ``_2``, ``_3``... when two names slug alike,
    so minted URIs never collide.
    """
    trials = list(trials)
    seen_ids = set()
    for t in trials:
        if t.nct_id in seen_ids:
            raise DuplicateKeyError(f"duplicate nct_id {t.nct_id!r}")
        seen_ids.add(t.nct_id)

    # type -> normalized key -> raw label
    labels: dict[str, dict[str, str]] = {et: {} for et in ENTITY_TYPES}
    # type -> normalized key -> set of trial ids
    referrers: dict[str, dict[str, set]] = {et: {} for et in ENTITY_TYPES}
    for t in trials:
        for et, raw in _mentions(t):
            key = normalize_name(raw)
            prev = labels[et].get(key)
            if prev is None or raw < prev:
                labels[et][key] = raw
            referrers[et].setdefault(key, set()).add(t.nct_id)

    sets = {}
    key_to_id: dict[str, dict[str, str]] = {}
    for et in ENTITY_TYPES:
        if et in ("trial", "criteria"):
            continue
        ids = {}
        used = set()
        records = []
        for key in sorted(labels[et]):
            base_id = slugify(key) or "entity"
            rid, n = base_id, 1
            while rid in used:
                n += 1
                rid = f"{base_id}_{n}"
            used.add(rid)
            ids[key] = rid
            records.append(EntityRecord(rid, labels[et][key], len(referrers[et][key])))
        key_to_id[et] = ids
        sets[et] = EntitySet(et, et, tuple(records))

    ordered_trials = sorted(trials, key=lambda t: (normalize_name(t.nct_id), t.nct_id))
    sets["trial"] = EntitySet("trial", "trial", tuple(
        EntityRecord(t.nct_id, t.brief_title or t.nct_id, 1) for t in ordered_trials
    ))
    sets["criteria"] = EntitySet("criteria", "criteria", tuple(
        EntityRecord(t.nct_id, t.criteria, 1)
        for t in sorted(ordered_trials, key=lambda t: (normalize_name(t.criteria), t.nct_id))
        if t.criteria
    ))

    edges = set()
    for t in trials:
        for et, raw in _mentions(t):
            edges.add((t.nct_id, et, key_to_id[et][normalize_name(raw)]))
        if t.criteria:
            edges.add((t.nct_id, "criteria", t.nct_id))

    return EntityGraph({et: sets[et] for et in ENTITY_TYPES}, sorted(edges))


def vocab_uri(base: str, name: str) -> Uri:
    return Uri(f"{base.rstrip('/')}/vocab/{name}")


def triplify(graph: EntityGraph, base: str) -> Iterator[Triple]:
    """Yield the RDF view of a graph.

    Per entity: one ``rdf:type`` and one ``rdfs:label`` triple.  Per edge:
    ``(trial, <base>/vocab/<relation>, entity)``.  Per trial: a
    ``foaf:page`` link to its registry page.
    """
    rdf_type = Uri(RDF_TYPE)
    label = Uri(RDFS_LABEL)
    for et, es in graph.sets.items():
        cls = vocab_uri(base, et)
        for rec in es.records:
            subj = mint_uri(base, et, rec.id)
            yield Triple(subj, rdf_type, cls)
            yield Triple(subj, label, rec.match_field)
    for trial_id, relation, entity_id in graph.edges:
        yield Triple(mint_uri(base, "trial", trial_id), vocab_uri(base, relation),
                     mint_uri(base, relation, entity_id))
    for rec in graph.sets.get("trial", ()):
        yield Triple(mint_uri(base, "trial", rec.id), FOAF_PAGE.predicate,
                     Uri(CLINICALTRIALS_PAGE + rec.id))


def entity_stats(graph: EntityGraph) -> list[tuple[str, int]]:
    """Per-type entity counts in inventory-table order, then ``("Total", sum)``."""
    rows = [(ENTITY_LABELS[et], len(graph.sets[et]) if et in graph.sets else 0)
            for et in ENTITY_TYPES]
    rows.append(("Total", sum(n for _, n in rows)))
    return rows
