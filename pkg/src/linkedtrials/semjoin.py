"""Thesaurus-backed semantic matching.

A thesaurus is a table of ``(src, tgt, rel)`` rows: ``src`` is a concept
id, ``tgt`` a term.  Rows with ``rel == "synonym"`` put the term in the
concept's synonym ring.  Any other row ``(A, term, rel)`` is an edge from
concept A to every concept whose ring contains ``term``; these edges are
what :func:`relation_closure` walks.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .entity_model import EntitySet, normalize_name
from .errors import DataError, InvalidArgumentError

logger = logging.getLogger(__name__)

SYNONYM = "synonym"


@dataclass(frozen=True)
class Thesaurus:
    entries: tuple[tuple[str, str, str], ...] = ()
    # normalized term -> concept ids (synonym rows only)
    index: dict = field(init=False, repr=False, compare=False)
    # concept id -> normalized terms (synonym rows only)
    concept_index: dict = field(init=False, repr=False, compare=False)
    # (rel, concept id) -> normalized target terms of non-synonym rows
    relations: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        seen = set()
        entries = []
        for src, tgt, *rest in self.entries:
            rel = rest[0] if rest and rest[0] else SYNONYM
            key = (src, tgt, rel)
            if key not in seen:
                seen.add(key)
                entries.append(key)
        object.__setattr__(self, "entries", tuple(entries))

        index = defaultdict(set)
        concept_index = defaultdict(set)
        relations = defaultdict(set)
        for src, tgt, rel in entries:
            term = normalize_name(tgt)
            if rel == SYNONYM:
                index[term].add(src)
                concept_index[src].add(term)
            else:
                relations[(rel, src)].add(term)
        object.__setattr__(self, "index", dict(index))
        object.__setattr__(self, "concept_index", dict(concept_index))
        object.__setattr__(self, "relations", dict(relations))

    def __len__(self):
        return len(self.entries)

    @property
    def concepts(self):
        return set(self.concept_index)

    @classmethod
    def from_rows(cls, rows: Iterable) -> "Thesaurus":
        return cls(tuple(tuple(r) for r in rows))


def load_thesaurus(path) -> Thesaurus:
    """Read a ``src<TAB>tgt[<TAB>rel]`` file; ``#`` lines are comments."""
    path = Path(path)
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = [f.strip() for f in line.split("\t")]
            if len(fields) < 2 or not fields[0] or not fields[1]:
                raise DataError("expected src<TAB>tgt[<TAB>rel]", path=str(path),
                                line=lineno)
            if len(fields) > 3:
                raise DataError(f"too many fields ({len(fields)})", path=str(path),
                                line=lineno)
            rows.append((fields[0], fields[1], fields[2] if len(fields) == 3 else SYNONYM))
    th = Thesaurus.from_rows(rows)
    logger.info("loaded thesaurus %s: %d entries, %d concepts", path, len(th),
                len(th.concept_index))
    return th


def concepts_of(term: str, th: Thesaurus) -> frozenset:
    return frozenset(th.index.get(normalize_name(term), ()))


def _reachable_concepts(start, th, rel, depth):
    seen = set(start)
    frontier = set(start)
    for _ in range(depth):
        nxt = set()
        for concept in frontier:
            for term in th.relations.get((rel, concept), ()):
                nxt.update(th.index.get(term, ()))
        frontier = nxt - seen
        if not frontier:
            break
        seen |= frontier
    return seen


def relation_closure(term: str, th: Thesaurus, rel: str = SYNONYM,
                     depth: int = 0) -> set:
    """Terms related to ``term`` within ``depth`` ``rel``-typed hops.

    Depth 0 is the synonym ring of the term's concepts.  Each further hop
    follows ``rel`` edges from concept to concept.  Returned terms are
    normalized; the input term itself is excluded.
    """
    if depth < 0:
        raise InvalidArgumentError(f"depth must be >= 0, got {depth}")
    norm = normalize_name(term)
    start = th.index.get(norm, ())
    concepts = _reachable_concepts(start, th, rel, depth) if rel != SYNONYM else set(start)
    out = set()
    for c in concepts:
        out |= th.concept_index.get(c, set())
    out.discard(norm)
    return out


def semantic_join(base: EntitySet, target: EntitySet, th: Thesaurus,
                  rel: str = SYNONYM, depth: int = 0) -> list[tuple[str, str]]:
    """Distinct ``(base_id, target_id)`` pairs linked through the thesaurus.

    With the defaults a pair matches when both names share a concept.
    Otherwise the base name's concepts are first expanded along ``rel``
    edges up to ``depth`` hops.
    """
    if depth < 0:
        raise InvalidArgumentError(f"depth must be >= 0, got {depth}")
    by_concept = defaultdict(set)
    for rec in target:
        for c in concepts_of(rec.match_field, th):
            by_concept[c].add(rec.id)
    if not by_concept:
        return []

    pairs = set()
    expand = rel != SYNONYM and depth > 0
    for rec in base:
        start = concepts_of(rec.match_field, th)
        if not start:
            continue
        concepts = _reachable_concepts(start, th, rel, depth) if expand else start
        for c in concepts:
            for tid in by_concept.get(c, ()):
                pairs.add((rec.id, tid))
    return sorted(pairs)
