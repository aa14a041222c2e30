"""Declarative link specifications, their execution, statistics and RDF output."""

from __future__ import annotations

import configparser
import csv
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Mapping, Optional, Union

from . import ntriples
from .entity_model import (
    EntityRecord,
    EntitySet,
    Link,
    LinkType,
    MatchMethod,
    Triple,
    Uri,
    mint_uri,
    normalize_name,
)
from .errors import ConfigError, DataError, InvalidArgumentError
from .qgram_sim import DEFAULT_Q, build_weight_table
from .semjoin import SYNONYM, Thesaurus, load_thesaurus, semantic_join
from .simjoin import indexed_join

logger = logging.getLogger(__name__)

METHOD_ORDER = (MatchMethod.EXACT, MatchMethod.STRING, MatchMethod.SEMANTIC)
OVERALL = "Overall"


@dataclass(frozen=True)
class ExactMatch:
    method = MatchMethod.EXACT


@dataclass(frozen=True)
class StringMatch:
    theta: float = 0.5
    q: int = DEFAULT_Q
    method = MatchMethod.STRING

    def __post_init__(self):
        if not 0.0 <= self.theta < 1.0:
            raise InvalidArgumentError(f"theta must lie in [0, 1), got {self.theta}")


@dataclass(frozen=True)
class SemanticMatch:
    thesaurus: Optional[Thesaurus] = None
    rel: str = SYNONYM
    depth: int = 0
    method = MatchMethod.SEMANTIC


MethodConfig = Union[ExactMatch, StringMatch, SemanticMatch]


@dataclass(frozen=True)
class LinkSpec:
    name: str
    source: EntitySet
    target: EntitySet
    methods: tuple
    link_type: LinkType
    base_uri_source: str = "http://example.org/resource"
    base_uri_target: str = "http://example.org/external"

    def __post_init__(self):
        if not self.methods:
            raise ConfigError(f"link spec {self.name!r} lists no methods")
        kinds = [m.method for m in self.methods]
        if len(set(kinds)) != len(kinds):
            raise ConfigError(f"link spec {self.name!r} repeats a method")


@dataclass(frozen=True)
class OverallLink:
    source_id: str
    target_id: str
    methods: frozenset


@dataclass
class LinkSet:
    spec_name: str
    partitions: dict = field(default_factory=dict)  # MatchMethod -> list[Link]

    @property
    def links(self) -> list[Link]:
        return [lk for m in METHOD_ORDER for lk in self.partitions.get(m, ())]

    def pairs(self, method: MatchMethod) -> list[tuple[str, str]]:
        return [(lk.source_id, lk.target_id) for lk in self.partitions.get(method, ())]

    @property
    def overall(self) -> list[OverallLink]:
        prov = defaultdict(set)
        for lk in self.links:
            prov[(lk.source_id, lk.target_id)].add(lk.method)
        return [OverallLink(s, t, frozenset(ms)) for (s, t), ms in sorted(prov.items())]


def exact_match(base: EntitySet, target: EntitySet) -> list[tuple[str, str]]:
    """Pairs whose normalized names are equal."""
    by_name = defaultdict(list)
    for rec in target:
        by_name[normalize_name(rec.match_field)].append(rec.id)
    pairs = {(rec.id, tid)
             for rec in base
             for tid in by_name.get(normalize_name(rec.match_field), ())}
    return sorted(pairs)


def run_linkspec(spec: LinkSpec) -> LinkSet:
    ls = LinkSet(spec.name)
    for m in spec.methods:
        if isinstance(m, ExactMatch):
            links = [Link(s, t, MatchMethod.EXACT, 1.0, spec.link_type)
                     for s, t in exact_match(spec.source, spec.target)]
        elif isinstance(m, StringMatch):
            if len(spec.source) == 0:
                links = []
            else:
                w = build_weight_table((r.match_field for r in spec.source), m.q)
                res = indexed_join(spec.source, spec.target, m.theta, w)
                links = [Link(s, t, MatchMethod.STRING, score, spec.link_type)
                         for s, t, score in res]
        elif isinstance(m, SemanticMatch):
            if m.thesaurus is None:
                raise ConfigError(f"link spec {spec.name!r}: semantic matching needs a thesaurus")
            links = [Link(s, t, MatchMethod.SEMANTIC, 1.0, spec.link_type)
                     for s, t in semantic_join(spec.source, spec.target, m.thesaurus,
                                               m.rel, m.depth)]
        else:
            raise ConfigError(f"unknown method {m!r}")
        logger.info("%s: %s found %d links", spec.name, m.method, len(links))
        ls.partitions[m.method] = links
    return ls


# -- statistics ------------------------------------------------------------

def diff_pct(count: int, exact_count: int) -> Optional[float]:
    """Percent change over the exact-match count, one decimal; None if undefined."""
    if exact_count == 0:
        return None
    return round(100.0 * (count - exact_count) / exact_count, 1)


@dataclass(frozen=True)
class MethodStats:
    link_count: int
    linked_entity_count: int
    link_diff_pct: Optional[float] = None
    entity_diff_pct: Optional[float] = None


@dataclass(frozen=True)
class StatsRow:
    """One row of a link statistics table; keys are method names plus ``Overall``."""

    spec_name: str
    columns: dict

    def __getitem__(self, key):
        if isinstance(key, MatchMethod):
            key = key.value
        return self.columns[key]

    @classmethod
    def from_counts(cls, spec_name: str, counts: Mapping) -> "StatsRow":
        """Build a row from ``{method: (link_count, linked_entity_count)}``."""
        norm = {(k.value if isinstance(k, MatchMethod) else k): v for k, v in counts.items()}
        exact = norm.get(MatchMethod.EXACT.value)
        columns = {}
        for key in [m.value for m in METHOD_ORDER] + [OVERALL]:
            if key not in norm:
                continue
            links, ents = norm[key]
            if exact is None or key == MatchMethod.EXACT.value:
                columns[key] = MethodStats(links, ents)
            else:
                columns[key] = MethodStats(links, ents, diff_pct(links, exact[0]),
                                           diff_pct(ents, exact[1]))
        return cls(spec_name, columns)


def compute_stats(ls: LinkSet, occurrences: Mapping[str, int]) -> StatsRow:
    """Link and linked-entity counts per method with occurrence fan-out.

    A matched source entity contributes its occurrence count (the number
    of trials referencing it) once per target it matches.
    """
    def tally(pairs):
        total = 0
        sources = set()
        for s, _t in pairs:
            try:
                total += occurrences[s]
            except KeyError:
                raise DataError(f"no occurrence count for source entity {s!r}") from None
            sources.add(s)
        return total, len(sources)

    counts = {m: tally(ls.pairs(m)) for m in METHOD_ORDER if m in ls.partitions}
    counts[OVERALL] = tally((o.source_id, o.target_id) for o in ls.overall)
    return StatsRow.from_counts(ls.spec_name, counts)


def _fmt_pct(v):
    return "" if v is None else f"{v:+.1f}%"


STATS_HEADER = ("spec", "method", "link_count", "link_diff_pct",
                "linked_entity_count", "linked_entity_diff_pct")


def format_stats(rows) -> str:
    lines = ["\t".join(STATS_HEADER)]
    for row in rows:
        for method, st in row.columns.items():
            lines.append("\t".join((row.spec_name, method, str(st.link_count),
                                    _fmt_pct(st.link_diff_pct), str(st.linked_entity_count),
                                    _fmt_pct(st.entity_diff_pct))))
    return "\n".join(lines) + "\n"


# -- RDF output ------------------------------------------------------------

def emit_links(ls: LinkSet, spec: LinkSpec) -> Iterator[Triple]:
    for o in ls.overall:
        yield Triple(mint_uri(spec.base_uri_source, spec.source.entity_type, o.source_id),
                     spec.link_type.predicate,
                     mint_uri(spec.base_uri_target, spec.target.entity_type, o.target_id))


# -- file formats ----------------------------------------------------------

def load_entity_csv(path, name=None, entity_type=None) -> EntitySet:
    """Read an ``id,name[,occurrences]`` CSV into an entity set."""
    path = Path(path)
    name = name or path.stem
    records = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        cols = reader.fieldnames or []
        if "id" not in cols or "name" not in cols:
            raise DataError("header must contain id,name[,occurrences]", path=str(path), line=1)
        seen = set()
        for row in reader:
            lineno = reader.line_num
            rid = (row.get("id") or "").strip()
            if not rid:
                raise DataError("empty id", path=str(path), line=lineno)
            if rid in seen:
                raise DataError(f"duplicate id {rid!r}", path=str(path), line=lineno)
            seen.add(rid)
            occ = (row.get("occurrences") or "").strip()
            try:
                occurrences = int(occ) if occ else 1
            except ValueError:
                raise DataError(f"bad occurrences value {occ!r}", path=str(path),
                                line=lineno) from None
            if occurrences < 0:
                raise DataError("occurrences must be >= 0", path=str(path), line=lineno)
            records.append(EntityRecord(rid, row.get("name") or "", occurrences))
    return EntitySet(name, entity_type or name, tuple(records))


def write_entity_csv(es: EntitySet, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["id", "name", "occurrences"])
        for rec in es:
            w.writerow([rec.id, rec.match_field, rec.occurrences])


def _parse_methods(section, text, cfg_dir, thesauri):
    methods = []
    for raw in text.split(","):
        kind = raw.strip().lower()
        if not kind:
            continue
        if kind == "exact":
            methods.append(ExactMatch())
        elif kind == "string":
            methods.append(StringMatch(section.getfloat("theta", 0.5),
                                       section.getint("q", DEFAULT_Q)))
        elif kind == "semantic":
            th = None
            th_path = section.get("thesaurus")
            if th_path:
                p = (cfg_dir / th_path).resolve()
                if p not in thesauri:
                    thesauri[p] = load_thesaurus(p)
                th = thesauri[p]
            methods.append(SemanticMatch(th, section.get("rel", SYNONYM),
                                         section.getint("depth", 0)))
        else:
            raise ConfigError(f"[{section.name}] unknown method {raw.strip()!r}")
    return tuple(methods)


def load_linkspecs(path) -> list[LinkSpec]:
    """Parse an INI-style link spec file; one ``[section]`` per spec.

    Relative paths resolve against the config file's directory.  See
    ``demos/data/specs.conf`` for a commented example.
    """
    path = Path(path)
    cp = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_file(fh)
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    cfg_dir = path.parent
    thesauri = {}
    specs = []
    for name in cp.sections():
        sec = cp[name]
        try:
            src_csv = sec["source_csv"]
            tgt_csv = sec["target_csv"]
        except KeyError as exc:
            raise ConfigError(f"{path}: [{name}] missing key {exc.args[0]}") from None
        source = load_entity_csv(cfg_dir / src_csv, sec.get("source_name"),
                                 sec.get("source_type"))
        target = load_entity_csv(cfg_dir / tgt_csv, sec.get("target_name"),
                                 sec.get("target_type"))
        try:
            methods = _parse_methods(sec, sec.get("methods", "exact, string, semantic"),
                                     cfg_dir, thesauri)
            link_type = LinkType.parse(sec.get("link_type", "owl:sameAs"))
            spec = LinkSpec(name, source, target, methods, link_type,
                            sec.get("base_uri_source", "http://example.org/resource"),
                            sec.get("base_uri_target", "http://example.org/external"))
            Uri(spec.base_uri_source.rstrip("/") + "/x")
            Uri(spec.base_uri_target.rstrip("/") + "/x")
        except (ValueError, InvalidArgumentError) as exc:
            raise ConfigError(f"{path}: [{name}] {exc}") from exc
        specs.append(spec)
    if not specs:
        raise ConfigError(f"{path}: no link specs defined")
    return specs


def run_all(specs) -> tuple[list[StatsRow], list[Triple]]:
    rows, triples = [], []
    for spec in specs:
        ls = run_linkspec(spec)
        rows.append(compute_stats(ls, spec.source.occurrences()))
        triples.extend(emit_links(ls, spec))
    return rows, triples


def serialize_links(triples) -> str:
    return ntriples.serialize(triples)
