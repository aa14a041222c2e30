"""Core value types: URIs, triples, entity records and links."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Union

from .errors import InvalidArgumentError

_SCHEME_RE = re.compile(r"^https?://\S+$")
# characters forbidden inside an N-Triples IRIREF besides whitespace
_IRI_FORBIDDEN = set('<>"{}|^`\\')
_SLUG_RE = re.compile(r"[\W_]+")
_WS_RE = re.compile(r"\s+")

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"

VOCABULARY = {
    "owl:sameAs": "http://www.w3.org/2002/07/owl#sameAs",
    "rdfs:seeAlso": "http://www.w3.org/2000/01/rdf-schema#seeAlso",
    "foaf:based_near": "http://xmlns.com/foaf/0.1/based_near",
    "foaf:page": "http://xmlns.com/foaf/0.1/page",
}


@dataclass(frozen=True, order=True)
class Uri:
    value: str

    def __post_init__(self):
        if not isinstance(self.value, str) or not _SCHEME_RE.match(self.value):
            raise InvalidArgumentError(f"not an absolute http(s) IRI: {self.value!r}")
        bad = _IRI_FORBIDDEN.intersection(self.value)
        if bad:
            raise InvalidArgumentError(
                f"IRI {self.value!r} contains forbidden characters {sorted(bad)}"
            )

    def __str__(self):
        return self.value


# A triple object is either a Uri or a plain literal (str).
Term = Union[Uri, str]


@dataclass(frozen=True)
class Triple:
    subject: Uri
    predicate: Uri
    object: Term

    def __post_init__(self):
        if not isinstance(self.subject, Uri) or not isinstance(self.predicate, Uri):
            raise InvalidArgumentError("triple subject and predicate must be Uri")
        if not isinstance(self.object, (Uri, str)):
            raise InvalidArgumentError(f"bad triple object {self.object!r}")


@dataclass(frozen=True)
class EntityRecord:
    id: str
    match_field: str
    occurrences: int = 1

    def __post_init__(self):
        if not self.id:
            raise InvalidArgumentError("entity id must be non-empty")
        if self.occurrences < 0:
            raise InvalidArgumentError(
                f"negative occurrences for entity {self.id!r}"
            )


@dataclass(frozen=True)
class EntitySet:
    name: str
    entity_type: str
    records: tuple[EntityRecord, ...] = ()
    _by_id: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.name:
            raise InvalidArgumentError("entity set name must be non-empty")
        records = tuple(self.records)
        object.__setattr__(self, "records", records)
        by_id = {}
        for rec in records:
            if rec.id in by_id:
                raise InvalidArgumentError(
                    f"duplicate record id {rec.id!r} in entity set {self.name!r}"
                )
            by_id[rec.id] = rec
        object.__setattr__(self, "_by_id", by_id)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __contains__(self, record_id):
        return record_id in self._by_id

    def get(self, record_id):
        return self._by_id[record_id]

    def occurrences(self):
        """Map of record id to occurrence count."""
        return {rec.id: rec.occurrences for rec in self.records}

    @classmethod
    def from_names(cls, name, entity_type, names: Iterable[str]):
        """Build a set with ids ``"0"``, ``"1"``, ... and unit occurrences."""
        recs = [EntityRecord(str(i), s) for i, s in enumerate(names)]
        return cls(name, entity_type, tuple(recs))


@dataclass(frozen=True)
class LinkType:
    predicate: Uri

    @classmethod
    def parse(cls, text: str) -> "LinkType":
        """Accept a known CURIE (``owl:sameAs``) or a full http(s) IRI."""
        text = text.strip()
        if text.startswith("<") and text.endswith(">"):
            text = text[1:-1]
        return cls(Uri(VOCABULARY.get(text, text)))


OWL_SAME_AS = LinkType(Uri(VOCABULARY["owl:sameAs"]))
RDFS_SEE_ALSO = LinkType(Uri(VOCABULARY["rdfs:seeAlso"]))
FOAF_BASED_NEAR = LinkType(Uri(VOCABULARY["foaf:based_near"]))
FOAF_PAGE = LinkType(Uri(VOCABULARY["foaf:page"]))


class MatchMethod(enum.Enum):
    EXACT = "Exact"
    STRING = "String"
    SEMANTIC = "Semantic"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Link:
    source_id: str
    target_id: str
    method: MatchMethod
    score: float
    link_type: LinkType

    def __post_init__(self):
        if not 0.0 <= self.score <= 1.0:
            raise InvalidArgumentError(f"link score {self.score} outside [0, 1]")
        if self.method is not MatchMethod.STRING and self.score != 1.0:
            raise InvalidArgumentError(f"{self.method} links must have score 1.0")


def normalize_name(text: str) -> str:
    """Lowercase, trim and collapse internal whitespace. Diacritics are kept."""
    return _WS_RE.sub(" ", text).strip().lower()


def slugify(key: str) -> str:
    return _SLUG_RE.sub("_", key.lower()).strip("_")


def mint_uri(base: str, entity_type: str, key: str) -> Uri:
    """Return ``<base>/<entity_type>/<slug(key)>``.

    >>> mint_uri("http://example.org/resource", "condition", "Alzheimer's Disease")
    Uri(value='http://example.org/resource/condition/alzheimer_s_disease')
    """
    if not entity_type or not entity_type.strip():
        raise InvalidArgumentError("entity_type must be non-empty")
    slug = slugify(key or "")
    if not slug:
        raise InvalidArgumentError(f"key {key!r} is empty after slugging")
    type_slug = slugify(entity_type)
    if not type_slug:
        raise InvalidArgumentError(f"entity_type {entity_type!r} is empty after slugging")
    return Uri(f"{base.rstrip('/')}/{type_slug}/{slug}")
