"""Minimal N-Triples writer and reader.

Only IRIs and plain (untyped, untagged) literals are produced, so the
reader accepts exactly that subset.  Output is UTF-8 with non-ASCII
characters written as-is, which N-Triples 1.1 permits.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, TextIO

from .entity_model import Triple, Uri
from .errors import DataError

_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}
_UNESCAPES = {"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t",
              "b": "\b", "f": "\f", "'": "'"}

_LINE_RE = re.compile(
    r'^<([^>\s]*)>\s+<([^>\s]*)>\s+(?:<([^>\s]*)>|"((?:[^"\\]|\\.)*)")\s*\.\s*$'
)
_UESC_RE = re.compile(r"\\(u[0-9A-Fa-f]{4}|U[0-9A-Fa-f]{8}|.)")


def _escape_char(ch):
    esc = _ESCAPES.get(ch)
    if esc is not None:
        return esc
    # other control and line-separator characters as \uXXXX, so a
    # literal never breaks a line for any line splitter
    if ord(ch) < 0x20 or ch in "\x7f\x85\u2028\u2029":
        return f"\\u{ord(ch):04X}"
    return ch


def escape_literal(text: str) -> str:
    return "".join(_escape_char(ch) for ch in text)


def _unescape(text: str, lineno: int) -> str:
    def repl(m):
        esc = m.group(1)
        if esc[0] in "uU" and len(esc) > 1:
            return chr(int(esc[1:], 16))
        try:
            return _UNESCAPES[esc]
        except KeyError:
            raise DataError(f"bad escape sequence \\{esc}", line=lineno) from None

    return _UESC_RE.sub(repl, text)


def format_triple(triple: Triple) -> str:
    obj = triple.object
    if isinstance(obj, Uri):
        o = f"<{obj.value}>"
    else:
        o = f'"{escape_literal(obj)}"'
    return f"<{triple.subject.value}> <{triple.predicate.value}> {o} ."


def serialize(triples: Iterable[Triple]) -> str:
    """Render triples as N-Triples text, one per line, lines sorted.

    Duplicate triples collapse, since an RDF graph is a set.
    """
    lines = sorted({format_triple(t) for t in triples})
    return "".join(line + "\n" for line in lines)


def write(triples: Iterable[Triple], fh: TextIO) -> int:
    text = serialize(triples)
    fh.write(text)
    return text.count("\n")


def parse_line(line: str, lineno: int = 0) -> Triple:
    m = _LINE_RE.match(line)
    if m is None:
        raise DataError(f"not an N-Triples statement: {line!r}", line=lineno)
    s, p, o_iri, o_lit = m.groups()
    try:
        obj = Uri(o_iri) if o_iri is not None else _unescape(o_lit, lineno)
        return Triple(Uri(s), Uri(p), obj)
    except ValueError as exc:
        raise DataError(str(exc), line=lineno) from exc


def parse(text: str) -> Iterator[Triple]:
    for lineno, line in enumerate(text.split("\n"), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield parse_line(stripped, lineno)
