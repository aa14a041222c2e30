"""q-gram tokens, RSJ token weights and weighted Jaccard similarity."""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .errors import InvalidArgumentError

PAD = "$"
DEFAULT_Q = 2
_WS_RE = re.compile(r"\s+")


@dataclass(frozen=True)
class TokenSet:
    tokens: frozenset
    q: int = DEFAULT_Q

    def __len__(self):
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __contains__(self, token):
        return token in self.tokens


def tokenize(s: str, q: int = DEFAULT_Q) -> TokenSet:
    """Split ``s`` into its set of padded q-grams.

    The string is lowercased, underscores become spaces, whitespace runs
    collapse, and one space is added on each side.  Every space is then
    replaced by ``q - 1`` copies of ``$`` before the q-grams are cut.

    >>> sorted(tokenize("HIV", 2))
    ['$h', 'hi', 'iv', 'v$']
    """
    if q < 2:
        raise InvalidArgumentError(f"q must be >= 2, got {q}")
    text = _WS_RE.sub(" ", s.lower().replace("_", " ")).strip()
    padded = (" " + text + " ").replace(" ", PAD * (q - 1))
    grams = frozenset(padded[i:i + q] for i in range(len(padded) - q + 1))
    return TokenSet(grams, q)


def rsj_weight(n_docs: int, n_t: int) -> float:
    """Unclamped Robertson/Sparck Jones weight, natural log."""
    return math.log((n_docs - n_t + 0.5) / (n_t + 0.5))


@dataclass(frozen=True)
class WeightTable:
    """RSJ weights over a base relation of ``n_docs`` tuples.

    ``counts`` maps a token to the number of base tuples containing it.
    Tokens absent from the base weigh ``log((N + 0.5) / 0.5)``.  With
    ``clamp`` set, negative weights (tokens in more than about half the
    tuples) are floored to zero so similarities stay inside [0, 1].
    """

    n_docs: int
    counts: Mapping[str, int]
    q: int = DEFAULT_Q
    clamp: bool = True
    fixed_weight: Optional[float] = None
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n_docs < 1:
            raise InvalidArgumentError("weight table needs at least one base tuple")

    @classmethod
    def uniform(cls, q: int = DEFAULT_Q, weight: float = 1.0) -> "WeightTable":
        """Every token weighs ``weight``; reduces weighted to plain Jaccard."""
        return cls(1, {}, q, clamp=False, fixed_weight=weight)

    def n_t(self, token: str) -> int:
        return self.counts.get(token, 0)

    def weight(self, token: str) -> float:
        w = self._cache.get(token)
        if w is None:
            if self.fixed_weight is not None:
                return self.fixed_weight
            w = rsj_weight(self.n_docs, self.counts.get(token, 0))
            if self.clamp and w < 0.0:
                w = 0.0
            self._cache[token] = w
        return w

    __getitem__ = weight

    def total(self, tokens: Iterable[str]) -> float:
        return math.fsum(map(self.weight, tokens))


def build_weight_table(base_values: Iterable[str], q: int = DEFAULT_Q,
                       clamp: bool = True) -> WeightTable:
    """Count, for each q-gram, how many base strings contain it."""
    counts: Counter = Counter()
    n = 0
    for value in base_values:
        counts.update(tokenize(value, q).tokens)
        n += 1
    if n == 0:
        raise InvalidArgumentError("base_values must be non-empty")
    return WeightTable(n, dict(counts), q, clamp)


def weighted_jaccard(r1: TokenSet, r2: TokenSet, w: WeightTable) -> float:
    """Weight of shared tokens over weight of all tokens.

    When every token in the union weighs zero the ratio is undefined; it
    is then 1.0 for identical token sets and 0.0 otherwise.
    """
    if not r1.q == r2.q == w.q:
        raise InvalidArgumentError(
            f"q mismatch: token sets q={r1.q}, {r2.q}; weight table q={w.q}"
        )
    a, b = r1.tokens, r2.tokens
    union = w.total(a | b)
    if union <= 0.0:
        return 1.0 if a == b else 0.0
    inter = w.total(a & b)
    # fsum keeps inter <= union; min() guards the last ulp anyway
    return min(1.0, max(0.0, inter / union))


def similarity(s1: str, s2: str, w: WeightTable) -> float:
    """Convenience wrapper: tokenize both strings with ``w.q`` and compare."""
    return weighted_jaccard(tokenize(s1, w.q), tokenize(s2, w.q), w)


def jaccard(r1: TokenSet, r2: TokenSet) -> float:
    """Plain (unweighted) Jaccard coefficient."""
    union = r1.tokens | r2.tokens
    if not union:
        return 1.0
    return len(r1.tokens & r2.tokens) / len(union)
