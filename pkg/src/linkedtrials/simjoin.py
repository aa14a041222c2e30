"""Threshold joins on weighted Jaccard similarity.

``brute_force_join`` scores every pair and is the reference.
``indexed_join`` returns the same pairs with the same scores but only
scores pairs that survive two filters:

Prefix filter.  Weights are non-negative, so for a pair (r, s) the union
weight U is at least W(r), the total weight of r.  A qualifying pair has
shared weight I > theta * U >= theta * W(r).  Sort r's tokens by weight,
heaviest first, and cut the shortest prefix whose remaining suffix weighs
no more than theta * W(r).  A target that shares no prefix token has
I <= W(suffix) <= theta * W(r) and cannot qualify, so probing the
inverted index with prefix tokens alone never drops a result.

Size filter.  I <= min(W(r), W(s)) and U >= max(W(r), W(s)), hence the
score is bounded by min/max of the two totals; targets whose bound is at
most theta are skipped.

Both filters are applied with a 1e-9 relative slack so floating-point
rounding can only add candidates, never remove them.  A base record whose
weight is zero can only reach 1.0 against an identical token set (the
zero-denominator rule), so those are looked up by exact token set.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .entity_model import EntitySet
from .errors import InvalidArgumentError
from .qgram_sim import WeightTable, tokenize, weighted_jaccard

_SLACK = 1e-9


@dataclass(frozen=True)
class JoinResult:
    pairs: tuple[tuple[str, str, float], ...]
    theta: float

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def pair_set(self):
        return {(b, t) for b, t, _ in self.pairs}

    def to_tsv(self) -> str:
        return "".join(f"{b}\t{t}\t{s:.6f}\n" for b, t, s in self.pairs)


def _check_theta(theta):
    if not 0.0 <= theta < 1.0:
        raise InvalidArgumentError(f"theta must lie in [0, 1), got {theta}")


def _finish(pairs, theta):
    pairs.sort(key=lambda p: (p[0], p[1]))
    return JoinResult(tuple(pairs), theta)


def brute_force_join(base: EntitySet, target: EntitySet, theta: float,
                     w: WeightTable) -> JoinResult:
    """Score all |base| x |target| pairs and keep those scoring above theta."""
    _check_theta(theta)
    target_tokens = [(rec.id, tokenize(rec.match_field, w.q)) for rec in target]
    pairs = []
    for rec in base:
        r = tokenize(rec.match_field, w.q)
        for tid, s in target_tokens:
            score = weighted_jaccard(r, s, w)
            if score > theta:
                pairs.append((rec.id, tid, score))
    return _finish(pairs, theta)


def indexed_join(base: EntitySet, target: EntitySet, theta: float,
                 w: WeightTable) -> JoinResult:
    """Same result as :func:`brute_force_join`, via an inverted index."""
    _check_theta(theta)
    if len(target) == 0 or len(base) == 0:
        return JoinResult((), theta)

    t_ids = []
    t_sets = []
    t_weight = []
    index = defaultdict(list)
    by_tokens = defaultdict(list)
    for i, rec in enumerate(target):
        ts = tokenize(rec.match_field, w.q)
        t_ids.append(rec.id)
        t_sets.append(ts)
        t_weight.append(w.total(ts.tokens))
        for tok in ts.tokens:
            index[tok].append(i)
        by_tokens[ts.tokens].append(i)

    pairs = []
    for rec in base:
        r = tokenize(rec.match_field, w.q)
        w_r = w.total(r.tokens)
        if w_r <= 0.0:
            # only identical token sets can score above theta
            for i in by_tokens.get(r.tokens, ()):
                score = weighted_jaccard(r, t_sets[i], w)
                if score > theta:
                    pairs.append((rec.id, t_ids[i], score))
            continue

        ordered = sorted(r.tokens, key=lambda t: (-w.weight(t), t))
        budget = theta * w_r - _SLACK * w_r
        suffix = w_r
        candidates = set()
        for tok in ordered:
            if suffix <= budget:
                break
            candidates.update(index.get(tok, ()))
            suffix -= w.weight(tok)

        for i in sorted(candidates):
            w_s = t_weight[i]
            hi, lo = (w_r, w_s) if w_r >= w_s else (w_s, w_r)
            if lo < (theta - _SLACK) * hi:
                continue
            score = weighted_jaccard(r, t_sets[i], w)
            if score > theta:
                pairs.append((rec.id, t_ids[i], score))
    return _finish(pairs, theta)
