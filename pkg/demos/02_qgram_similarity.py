"""Weighted Jaccard similarity over padded 2-grams.

Shows the tokenizer, the RSJ token weights learned from a base relation,
and how rare q-grams dominate the score.

    python demos/02_qgram_similarity.py
"""

from pathlib import Path

from linkedtrials.qgram_sim import build_weight_table, jaccard, similarity, tokenize

print(sorted(tokenize("HIV", 2)))   # ['$h', 'hi', 'iv', 'v$']
print(sorted(tokenize("HIV", 3)))
print(sorted(tokenize("Alzheimer_disease")) == sorted(tokenize("alzheimer disease")))

base = Path(__file__).with_name("data") / "base_terms.txt"
terms = [t for t in base.read_text(encoding="utf-8").splitlines() if t.strip()]
w = build_weight_table(terms, q=2)
print(f"\nbase relation: N={w.n_docs} strings, {len(w.counts)} distinct 2-grams")

# The 2-grams of "disease" occur in most base tuples, so their weights are
# clamped to zero and they stop counting against a match.
for tok in ["$d", "di", "is", "se", "$h", "zh"]:
    print(f"  {tok!r}: n_t={w.n_t(tok):>3}  weight={w.weight(tok):.3f}")

pairs = [
    ("Thalassemia", "Thalassaemia"),
    ("HIV virus", "HIV"),
    ("Alzheimer", "Alzheimer's Disease"),
    ("Adenocarcinoma of the Colon", "Colon adenocarcinoma"),
]
print()
for a, b in pairs:
    plain = jaccard(tokenize(a), tokenize(b))
    print(f"{a!r:32} {b!r:26} weighted={similarity(a, b, w):.3f} "
          f"plain={plain:.3f} control={similarity(a, 'diabetes mellitus', w):.3f}")
