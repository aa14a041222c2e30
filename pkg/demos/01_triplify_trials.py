"""Turn a directory of trial XML files into an RDF entity graph.

Writes a small synthetic corpus, parses it, deduplicates the entities the
trials share, and prints entity counts plus a few N-Triples lines.

    python demos/01_triplify_trials.py
"""

import tempfile
from pathlib import Path

from linkedtrials import ntriples
from linkedtrials.synthetic import write_corpus
from linkedtrials.trial_ingest import build_entity_graph, entity_stats, read_corpus, triplify

BASE = "http://example.org/resource"

workdir = Path(tempfile.mkdtemp(prefix="linkedtrials-"))
write_corpus(workdir / "trials", n=25, seed=7)
print("wrote 25 trial files to", workdir / "trials")

docs = read_corpus(workdir / "trials")
print(docs[0].nct_id, "|", docs[0].brief_title, "|", docs[0].conditions)

# "AIDS" and "aids" in different trials collapse into one condition record,
# whose occurrence count is the number of distinct trials naming it.
graph = build_entity_graph(docs)
for rec in graph["condition"]:
    print(f"  condition {rec.id:<35} occurrences={rec.occurrences}")

print()
for label, count in entity_stats(graph):
    print(f"{label:<20} {count:>5}")

text = ntriples.serialize(triplify(graph, BASE))
(workdir / "trials.nt").write_text(text, encoding="utf-8")
print()
print(text.count("\n"), "triples written to", workdir / "trials.nt")
for line in text.splitlines()[:5]:
    print(" ", line)
