"""Thesaurus matching: synonym rings and depth-limited is_a traversal.

    python demos/04_semantic_matching.py
"""

from pathlib import Path

from linkedtrials.entity_model import EntitySet
from linkedtrials.linkpipe import load_entity_csv
from linkedtrials.semjoin import concepts_of, load_thesaurus, relation_closure, semantic_join

data = Path(__file__).with_name("data")
th = load_thesaurus(data / "thesaurus.tsv")
print(len(th), "entries,", len(th.concepts), "concepts")

print(concepts_of("TYLENOL", th))
print(sorted(relation_closure("tylenol", th)))

# Beta-Thalassemia is a synonym of Thalassemia, which is_a Blood Disorders.
for depth in (0, 1):
    print(f"is_a closure of beta-thalassemia, depth {depth}:",
          sorted(relation_closure("beta-thalassemia", th, "is_a", depth)))

interventions = load_entity_csv(data / "interventions.csv", entity_type="intervention")
drugs = load_entity_csv(data / "drugs.csv", entity_type="drug")
for b, t in semantic_join(interventions, drugs, th):
    print(f"  {interventions.get(b).match_field:<26} ~ {drugs.get(t).match_field}")

conditions = EntitySet.from_names("c", "condition", ["Beta-Thalassemia"])
targets = EntitySet.from_names("t", "disease", ["Hematologic Diseases", "Asthma"])
print(semantic_join(conditions, targets, th, rel="is_a", depth=1))
