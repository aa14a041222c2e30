"""Exit criteria for the package, one test group per criterion.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary prints a
PASS/FAIL line per criterion.
"""

import itertools
import random
import time

import pytest

from conftest import make_join_corpus
from linkedtrials import ntriples
from linkedtrials.entity_model import (
    OWL_SAME_AS,
    EntityRecord,
    EntitySet,
    Link,
    MatchMethod,
    normalize_name,
)
from linkedtrials.linkpipe import (
    OVERALL,
    ExactMatch,
    LinkSet,
    LinkSpec,
    SemanticMatch,
    StatsRow,
    StringMatch,
    compute_stats,
    exact_match,
    run_linkspec,
)
from linkedtrials.qgram_sim import TokenSet, WeightTable, build_weight_table, similarity, tokenize, weighted_jaccard
from linkedtrials.semjoin import load_thesaurus, semantic_join
from linkedtrials.simjoin import brute_force_join, indexed_join
from linkedtrials.trial_ingest import TrialDocument, build_entity_graph, entity_stats, read_corpus, triplify

E, S, M = MatchMethod.EXACT, MatchMethod.STRING, MatchMethod.SEMANTIC

# -- 1. published statistics table ---------------------------------------------

# (link #, linked entity #) for Exact, String, Semantic, Overall
TABLE4_COUNTS = {
    "Intervention-DBpedia": [(8442, 867), (9716, 1558), (10630, 1334), (11527, 1913)],
    "Intervention-DrugBank": [(9867, 926), (11865, 1938), (12127, 1641), (23493, 2477)],
    "Intervention-DailyMed": [(14257, 673), (24461, 1296), (27685, 1099), (39396, 1688)],
    "Condition-DBpedia": [(164, 164), (333, 330), (173, 173), (342, 342)],
    "Condition-Diseasome": [(232, 192), (778, 575), (301, 247), (830, 615)],
}
# published Diff % cells: (link, entity) for String, Semantic, Overall
TABLE4_DIFFS = {
    "Intervention-DBpedia": [(15.1, 79.7), (25.9, 53.9), (36.5, 120.6)],
    "Intervention-DrugBank": [(20.2, 109.3), (22.9, 77.2), (138.1, 167.5)],
    "Intervention-DailyMed": [(71.6, 92.6), (94.2, 63.3), (176.3, 150.8)],
    "Condition-DBpedia": [(103.0, 101.2), (5.5, 5.5), (108.5, 108.5)],
    "Condition-Diseasome": [(235.3, 199.5), (29.7, 28.6), (257.8, 220.3)],
}


@pytest.mark.criterion(1)
@pytest.mark.parametrize("scenario", sorted(TABLE4_COUNTS))
def test_c01_table4_diff_cells(scenario):
    keys = [E, S, M, OVERALL]
    row = StatsRow.from_counts(scenario, dict(zip(keys, TABLE4_COUNTS[scenario])))
    for key, (link_diff, ent_diff) in zip(keys[1:], TABLE4_DIFFS[scenario]):
        assert row[key].link_diff_pct == pytest.approx(link_diff, abs=0.05)
        assert row[key].entity_diff_pct == pytest.approx(ent_diff, abs=0.05)
    assert row[E].link_diff_pct is None


@pytest.mark.criterion(1)
def test_c01_compute_stats_fan_out_path():
    """Same cells through compute_stats, on links whose fan-out carries the raw counts."""
    occ = {}

    def links(method, n_links, n_entities, prefix):
        per, extra = divmod(n_links, n_entities)
        out = []
        for i in range(n_entities):
            sid = f"{prefix}{i}"
            occ[sid] = per + (1 if i < extra else 0)
            out.append(Link(sid, "target", method, 1.0 if method is not S else 0.9, OWL_SAME_AS))
        return out

    ls = LinkSet("Condition-DBpedia")
    ls.partitions[E] = links(E, 164, 164, "e")
    ls.partitions[S] = links(S, 333, 330, "s")
    row = compute_stats(ls, occ)
    assert (row[S].link_count, row[S].linked_entity_count) == (333, 330)
    assert row[S].link_diff_pct == pytest.approx(103.0, abs=0.05)
    assert row[S].entity_diff_pct == pytest.approx(101.2, abs=0.05)


# -- 2. published link counts -----------------------------------------------------

@pytest.mark.criterion(2)
def test_c02_paper_link_counts_substituted():
    pytest.skip("needs the 2008 registry snapshot and external datasets; "
                "covered by criteria 3-8")


# -- 3. indexed join == brute force ---------------------------------------------

@pytest.mark.criterion(3)
def test_c03_oracle_equivalence(vocab):
    rng = random.Random(2024)
    sizes = [(500, 500), (500, 500)] + [(rng.randint(20, 300), rng.randint(20, 300))
                                        for _ in range(18)]
    start = time.perf_counter()
    total_pairs = 0
    for seed, (nb, nt) in enumerate(sizes):
        base, target = make_join_corpus(seed, nb, nt, vocab)
        b = EntitySet.from_names("base", "b", base)
        t = EntitySet.from_names("target", "t", target)
        w = build_weight_table(base, 2)
        for theta in (0.3, 0.5, 0.7):
            fast = indexed_join(b, t, theta, w)
            slow = brute_force_join(b, t, theta, w)
            assert [p[:2] for p in fast] == [p[:2] for p in slow]
            for pf, ps in zip(fast, slow):
                assert abs(pf[2] - ps[2]) <= 1e-12
            total_pairs += len(slow)
    elapsed = time.perf_counter() - start
    print(f"criterion 3: {len(sizes)} corpora, {total_pairs} pairs, {elapsed:.1f}s")
    assert total_pairs > 0
    assert elapsed < 60.0


# -- 4. similarity axioms -------------------------------------------------------

ALPHABET = [a + b for a in "abcdefg$" for b in "abcdefg$"]


def _random_pairs(n, seed):
    rng = random.Random(seed)
    for _ in range(n):
        yield (frozenset(rng.sample(ALPHABET, rng.randint(1, 12))),
               frozenset(rng.sample(ALPHABET, rng.randint(1, 12))))


@pytest.mark.criterion(4)
def test_c04_similarity_axioms(base_terms):
    w = build_weight_table(base_terms, 2)
    for t1, t2 in _random_pairs(1000, 4):
        a, b = TokenSet(t1), TokenSet(t2)
        s = weighted_jaccard(a, b, w)
        assert s == weighted_jaccard(b, a, w)
        assert 0.0 <= s <= 1.0
        assert weighted_jaccard(a, a, w) == 1.0
        if not t1 & t2:
            assert s == 0.0


@pytest.mark.criterion(4)
def test_c04_uniform_weights_are_plain_jaccard():
    w = WeightTable.uniform(2)
    for t1, t2 in _random_pairs(1000, 5):
        # brute force: count shared and total tokens over the alphabet
        shared = sum(1 for tok in ALPHABET if tok in t1 and tok in t2)
        either = sum(1 for tok in ALPHABET if tok in t1 or tok in t2)
        assert weighted_jaccard(TokenSet(t1), TokenSet(t2), w) == \
            pytest.approx(shared / either, abs=1e-12)


# -- 5. orderings of the motivating string pairs -------------------------------------

@pytest.mark.criterion(5)
@pytest.mark.parametrize("left, right", [
    ("Thalassemia", "Thalassaemia"),
    ("HIV virus", "HIV"),
    ("Alzheimer", "Alzheimer's Disease"),
    ("Adenocarcinoma of the Colon", "Colon adenocarcinoma"),
])
def test_c05_pair_orderings(base_terms, left, right):
    assert len(base_terms) >= 100
    w = build_weight_table(base_terms, 2)
    assert similarity(left, right, w) > similarity(left, "diabetes mellitus", w)


# -- 6. semantic matching --------------------------------------------------------

@pytest.mark.criterion(6)
def test_c06_semantic_matching(data_dir, base_terms):
    th = load_thesaurus(data_dir / "acetaminophen.tsv")
    names = ["Acetaminophen", "Tylenol", "Paracetamol", "APA"]
    recs = EntitySet.from_names("drugs", "drug", names)
    pairs = list(itertools.combinations(range(4), 2))

    def found(pair_list):
        got = {frozenset((int(a), int(b))) for a, b in pair_list if a != b}
        return {p for p in pairs if frozenset(p) in got}

    semantic = found(semantic_join(recs, recs, th))
    assert semantic == set(pairs)

    exact = found(exact_match(recs, recs))
    # weights from the fixture base, where these names are ordinary tuples
    w = build_weight_table(base_terms + names, 2)
    string = found((a, b) for a, b, _ in indexed_join(recs, recs, 0.5, w))
    print(f"criterion 6: semantic {len(semantic)}, string {len(string)}, exact {len(exact)} of 6")
    assert len(exact) < 6 and len(string) < 6


# -- 7. union of methods ----------------------------------------------------------

@pytest.mark.criterion(7)
def test_c07_union_beats_each_method(data_dir, base_terms):
    # brand names only: the toy ontology also lists spelling variants,
    # which would let semantic matching cover every link on its own
    th = load_thesaurus(data_dir / "acetaminophen.tsv")
    filler = [t for t in base_terms if normalize_name(t) not in
              {"acquired immunodeficiency syndrome", "acetaminophen", "beta-thalassemia"}]
    source_names = ["AIDS", "Thalassemia", "Tylenol"] + filler[:100]
    source = EntitySet.from_names("condition", "condition", source_names)
    target = EntitySet("external", "external", (
        EntityRecord("aids", "aids"),                # exact duplicate (case only)
        EntityRecord("thalassaemia", "Thalassaemia"),  # spelling variant
        EntityRecord("paracetamol", "Paracetamol"),    # brand-name synonym
    ))
    spec = LinkSpec("fixture", source, target,
                    (ExactMatch(), StringMatch(0.5), SemanticMatch(th)), OWL_SAME_AS)
    ls = run_linkspec(spec)
    row = compute_stats(ls, source.occurrences())
    overall = row[OVERALL].link_count
    print("criterion 7: " + ", ".join(f"{k} {v.link_count}" for k, v in row.columns.items()))
    for m in (E, S, M):
        assert overall > row[m].link_count


# -- 8. fan-out counting -----------------------------------------------------------

@pytest.mark.criterion(8)
def test_c08_fan_out_from_ingested_trials():
    trials = [TrialDocument(f"NCT{i:08d}", conditions=("AIDS",)) for i in range(10)]
    trials.append(TrialDocument("NCT99999999", conditions=("Malaria",)))
    graph = build_entity_graph(trials)
    conditions = graph["condition"]
    target = EntitySet("dbpedia", "disease", (EntityRecord("AIDS", "AIDS"),))
    spec = LinkSpec("aids", conditions, target, (ExactMatch(),), OWL_SAME_AS)
    row = compute_stats(run_linkspec(spec), conditions.occurrences())
    assert row[E].link_count == 10
    assert row[E].linked_entity_count == 1


# -- 9. triplification ---------------------------------------------------------------

@pytest.mark.criterion(9)
def test_c09_triplification_shape(corpus):
    directory, plan = corpus
    assert len(plan) == 25
    start = time.perf_counter()
    graph = build_entity_graph(read_corpus(directory))
    text1 = ntriples.serialize(triplify(graph, "http://example.org/resource"))
    graph2 = build_entity_graph(read_corpus(directory))
    text2 = ntriples.serialize(triplify(graph2, "http://example.org/resource"))
    elapsed = time.perf_counter() - start
    assert text1 == text2
    assert elapsed < 5.0

    # hand counts straight from the generator plan
    per_type = {
        "condition": lambda t: t["conditions"],
        "intervention": lambda t: [n for _, n in t["interventions"]],
        "location": lambda t: [", ".join(x) for x in t["locations"]],
        "collaborator_agency": lambda t: t["collaborators"],
        "overall_official": lambda t: [t["overall_official"]] if t["overall_official"] else [],
        "primary_outcome": lambda t: t["primary_outcomes"],
        "reference": lambda t: [p for p, _ in t["references"]],
    }
    entities = {et: len({normalize_name(v) for t in plan for v in get(t)})
                for et, get in per_type.items()}
    entities["trial"] = len(plan)
    entities["criteria"] = sum(1 for t in plan if t["criteria"])
    edges = sum(len({normalize_name(v) for v in get(t)}) for t in plan for get in per_type.values())
    edges += entities["criteria"]
    predicted = 2 * sum(entities.values()) + edges + len(plan)
    assert text1.count("\n") == predicted

    labels = {"trial": "Trials", "condition": "Condition", "intervention": "Intervention",
              "location": "Location", "collaborator_agency": "Collaborator Agency",
              "overall_official": "Overall Official", "primary_outcome": "Primary Outcomes",
              "reference": "Reference", "criteria": "Criteria"}
    stats = dict(entity_stats(graph))
    for et, n in entities.items():
        assert stats[labels[et]] == n
    assert stats["Total"] == sum(entities.values())
    print(f"criterion 9: {predicted} triples, {stats['Total']} entities, {elapsed:.2f}s")


# -- 10. tokenizer golden sets ------------------------------------------------------------

@pytest.mark.criterion(10)
@pytest.mark.parametrize("s, q, expected", [
    ("HIV", 2, {"$h", "hi", "iv", "v$"}),
    ("HIV", 3, {"$$h", "$hi", "hiv", "iv$", "v$$"}),
    ("a b", 2, {"$a", "a$", "$b", "b$"}),
    ("", 2, {"$$"}),
])
def test_c10_tokenizer_golden(s, q, expected):
    assert set(tokenize(s, q).tokens) == expected
