"""Deterministic synthetic trial corpora for demos and tests."""

from __future__ import annotations

import random
from pathlib import Path
from xml.sax.saxutils import escape

CONDITIONS = [
    "AIDS", "aids", "Acquired Immunodeficiency Syndrome", "Beta-Thalassemia",
    "Thalassaemia", "Alzheimer's Disease", "Alzheimer disease", "Breast Cancer",
    "breast  cancer", "Colon Adenocarcinoma", "Adenocarcinoma of the Colon",
    "Diabetes Mellitus", "Klinefelter Syndrome", "Hypertension", "Asthma",
]
INTERVENTIONS = [
    ("Drug", "Campath"), ("Drug", "Alemtuzumab"), ("Drug", "Tylenol"),
    ("Drug", "Acetaminophen"), ("Drug", "Paracetamol"), ("Drug", "Metformin"),
    ("Drug", "metformin"), ("Biological", "Rituximab"), ("Behavioral", "Exercise"),
    ("Procedure", "Stem Cell Transplant"),
]
LOCATIONS = [
    ("Westchester Medical Center", "Valhalla", "United States"),
    ("Columbia University", "New York", "United States"),
    ("Toronto General Hospital", "Toronto", "Canada"),
    ("Charité", "Berlin", "Germany"),
    ("Mayo Clinic", "Rochester", "United States"),
]
COLLABORATORS = ["National Cancer Institute (NCI)", "Genzyme", "IBM", "NIAID"]
OFFICIALS = ["Jane Roe, MD", "John Doe, PhD", "A. N. Other"]
OUTCOMES = ["Overall survival", "Viral load at week 48", "Adverse events",
            "Hemoglobin level"]


def make_trials(n: int = 25, seed: int = 7) -> list[dict]:
    """Plan ``n`` trials as plain dicts of raw field values."""
    rng = random.Random(seed)
    trials = []
    for i in range(n):
        conds = rng.sample(CONDITIONS, rng.randint(1, 3))
        if rng.random() < 0.2:
            conds.append(conds[0].upper())  # in-trial duplicate mention
        trials.append({
            "nct_id": f"NCT{10000 + i:08d}",
            "brief_title": f"Study {i} of {conds[0]}",
            "conditions": conds,
            "interventions": rng.sample(INTERVENTIONS, rng.randint(0, 2)),
            "locations": rng.sample(LOCATIONS, rng.randint(1, 2)),
            "references": [(str(19000000 + rng.randint(0, 30)), f"Citation {i}")]
            if rng.random() < 0.6 else [],
            "criteria": f"Inclusion: adults 18-65 & trial {i} specific <criteria>.",
            "collaborators": rng.sample(COLLABORATORS, rng.randint(0, 2)),
            "overall_official": rng.choice(OFFICIALS) if rng.random() < 0.7 else None,
            "primary_outcomes": rng.sample(OUTCOMES, rng.randint(1, 2)),
        })
    return trials


def trial_xml(t: dict) -> str:
    e = escape
    parts = ['<?xml version="1.0" encoding="UTF-8"?>', "<clinical_study>",
             f"  <nct_id>{e(t['nct_id'])}</nct_id>",
             f"  <brief_title>{e(t['brief_title'])}</brief_title>"]
    parts += [f"  <condition>{e(c)}</condition>" for c in t["conditions"]]
    for typ, name in t["interventions"]:
        parts.append(f"  <intervention><type>{e(typ)}</type><name>{e(name)}</name></intervention>")
    for fac, city, country in t["locations"]:
        parts.append(f"  <location><facility>{e(fac)}</facility><city>{e(city)}</city>"
                     f"<country>{e(country)}</country></location>")
    for pmid, cit in t["references"]:
        parts.append(f"  <reference><pmid>{e(pmid)}</pmid><citation>{e(cit)}</citation></reference>")
    parts.append(f"  <criteria>\n    {e(t['criteria'])}\n  </criteria>")
    parts += [f"  <collaborator>{e(c)}</collaborator>" for c in t["collaborators"]]
    if t["overall_official"]:
        parts.append(f"  <overall_official>{e(t['overall_official'])}</overall_official>")
    parts += [f"  <primary_outcome>{e(o)}</primary_outcome>" for o in t["primary_outcomes"]]
    parts.append("</clinical_study>")
    return "\n".join(parts) + "\n"


def write_corpus(directory, n: int = 25, seed: int = 7) -> list[dict]:
    """Write ``n`` trial files into ``directory``; returns the plan."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    trials = make_trials(n, seed)
    for t in trials:
        (directory / f"{t['nct_id']}.xml").write_text(trial_xml(t), encoding="utf-8")
    return trials
