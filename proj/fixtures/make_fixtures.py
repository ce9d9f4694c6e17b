#!/usr/bin/env python3
"""Regenerates the shipped fixture files (claim corpus and rating cohort).

Deterministic: rerunning produces byte-identical files.
"""

import json
import random
from pathlib import Path

HERE = Path(__file__).resolve().parent

SUBJECTS = [
    "Veratine", "Oxalib", "Lumarex", "Dextrafen", "Quillocin", "Marbodyne",
    "Seralax", "Tovafast", "Nuberol", "Clavistat", "Pyrralin", "Westocil",
    "Halforin", "Jubrethol", "Kentrazol", "Lorvamide", "Mextrovir", "Nilvactam",
    "Orbifene", "Prazulene", "Quenofloxin", "Rubatrol", "Silvexed", "Tamburin",
    "Ulvacine", "Vomerol", "Wistarene", "Xentovir", "Yarrowvex", "Zubertal",
    "Arkadine", "Boralex", "Cindrazol", "Dovaphene", "Erbomycin", "Falconex",
    "Gavrodyne", "Hexambrol", "Ixalorin", "Jorvamide",
]

MARKERS = [
    "cortisol", "glucose", "histamine", "insulin", "melatonin", "serotonin",
    "dopamine", "fibrin", "collagen", "keratin", "lactate", "urea",
    "bilirubin", "ferritin", "albumin", "glycogen", "creatinine", "troponin",
    "amylase", "pepsin",
]

TISSUES = [
    "hepatic", "renal", "cardiac", "neural", "dermal", "gastric",
    "pulmonary", "vascular", "synovial", "lymphatic",
]

COHORTS = [
    "clinical cohorts", "murine assays", "field trials", "outpatient cohorts",
    "bedside studies",
]

GOLDS = ["SUPPORTS", "REFUTES", "NOT-ENOUGH-INFO"]


def passages(i: int, subject: str) -> list[dict]:
    m1 = MARKERS[i % len(MARKERS)]
    m2 = MARKERS[(i + 7) % len(MARKERS)]
    m3 = MARKERS[(i + 13) % len(MARKERS)]
    tissue = TISSUES[i % len(TISSUES)]
    cohort = COHORTS[i % len(COHORTS)]
    out = [
        {"passage_id": "p1", "text": f"{subject} reduces {m1} levels in {cohort}."},
        {"passage_id": "p2", "text": f"{subject} binds {tissue} receptors during {m2} metabolism."},
        {"passage_id": "p3", "text": f"Extended dosing of {subject} improves {m3} clearance."},
        {"passage_id": "p4", "text": f"Laboratory assays link {subject} to faster {m1} turnover."},
    ]
    # A few passages carry a causal connective so decomposition splits them.
    if i % 5 == 0:
        out.append({
            "passage_id": "p5",
            "text": f"{subject} steadies {m2} rhythms because it dampens {tissue} signaling.",
        })
    else:
        out.append({
            "passage_id": "p5",
            "text": f"Dose escalation of {subject} tracks {m2} uptake in {cohort}.",
        })
    return out


def make_claims() -> None:
    lines = []
    for i, subject in enumerate(SUBJECTS):
        gold = GOLDS[0] if i % 5 < 3 else (GOLDS[1] if i % 5 == 3 else GOLDS[2])
        m1 = MARKERS[i % len(MARKERS)]
        if gold == "REFUTES":
            claim_text = f"{subject} raises {m1} levels sharply."
        else:
            claim_text = f"{subject} reduces {m1} levels."
        record = {
            "claim_id": f"sc-{i + 1:03d}",
            "claim_text": claim_text,
            "gold_label": gold,
            "evidence": passages(i, subject),
        }
        lines.append(json.dumps(record, ensure_ascii=False))
    (HERE / "claims_small.jsonl").write_text("\n".join(lines) + "\n", encoding="utf-8")


def make_ratings() -> None:
    rng = random.Random(20240811)
    raters = [f"r{k:02d}" for k in range(1, 9)]
    rows = ["rater_id,item_id,q1,q2,cohort"]
    for item in range(1, 61):
        item_id = f"t{item:03d}"
        base_q2 = rng.random() < 0.5
        base_q1 = rng.randint(1, 5)
        for rater in raters:
            # r01/r02 form the single high-agreement pair; everyone else is
            # independent noise. Two cells are left unrated.
            if rater == "r07" and item in (11, 42):
                continue
            if rater in ("r01", "r02"):
                q2 = base_q2 if rng.random() < 0.95 else not base_q2
                q1 = min(5, max(1, base_q1 + (0 if rng.random() < 0.7 else rng.choice([-1, 1]))))
            else:
                q2 = rng.random() < 0.5
                q1 = rng.randint(1, 5)
            cohort = "alpha" if rater <= "r06" else "beta"
            rows.append(f"{rater},{item_id},{q1},{'Y' if q2 else 'N'},{cohort}")
    (HERE / "ratings_synthetic.csv").write_text("\n".join(rows) + "\n", encoding="utf-8")


if __name__ == "__main__":
    make_claims()
    make_ratings()
    print("fixtures written")
