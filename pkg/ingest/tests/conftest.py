import csv
import itertools

import numpy as np
import pytest

ACTIONS = ["learn", "improve", "practice", "teach", "master",
           "study", "understand", "explain", "review", "organize"]
SUBJECTS = ["python", "calculus", "guitar", "chess", "photography",
            "cooking", "spanish", "statistics", "gardening", "drawing"]
CONTEXTS = ["at home", "online", "quickly", "as a beginner", "for free", "every day"]

TEMPLATE_PAIRS = [
    ("How can I {a} {s} {c}?", "What is the best way to {a} {s} {c}?"),
    ("Why should I {a} {s} {c}?", "What are good reasons to {a} {s} {c}?"),
    ("Is it hard to {a} {s} {c}?", "How difficult is it to {a} {s} {c}?"),
]


def make_quora_tsv(path, n_duplicates=150, n_distractors=50, seed=0):
    """Quora-format paraphrase TSV: header plus n_duplicates paraphrase rows
    and n_distractors rows marked non-duplicate."""
    rng = np.random.default_rng(seed)
    combos = list(itertools.product(ACTIONS, SUBJECTS, CONTEXTS))
    picks = rng.choice(len(combos), size=n_duplicates + n_distractors, replace=False)
    rows = []
    qid = 1
    for row_idx, pick in enumerate(picks):
        action, subject, context = combos[int(pick)]
        t1, t2 = TEMPLATE_PAIRS[int(rng.integers(len(TEMPLATE_PAIRS)))]
        q1 = t1.format(a=action, s=subject, c=context)
        if row_idx < n_duplicates:
            q2 = t2.format(a=action, s=subject, c=context)
            dup = "1"
        else:
            other = combos[int(rng.integers(len(combos)))]
            q2 = t2.format(a=other[0], s=other[1], c=other[2])
            dup = "0"
        rows.append((str(row_idx), f"q{qid}", f"q{qid + 1}", q1, q2, dup))
        qid += 2
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, delimiter="\t", lineterminator="\n")
        writer.writerow(["id", "qid1", "qid2", "question1", "question2", "is_duplicate"])
        writer.writerows(rows)
    return path


@pytest.fixture
def quora_tsv(tmp_path):
    return make_quora_tsv(tmp_path / "pairs.tsv")
