"""Acceptance for the ingestion tool (criterion 8).

A 200-row Quora-format sample is converted with the offline embedding
backend; the outputs must be accepted by the primary toolkit's ``metrics``
subcommand (exercised as a subprocess, through the external interface
only), and embedded paraphrase pairs must be closer in cosine distance
than random cross pairs for at least 90% of rows.
"""

import json
import subprocess
import sys

import numpy as np

from embed_ingest.cli import main

from conftest import make_quora_tsv


def load_vectors(path):
    docs = [json.loads(line) for line in open(path, encoding="utf-8")]
    return np.array([d["vector"] for d in docs]), [d["pair_id"] for d in docs]


def cosine(u, v):
    return 1.0 - u @ v / (np.linalg.norm(u) * np.linalg.norm(v))


class TestCriterion8Ingestion:
    def test_quora_sample_to_accepted_corpora(self, tmp_path):
        tsv = make_quora_tsv(tmp_path / "pairs.tsv", n_duplicates=150, n_distractors=50)
        out_a, out_b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        code = main(
            ["--input", str(tsv), "--model", "hashed-ngram", "--n", "100",
             "--seed", "8", "--out-a", str(out_a), "--out-b", str(out_b)]
        )
        emitted_ok = code == 0

        proc = subprocess.run(
            [sys.executable, "-m", "corpusdist.cli", "metrics", str(out_a), str(out_b),
             "--metrics", "ENERGY,AHD,IRPR", "-o", str(tmp_path / "pair.csv")],
            capture_output=True,
            text=True,
        )
        accepted_ok = proc.returncode == 0

        vec_a, pair_a = load_vectors(out_a)
        vec_b, pair_b = load_vectors(out_b)
        aligned = pair_a == pair_b
        rng = np.random.default_rng(8)
        n = len(vec_a)
        closer = 0
        for i in range(n):
            j = int(rng.integers(n - 1))
            if j >= i:
                j += 1
            closer += cosine(vec_a[i], vec_b[i]) < cosine(vec_a[i], vec_b[j])
        fraction = closer / n

        ok = emitted_ok and accepted_ok and aligned and fraction >= 0.9
        print(
            f"[ACCEPTANCE] criterion 8 (ingestion: metrics exit={proc.returncode}, "
            f"paraphrase-closer fraction={fraction:.2f}): {'PASS' if ok else 'FAIL'}"
        )
        assert ok, proc.stderr
