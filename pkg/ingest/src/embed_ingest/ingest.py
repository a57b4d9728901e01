"""Paraphrase TSV to embedding JSONL conversion.

Input is a tab-separated file with a header naming at least qid1, qid2,
question1, question2, is_duplicate (the Quora question-pairs layout). Only
rows marked as duplicates (the paraphrase portion) are used. ``sample_n``
rows are drawn without replacement under a seed; rows whose text or id
would repeat an already-accepted one within a corpus are dropped and the
walk continues, so the output still holds ``sample_n`` unique pairs.
question1 always feeds corpus A and question2 corpus B (column order is
preserved). Both output files carry a shared pair_id per row.
"""

import csv
import json
from dataclasses import dataclass

import numpy as np

from .embedders import get_embedder

_REQUIRED_COLUMNS = ("qid1", "qid2", "question1", "question2", "is_duplicate")
_TRUE_VALUES = {"1", "true", "yes"}


class IngestError(ValueError):
    """Malformed input or unsatisfiable request."""


@dataclass(frozen=True)
class ParaphraseRow:
    qid1: str
    qid2: str
    question1: str
    question2: str
    is_duplicate: bool


def read_paraphrase_rows(path):
    """All duplicate-labeled rows of a Quora-format TSV."""
    rows = []
    try:
        handle = open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc}") from exc
    with handle:
        reader = csv.DictReader(handle, delimiter="\t")
        if reader.fieldnames is None:
            raise IngestError(f"{path}: empty file")
        missing = [c for c in _REQUIRED_COLUMNS if c not in reader.fieldnames]
        if missing:
            raise IngestError(f"{path}: missing column(s) {', '.join(missing)}")
        for lineno, raw in enumerate(reader, start=2):
            if raw["qid1"] is None or raw["question2"] is None:
                raise IngestError(f"{path}:{lineno}: truncated row")
            row = ParaphraseRow(
                qid1=raw["qid1"].strip(),
                qid2=raw["qid2"].strip(),
                question1=raw["question1"].strip(),
                question2=raw["question2"].strip(),
                is_duplicate=raw["is_duplicate"].strip().lower() in _TRUE_VALUES,
            )
            if row.is_duplicate:
                if not row.question1 or not row.question2:
                    raise IngestError(f"{path}:{lineno}: empty question text")
                if not row.qid1 or not row.qid2:
                    raise IngestError(f"{path}:{lineno}: empty question id")
                rows.append(row)
    if not rows:
        raise IngestError(f"{path}: no paraphrase rows found")
    return rows


def sample_pairs(rows, sample_n, seed):
    """Draw sample_n rows without replacement, skipping any row that would
    duplicate a text or id already accepted within its corpus."""
    if sample_n < 1:
        raise IngestError(f"sample_n must be >= 1, got {sample_n}")
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(rows))
    chosen = []
    seen_a_text, seen_b_text = set(), set()
    seen_a_id, seen_b_id = set(), set()
    for idx in order:
        row = rows[int(idx)]
        if (
            row.question1 in seen_a_text
            or row.question2 in seen_b_text
            or row.qid1 in seen_a_id
            or row.qid2 in seen_b_id
        ):
            continue
        chosen.append(row)
        seen_a_text.add(row.question1)
        seen_b_text.add(row.question2)
        seen_a_id.add(row.qid1)
        seen_b_id.add(row.qid2)
        if len(chosen) == sample_n:
            return chosen
    raise IngestError(
        f"only {len(chosen)} unique paraphrase rows available, need {sample_n}"
    )


def _write_jsonl(path, ids, pair_ids, matrix):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for doc_id, pair_id, vector in zip(ids, pair_ids, matrix):
            fh.write(
                json.dumps(
                    {"id": doc_id, "pair_id": pair_id, "vector": [float(x) for x in vector]}
                )
                + "\n"
            )


def embed_pairs(input_tsv, model_name, sample_n, seed, out_a, out_b):
    """Sample paraphrase rows, embed both sides, write the two corpora.

    Returns the number of pairs written.
    """
    rows = read_paraphrase_rows(input_tsv)
    chosen = sample_pairs(rows, sample_n, seed)
    embed = get_embedder(model_name)
    matrix_a = embed([row.question1 for row in chosen])
    matrix_b = embed([row.question2 for row in chosen])
    pair_ids = [f"{row.qid1}-{row.qid2}" for row in chosen]
    _write_jsonl(out_a, [row.qid1 for row in chosen], pair_ids, matrix_a)
    _write_jsonl(out_b, [row.qid2 for row in chosen], pair_ids, matrix_b)
    return len(chosen)
