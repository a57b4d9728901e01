"""Deterministic file formats: embedding JSONL and experiment CSVs.

Embedding files are UTF-8 JSON Lines, one document per line:

    {"id": "...", "pair_id": "..." | null, "vector": [1.0, ...]}

CSV outputs all start with one '#'-prefixed metadata line holding a JSON
object (tool name and version, the command's full configuration echo, and
the master seed), followed by a plain header row. Floats are written with
17 significant digits and rows in a fixed order, so identical runs produce
byte-identical files.

Validation failures raise ``InputError`` with the offending file and line
named; the CLI maps these to exit code 2.
"""

from __future__ import annotations

import csv
import json
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from .distributionality import DeviationReport
from .ksc import DistanceRecord
from .metrics import MetricId
from .synth import SweepRecord
from .vectorspace import Corpus, EmbeddedDoc

__all__ = [
    "InputError",
    "format_float",
    "read_embeddings_jsonl",
    "write_embeddings_jsonl",
    "write_distance_csv",
    "read_distance_csv",
    "write_sweep_csv",
    "write_report_csv",
    "DISTANCE_HEADER",
    "SWEEP_HEADER",
    "REPORT_HEADER",
]

DISTANCE_HEADER = ["metric", "k", "ell", "rep", "i", "j", "value"]
SWEEP_HEADER = ["metric", "k", "grid_axis", "grid_value", "rep", "value"]
REPORT_HEADER = ["metric", "k", "i_energy", "i_ahd", "label"]


class InputError(ValueError):
    """Malformed or inconsistent user-supplied input."""


def format_float(value: float) -> str:
    return format(float(value), ".17g")


def read_embeddings_jsonl(path: str) -> Corpus:
    """Parse an embedding JSONL file into a Corpus, reporting the first
    offending line on failure."""
    docs: list[EmbeddedDoc] = []
    dim = None
    seen_ids: set[str] = set()
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            where = f"{path}:{lineno}"
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputError(f"{where}: invalid JSON ({exc.msg})") from exc
            if not isinstance(obj, dict):
                raise InputError(f"{where}: expected a JSON object")
            doc_id = obj.get("id")
            if not isinstance(doc_id, str) or not doc_id:
                raise InputError(f"{where}: missing or non-string 'id'")
            if doc_id in seen_ids:
                raise InputError(f"{where}: duplicate document id {doc_id!r}")
            pair_id = obj.get("pair_id")
            if pair_id is not None and not isinstance(pair_id, str):
                raise InputError(f"{where}: 'pair_id' must be a string or null")
            vector = obj.get("vector")
            if not isinstance(vector, list) or not vector:
                raise InputError(f"{where}: missing or empty 'vector'")
            try:
                arr = np.asarray(vector, dtype=np.float64)
            except (TypeError, ValueError):
                raise InputError(f"{where}: vector components must be numbers") from None
            if arr.ndim != 1:
                raise InputError(f"{where}: 'vector' must be a flat list of numbers")
            if not np.all(np.isfinite(arr)):
                raise InputError(f"{where}: vector has non-finite components")
            if dim is None:
                dim = arr.size
            elif arr.size != dim:
                raise InputError(
                    f"{where}: vector has dimension {arr.size}, expected {dim}"
                )
            docs.append(EmbeddedDoc(id=doc_id, vector=arr, pair_id=pair_id))
            seen_ids.add(doc_id)
    if not docs:
        raise InputError(f"{path}: no documents found")
    return Corpus(docs)


def write_embeddings_jsonl(corpus: Corpus, path: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for doc in corpus:
            fh.write(
                json.dumps(
                    {
                        "id": doc.id,
                        "pair_id": doc.pair_id,
                        "vector": [float(x) for x in doc.vector],
                    },
                    separators=(", ", ": "),
                )
                + "\n"
            )


def _metadata_line(meta: dict) -> str:
    payload = {"tool": "corpusdist", "version": __version__}
    payload.update(meta)
    return "# " + json.dumps(payload, sort_keys=True, separators=(", ", ": "))


def _parse_metadata(line: str) -> dict:
    body = line.lstrip("#").strip()
    try:
        return json.loads(body)
    except json.JSONDecodeError:
        return {}


def _write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[str]], meta: dict):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(_metadata_line(meta) + "\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _metric_cells(mid: MetricId) -> tuple[str, str]:
    return mid.name, "" if mid.k is None else str(mid.k)


def write_distance_csv(path: str, records: Sequence[DistanceRecord], meta: dict):
    rows = (
        (*_metric_cells(r.metric), str(r.ell), str(r.rep), str(r.i), str(r.j), format_float(r.value))
        for r in records
    )
    _write_csv(path, DISTANCE_HEADER, rows, meta)


def write_sweep_csv(path: str, records: Sequence[SweepRecord], meta: dict):
    rows = (
        (*_metric_cells(r.metric), r.grid_axis, format_float(r.grid_value), str(r.rep), format_float(r.value))
        for r in records
    )
    _write_csv(path, SWEEP_HEADER, rows, meta)


def write_report_csv(path: str, reports: Sequence[DeviationReport], meta: dict):
    rows = (
        (*_metric_cells(r.metric), format_float(r.i_energy), format_float(r.i_ahd), r.label)
        for r in reports
    )
    _write_csv(path, REPORT_HEADER, rows, meta)


def _parse_metric(name: str, k_text: str, where: str) -> MetricId:
    if not name:
        raise InputError(f"{where}: empty metric name")
    k = None
    if k_text:
        try:
            k = int(k_text)
        except ValueError:
            raise InputError(f"{where}: non-integer k {k_text!r}") from None
    try:
        return MetricId(name, k)
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from None


def read_distance_csv(path: str) -> tuple[list[DistanceRecord], dict]:
    """Read a KSC distance table and its metadata (empty dict if absent)."""
    meta: dict = {}
    records: list[DistanceRecord] = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header_seen = False
        for lineno, row in enumerate(reader, start=1):
            if not row:
                continue
            where = f"{path}:{lineno}"
            if row[0].startswith("#"):
                meta = _parse_metadata(",".join(row))
                continue
            if not header_seen:
                if [c.strip() for c in row] != DISTANCE_HEADER:
                    raise InputError(
                        f"{where}: expected header {','.join(DISTANCE_HEADER)!r}"
                    )
                header_seen = True
                continue
            if len(row) != len(DISTANCE_HEADER):
                raise InputError(f"{where}: expected {len(DISTANCE_HEADER)} fields, got {len(row)}")
            mid = _parse_metric(row[0].strip(), row[1].strip(), where)
            try:
                ell, rep = int(row[2]), int(row[3])
                i, j = int(row[4]), int(row[5])
                value = float(row[6])
            except ValueError:
                raise InputError(f"{where}: malformed numeric fields") from None
            if not np.isfinite(value):
                raise InputError(f"{where}: non-finite distance value")
            if j - i != ell:
                raise InputError(f"{where}: pair ({i}, {j}) does not match ell={ell}")
            records.append(DistanceRecord(metric=mid, ell=ell, rep=rep, i=i, j=j, value=value))
    if not header_seen:
        raise InputError(f"{path}: missing header row")
    return records, meta
