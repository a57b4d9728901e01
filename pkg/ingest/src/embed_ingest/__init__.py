"""Paraphrase-pair ingestion: TSV in, two embedding JSONL corpora out."""

__version__ = "0.1.0"

from .ingest import IngestError, ParaphraseRow, embed_pairs, read_paraphrase_rows, sample_pairs

__all__ = [
    "__version__",
    "IngestError",
    "ParaphraseRow",
    "read_paraphrase_rows",
    "sample_pairs",
    "embed_pairs",
]
