"""Text embedding backends.

Two kinds of model name are accepted:

* ``hashed-ngram`` -- a deterministic, dependency-free baseline: signed
  feature hashing of lowercased character n-grams (3 to 5 characters,
  word-boundary padded) into a 256-dimensional count vector. Texts that
  share words share most n-grams, so paraphrase pairs land close in cosine
  distance. Vectors are emitted unnormalized; the downstream cosine
  distance is scale-invariant.
* anything else is treated as a sentence-transformers model name (for
  example ``all-MiniLM-L6-v2``) and loaded through that library; a missing
  library, unknown name, or unreachable model hub is reported as a clean
  error rather than a stack trace.
"""

import hashlib
import re

import numpy as np

HASHED_NGRAM = "hashed-ngram"
HASHED_NGRAM_DIM = 256
_NGRAM_SIZES = (3, 4, 5)


class UnknownModelError(ValueError):
    pass


def _ngrams(text):
    text = re.sub(r"\s+", " ", text.strip().lower())
    padded = f" {text} "
    for size in _NGRAM_SIZES:
        for start in range(max(len(padded) - size + 1, 0)):
            yield padded[start : start + size]
    if len(padded) < min(_NGRAM_SIZES) + 2:
        # Very short texts still get their characters as features.
        yield from padded.strip() or " "


def _hash_ngram(gram):
    digest = hashlib.md5(gram.encode("utf-8")).digest()
    index = int.from_bytes(digest[:4], "little") % HASHED_NGRAM_DIM
    sign = 1.0 if digest[4] % 2 == 0 else -1.0
    return index, sign


def hashed_ngram_embed(texts):
    """(len(texts), 256) float64 matrix of signed n-gram hash counts."""
    out = np.zeros((len(texts), HASHED_NGRAM_DIM))
    for row, text in enumerate(texts):
        for gram in _ngrams(text):
            index, sign = _hash_ngram(gram)
            out[row, index] += sign
        if not out[row].any():
            raise UnknownModelError(
                f"text {row} produced an all-zero embedding (empty input?)"
            )
    return out


def get_embedder(model_name):
    """Resolve a model name to a ``texts -> matrix`` callable."""
    if model_name == HASHED_NGRAM:
        return hashed_ngram_embed
    try:
        from sentence_transformers import SentenceTransformer
    except ImportError as exc:
        raise UnknownModelError(
            f"model {model_name!r} needs the sentence-transformers package "
            f"(pip install sentence-transformers), or use {HASHED_NGRAM!r}"
        ) from exc
    try:
        model = SentenceTransformer(model_name)
    except Exception as exc:
        raise UnknownModelError(f"cannot load embedding model {model_name!r}: {exc}") from exc

    def embed(texts):
        return np.asarray(model.encode(list(texts), show_progress_bar=False), dtype=np.float64)

    return embed
