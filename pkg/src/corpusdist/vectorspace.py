"""Embedded documents, corpora, and document-level distances.

Everything downstream operates on `Corpus` objects and reduces to pairwise
document distances. Two document distances are built in, cosine and
Euclidean, selected by name; any callable taking two 1-D arrays is also
accepted wherever a distance name is (at the cost of a Python loop in the
pairwise helpers).

All arithmetic is 64-bit floating point. Corpora are small (at most a few
thousand documents), so exact O(n^2) pairwise computation is used
throughout; there are no approximate-neighbor indexes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.spatial.distance import cdist

__all__ = [
    "EmbeddedDoc",
    "Corpus",
    "cosine_distance",
    "euclidean_distance",
    "pairwise_distances",
    "knn",
    "DISTANCE_NAMES",
]

DistanceFn = Callable[[np.ndarray, np.ndarray], float]

DISTANCE_NAMES = ("cosine", "euclidean")


def _as_vector(x) -> np.ndarray:
    v = np.asarray(x, dtype=np.float64)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {v.shape}")
    return v


@dataclass(frozen=True, eq=False)
class EmbeddedDoc:
    """One embedded document: a finite real vector plus identity metadata.

    ``pair_id`` links a document to its counterpart in a paired corpus
    (same ``pair_id`` on both sides); it is optional and unused by the
    distance computations themselves.
    """

    id: str
    vector: np.ndarray
    pair_id: str | None = None

    def __post_init__(self):
        v = _as_vector(self.vector)
        if v.size == 0:
            raise ValueError(f"document {self.id!r}: empty vector")
        if not np.all(np.isfinite(v)):
            raise ValueError(f"document {self.id!r}: vector has non-finite components")
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "vector", v)

    @property
    def dim(self) -> int:
        return int(self.vector.shape[0])


class Corpus:
    """Ordered, dimension-consistent collection of embedded documents.

    Enforced at construction: at least one document, all vectors share one
    dimension, ids unique within the corpus. Instances are immutable; the
    stacked coordinate matrix is exposed read-only, so a Corpus can be
    shared freely between threads.
    """

    __slots__ = ("_docs", "_matrix", "_id_index")

    def __init__(self, docs: Iterable[EmbeddedDoc]):
        docs = tuple(docs)
        if not docs:
            raise ValueError("a corpus must contain at least one document")
        dim = docs[0].dim
        for d in docs:
            if d.dim != dim:
                raise ValueError(
                    f"document {d.id!r} has dimension {d.dim}, expected {dim}"
                )
        ids = [d.id for d in docs]
        if len(set(ids)) != len(ids):
            seen, dup = set(), None
            for i in ids:
                if i in seen:
                    dup = i
                    break
                seen.add(i)
            raise ValueError(f"duplicate document id {dup!r} within corpus")
        self._docs = docs
        m = np.stack([d.vector for d in docs]).astype(np.float64)
        m.flags.writeable = False
        self._matrix = m
        self._id_index = {d.id: i for i, d in enumerate(docs)}

    @classmethod
    def from_matrix(
        cls,
        matrix,
        ids: Sequence[str] | None = None,
        pair_ids: Sequence[str | None] | None = None,
    ) -> "Corpus":
        """Build a corpus from an (n, q) array, generating ids if absent."""
        m = np.asarray(matrix, dtype=np.float64)
        if m.ndim != 2:
            raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
        n = m.shape[0]
        if ids is None:
            ids = [f"doc{i}" for i in range(n)]
        if len(ids) != n:
            raise ValueError("ids length does not match matrix rows")
        if pair_ids is None:
            pair_ids = [None] * n
        if len(pair_ids) != n:
            raise ValueError("pair_ids length does not match matrix rows")
        return cls(
            EmbeddedDoc(id=ids[i], vector=m[i], pair_id=pair_ids[i]) for i in range(n)
        )

    @property
    def matrix(self) -> np.ndarray:
        """Read-only (n, q) coordinate matrix."""
        return self._matrix

    @property
    def dim(self) -> int:
        return int(self._matrix.shape[1])

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(d.id for d in self._docs)

    @property
    def pair_ids(self) -> tuple[str | None, ...]:
        return tuple(d.pair_id for d in self._docs)

    @property
    def docs(self) -> tuple[EmbeddedDoc, ...]:
        return self._docs

    def index_of(self, doc_id: str) -> int:
        return self._id_index[doc_id]

    def take(self, indices) -> "Corpus":
        """Sub-corpus at the given positions (order preserved)."""
        return Corpus(self._docs[int(i)] for i in indices)

    def __len__(self) -> int:
        return len(self._docs)

    def __getitem__(self, i: int) -> EmbeddedDoc:
        return self._docs[i]

    def __iter__(self):
        return iter(self._docs)

    def __repr__(self) -> str:
        return f"Corpus(n={len(self)}, dim={self.dim})"


def cosine_distance(u, v) -> float:
    """Cosine distance 1 - u.v / (|u||v|), in [0, 2].

    Zero-norm input is an error: cosine is undefined there, and any silent
    convention would corrupt downstream corpus metrics invisibly.
    """
    u = _as_vector(u)
    v = _as_vector(v)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape[0]} vs {v.shape[0]}")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        raise ValueError("cosine distance is undefined for zero-norm vectors")
    return float(1.0 - float(np.dot(u, v)) / (nu * nv))


def euclidean_distance(u, v) -> float:
    """Euclidean distance |u - v|."""
    u = _as_vector(u)
    v = _as_vector(v)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape[0]} vs {v.shape[0]}")
    return float(np.linalg.norm(u - v))


def _normalize_rows(x: np.ndarray, what: str) -> np.ndarray:
    norms = np.linalg.norm(x, axis=1)
    zero = np.flatnonzero(norms == 0.0)
    if zero.size:
        raise ValueError(
            f"cosine distance is undefined for zero-norm vectors ({what} row {zero[0]})"
        )
    return x / norms[:, None]


def pairwise_distances(x, y, metric: str | DistanceFn = "cosine") -> np.ndarray:
    """Dense (n, m) matrix of document distances between two row stacks.

    For "cosine" the matrix is computed on row-normalized inputs as half
    the squared chord, which is algebraically 1 - cos and is exactly zero
    for bit-identical rows (the scalar formula can leave +-1 ulp there);
    the two agree to ~1e-14. Results are clipped to [0, 2].
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 2 or y.ndim != 2:
        raise ValueError("pairwise_distances expects 2-D row stacks")
    if x.shape[1] != y.shape[1]:
        raise ValueError(f"dimension mismatch: {x.shape[1]} vs {y.shape[1]}")
    if callable(metric):
        out = np.empty((x.shape[0], y.shape[0]))
        for i in range(x.shape[0]):
            for j in range(y.shape[0]):
                out[i, j] = metric(x[i], y[j])
        return out
    if metric == "cosine":
        xn = _normalize_rows(x, "left")
        yn = _normalize_rows(y, "right")
        d = cdist(xn, yn, "sqeuclidean") / 2.0
        return np.clip(d, 0.0, 2.0)
    if metric == "euclidean":
        return cdist(x, y, "euclidean")
    raise ValueError(f"unknown document distance {metric!r}; expected one of {DISTANCE_NAMES}")


def knn(
    query_index: int,
    pool: Corpus,
    k: int,
    exclude_self: bool = False,
    metric: str | DistanceFn = "cosine",
) -> np.ndarray:
    """Indices of the k pool documents nearest to pool[query_index].

    Ordering is ascending by (distance, index); ties always break toward
    the lower index so results are reproducible regardless of how the pool
    was assembled.
    """
    n = len(pool)
    if not 0 <= query_index < n:
        raise ValueError(f"query_index {query_index} out of range for pool of {n}")
    limit = n - 1 if exclude_self else n
    if not 1 <= k <= limit:
        raise ValueError(f"k={k} out of range; pool admits at most {limit} neighbors")
    q = pool.matrix[query_index : query_index + 1]
    d = pairwise_distances(q, pool.matrix, metric)[0]
    order = np.argsort(d, kind="stable")
    if exclude_self:
        order = order[order != query_index]
    return order[:k].copy()
