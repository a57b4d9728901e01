"""Known-Similarity Corpora: construction and distance tables.

A KSC set interpolates between two equal-size source corpora A and B with
K+1 sampled corpora c_0..c_K. Corpus c_i draws round(n * i / K) documents
from B and the rest from A, each side as an independent uniform sample
without replacement (the "double lottery"), so c_0 is a permutation of A
and c_K a permutation of B. The index gap ell = j - i between two corpora
of one set controls their expected distance, and pooling the distances of
all ell-separated pairs over repeated resamplings gives the trajectories
consumed by the distributionality evaluator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .metrics import MetricId, evaluate_metric
from .seeding import derive_seed, rng_from
from .vectorspace import Corpus, DistanceFn, EmbeddedDoc

__all__ = ["KscSet", "DistanceRecord", "build_ksc", "ell_pairs", "distance_table"]


@dataclass(frozen=True)
class DistanceRecord:
    """One evaluated corpus-pair distance: metric, separation level ell,
    repetition index, the pair (i, j) with j - i = ell, and the value."""

    metric: MetricId
    ell: int
    rep: int
    i: int
    j: int
    value: float


@dataclass
class KscSet:
    """K+1 sampled corpora plus per-document provenance.

    ``provenance[i]`` lists, for each document of ``corpora[i]`` in order,
    a ("A" | "B", source_index) tuple identifying the source document it
    was drawn from. Document ids are namespaced as "A:<id>" / "B:<id>" so
    a corpus can hold the same underlying document drawn once from each
    source without violating id uniqueness.
    """

    corpora: list[Corpus]
    provenance: list[list[tuple[str, int]]]
    K: int
    n: int
    seed: int


def _round_half_up_ratio(num: int, den: int) -> int:
    """round(num / den) with exact integer half-up rounding."""
    return (2 * num + den) // (2 * den)


def n_from_b(n: int, i: int, K: int) -> int:
    """Number of B-source documents in corpus c_i: round(n * i / K)."""
    return _round_half_up_ratio(n * i, K)


def build_ksc(a: Corpus, b: Corpus, K: int, seed: int) -> KscSet:
    """Sample one KSC set from sources of equal size n >= K + 1.

    The two lotteries of corpus c_i use independent child streams derived
    from (seed, i, side) with side 0 for A and 1 for B (see ``seeding``),
    so draws are independent across corpora and across sides.
    """
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    if len(a) != len(b):
        raise ValueError(f"source corpora must have equal size, got {len(a)} and {len(b)}")
    if a.dim != b.dim:
        raise ValueError(f"source corpora dimension mismatch: {a.dim} vs {b.dim}")
    n = len(a)
    if n < K + 1:
        raise ValueError(f"need n >= K + 1 documents per source, got n={n}, K={K}")

    corpora: list[Corpus] = []
    provenance: list[list[tuple[str, int]]] = []
    for i in range(K + 1):
        nb = n_from_b(n, i, K)
        na = n - nb
        idx_a = rng_from(seed, i, 0).choice(n, size=na, replace=False)
        idx_b = rng_from(seed, i, 1).choice(n, size=nb, replace=False)
        docs: list[EmbeddedDoc] = []
        origin: list[tuple[str, int]] = []
        for t in idx_a:
            src = a[int(t)]
            docs.append(EmbeddedDoc(id=f"A:{src.id}", vector=src.vector, pair_id=src.pair_id))
            origin.append(("A", int(t)))
        for t in idx_b:
            src = b[int(t)]
            docs.append(EmbeddedDoc(id=f"B:{src.id}", vector=src.vector, pair_id=src.pair_id))
            origin.append(("B", int(t)))
        corpora.append(Corpus(docs))
        provenance.append(origin)
    return KscSet(corpora=corpora, provenance=provenance, K=K, n=n, seed=int(seed))


def ell_pairs(ksc: KscSet, ell: int) -> list[tuple[Corpus, Corpus]]:
    """All ordered pairs (c_i, c_j) with j - i = ell, ascending in i."""
    if not 1 <= ell <= ksc.K:
        raise ValueError(f"ell must be in 1..{ksc.K}, got {ell}")
    return [(ksc.corpora[i], ksc.corpora[i + ell]) for i in range(ksc.K + 1 - ell)]


def distance_table(
    a: Corpus,
    b: Corpus,
    K: int,
    R: int,
    metrics: Sequence[MetricId],
    doc_metric: str | DistanceFn = "cosine",
    seed: int = 0,
) -> list[DistanceRecord]:
    """Evaluate every metric on every ell-separated pair of R fresh KSC sets.

    Repetition r (1-based) resamples the KSC set with the child seed
    derived from (seed, r); the sampling never depends on which metrics
    are requested. Records are returned sorted by (metric, rep, ell, i)
    and pooled over r they form the repetition-pooled distance sets used
    downstream.
    """
    if R < 1:
        raise ValueError(f"R must be >= 1, got {R}")
    if not metrics:
        raise ValueError("need at least one metric")
    records: list[DistanceRecord] = []
    for rep in range(1, R + 1):
        ksc = build_ksc(a, b, K, seed=derive_seed(seed, rep))
        for mid in metrics:
            for ell in range(1, K + 1):
                for i in range(K + 1 - ell):
                    value = evaluate_metric(mid, ksc.corpora[i], ksc.corpora[i + ell], doc_metric)
                    records.append(
                        DistanceRecord(metric=mid, ell=ell, rep=rep, i=i, j=i + ell, value=value)
                    )
    records.sort(key=lambda r: (r.metric.sort_key, r.rep, r.ell, r.i))
    return records
