"""Corpus-level distance metrics.

All metrics take two corpora and return one scalar:

* ``energy_distance`` -- the two-sample energy statistic: twice the mean
  cross-corpus document distance minus both mean within-corpus distances,
  in the plain V-statistic normalization (double sums divided by |A||B|,
  |A|^2, |B|^2, diagonal zero terms included).
* ``ahd`` -- Average Hausdorff Distance: the arithmetic mean of the two
  directed average nearest-neighbor distances, which weights the two sets
  equally even when their sizes differ.
* ``irpr`` -- harmonic mean of the same two directed averages.
* ``pr_distance`` / ``dc_distance`` -- 1 minus the harmonic mean of
  (precision, recall) or (density, coverage), computed from k-nearest
  neighborhoods; see ``pr_components`` / ``dc_components`` for the exact
  component definitions.
* ``fid`` -- distance between the Gaussian fits (sample mean plus sample
  covariance) of the two corpora.

Energy, AHD, IRPR, PR and FID are symmetric in their arguments; DC is not
(its two components are defined in one direction each).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .vectorspace import Corpus, DistanceFn, pairwise_distances

__all__ = [
    "MetricId",
    "PrDcComponents",
    "BUILTIN_METRICS",
    "energy_distance",
    "directed_avg_nn",
    "ahd",
    "irpr",
    "pr_components",
    "dc_components",
    "pr_distance",
    "dc_distance",
    "fid",
    "evaluate_metric",
]

# Metric families computable by this module. Anything else is treated as an
# external metric whose values must be supplied (e.g. via a distances CSV).
BUILTIN_METRICS = ("ENERGY", "AHD", "IRPR", "PR", "DC", "FID")
_NEEDS_K = ("PR", "DC")

# Eigenvalues of the symmetrized covariance product below this are treated
# as zero when taking the matrix square root inside fid().
FID_EIGENVALUE_FLOOR = 1e-10


@dataclass(frozen=True)
class MetricId:
    """Identifier of a corpus metric: a family name plus an optional
    neighbor count k (required for PR and DC)."""

    name: str
    k: int | None = None

    def __post_init__(self):
        if not self.name:
            raise ValueError("metric name must be non-empty")
        if self.k is not None and self.k < 1:
            raise ValueError(f"metric {self.name}: k must be >= 1, got {self.k}")
        if self.name in _NEEDS_K and self.k is None:
            raise ValueError(f"metric {self.name} requires a neighbor count k")

    @classmethod
    def parse(cls, text: str) -> "MetricId":
        """Parse "ENERGY", "PR_5", "DC_15", or an external label."""
        text = text.strip()
        if "_" in text:
            head, _, tail = text.rpartition("_")
            if head in _NEEDS_K and tail.isdigit():
                return cls(head, int(tail))
        return cls(text)

    @property
    def label(self) -> str:
        return self.name if self.k is None else f"{self.name}_{self.k}"

    @property
    def is_builtin(self) -> bool:
        return self.name in BUILTIN_METRICS

    @property
    def sort_key(self) -> tuple[str, int]:
        return (self.name, self.k or 0)

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class PrDcComponents:
    """Raw neighborhood components. ``pr_components`` fills precision and
    recall; ``dc_components`` fills density and coverage. Precision, recall
    and coverage lie in [0, 1]; density is a ratio of corpus sizes and may
    exceed 1 (it is clamped only inside ``dc_distance``)."""

    precision: float | None = None
    recall: float | None = None
    density: float | None = None
    coverage: float | None = None


def _check_pair(a: Corpus, b: Corpus):
    if a.dim != b.dim:
        raise ValueError(f"corpus dimension mismatch: {a.dim} vs {b.dim}")


def _harmonic_mean(a: float, b: float) -> float:
    # Continuous-limit convention: a zero on either side gives 0.
    if a <= 0.0 or b <= 0.0:
        return 0.0
    return 2.0 * a * b / (a + b)


def energy_distance(a: Corpus, b: Corpus, metric: str | DistanceFn = "cosine") -> float:
    """Two-sample energy statistic 2*mean(d(a_i, b_j)) - mean(d(a_i, a_j))
    - mean(d(b_i, b_j)), with all means taken over full index grids."""
    _check_pair(a, b)
    d_ab = pairwise_distances(a.matrix, b.matrix, metric)
    d_aa = pairwise_distances(a.matrix, a.matrix, metric)
    d_bb = pairwise_distances(b.matrix, b.matrix, metric)
    return float(2.0 * d_ab.mean() - d_aa.mean() - d_bb.mean())


def directed_avg_nn(x: Corpus, y: Corpus, metric: str | DistanceFn = "cosine") -> float:
    """Average over x of the nearest-neighbor distance into y. Asymmetric."""
    _check_pair(x, y)
    d = pairwise_distances(x.matrix, y.matrix, metric)
    return float(d.min(axis=1).mean())


def ahd(x: Corpus, y: Corpus, metric: str | DistanceFn = "cosine") -> float:
    """Average Hausdorff Distance: mean of the two directed averages."""
    _check_pair(x, y)
    d = pairwise_distances(x.matrix, y.matrix, metric)
    return float((d.min(axis=1).mean() + d.min(axis=0).mean()) / 2.0)


def irpr(x: Corpus, y: Corpus, metric: str | DistanceFn = "cosine") -> float:
    """Harmonic mean of the two directed average nearest-neighbor
    distances. 0 when either directed average is 0."""
    _check_pair(x, y)
    d = pairwise_distances(x.matrix, y.matrix, metric)
    p = float(d.min(axis=1).mean())
    r = float(d.min(axis=0).mean())
    return _harmonic_mean(p, r)


def _neighborhoods(d: np.ndarray, k: int) -> np.ndarray:
    """(n_probes, k) indices of each probe row's k nearest columns,
    ascending by (distance, column index)."""
    order = np.argsort(d, axis=1, kind="stable")
    return order[:, :k]


def _covered_fraction(d: np.ndarray, k: int) -> float:
    """Fraction of columns that appear in at least one probe row's
    k-neighborhood."""
    n_cols = d.shape[1]
    hit = np.zeros(n_cols, dtype=bool)
    hit[_neighborhoods(d, k).ravel()] = True
    return float(hit.mean())


def pr_components(ci: Corpus, cj: Corpus, k: int, metric: str | DistanceFn = "cosine") -> PrDcComponents:
    """Precision and recall from k-nearest neighborhoods.

    Precision: the fraction of documents in cj that are among the k nearest
    (within cj) of at least one document in ci. Recall: the same with the
    corpus roles swapped. Neighborhood rank ties break toward the lower
    index; exact cross-corpus duplicates are legal and rank first.
    """
    _check_pair(ci, cj)
    if k > len(cj):
        raise ValueError(f"k={k} exceeds target corpus size {len(cj)}")
    if k > len(ci):
        raise ValueError(f"k={k} exceeds target corpus size {len(ci)}")
    d = pairwise_distances(ci.matrix, cj.matrix, metric)
    precision = _covered_fraction(d, k)
    recall = _covered_fraction(d.T, k)
    return PrDcComponents(precision=precision, recall=recall)


def dc_components(ci: Corpus, cj: Corpus, k: int, metric: str | DistanceFn = "cosine") -> PrDcComponents:
    """Density and coverage from k-nearest neighborhoods. Asymmetric.

    Density: the average, over documents y in cj, of how many documents in
    ci have y among their k nearest within cj, divided by k. Coverage: the
    fraction of documents in ci whose nearest other document within ci is
    strictly closer than their k-th nearest in cj.
    """
    _check_pair(ci, cj)
    if k > len(cj):
        raise ValueError(f"k={k} exceeds target corpus size {len(cj)}")
    if len(ci) < 2:
        raise ValueError("coverage needs at least 2 documents in the first corpus")
    d = pairwise_distances(ci.matrix, cj.matrix, metric)
    order = np.argsort(d, axis=1, kind="stable")
    counts = np.bincount(order[:, :k].ravel(), minlength=len(cj))
    density = float(counts.mean() / k)
    kth = d[np.arange(len(ci)), order[:, k - 1]]
    d_ii = pairwise_distances(ci.matrix, ci.matrix, metric)
    np.fill_diagonal(d_ii, np.inf)
    within_nn = d_ii.min(axis=1)
    coverage = float(np.mean(within_nn < kth))
    return PrDcComponents(density=density, coverage=coverage)


def pr_distance(ci: Corpus, cj: Corpus, k: int, metric: str | DistanceFn = "cosine") -> float:
    """1 minus the harmonic mean of precision and recall; in [0, 1]."""
    c = pr_components(ci, cj, k, metric)
    return 1.0 - _harmonic_mean(
        min(max(c.precision, 0.0), 1.0), min(max(c.recall, 0.0), 1.0)
    )


def dc_distance(ci: Corpus, cj: Corpus, k: int, metric: str | DistanceFn = "cosine") -> float:
    """1 minus the harmonic mean of density (clamped to [0, 1]) and
    coverage; in [0, 1]."""
    c = dc_components(ci, cj, k, metric)
    return 1.0 - _harmonic_mean(
        min(max(c.density, 0.0), 1.0), min(max(c.coverage, 0.0), 1.0)
    )


def _sample_mean_cov(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    mu = m.mean(axis=0)
    cov = np.atleast_2d(np.cov(m, rowvar=False))
    return mu, cov


def _sqrt_psd(mat: np.ndarray) -> np.ndarray:
    """Symmetric square root of a (numerically) PSD matrix, eigenvalues
    below ``FID_EIGENVALUE_FLOOR`` zeroed."""
    eig, vecs = np.linalg.eigh((mat + mat.T) / 2.0)
    eig = np.where(eig > FID_EIGENVALUE_FLOOR, eig, 0.0)
    return (vecs * np.sqrt(eig)) @ vecs.T


def fid(a: Corpus, b: Corpus) -> float:
    """Distance between the Gaussian fits of the two corpora:
    |mu_a - mu_b|^2 + tr(S_a + S_b - 2 (S_a S_b)^(1/2)).

    tr((S_a S_b)^(1/2)) is evaluated through the symmetrized product
    S_a^(1/2) S_b S_a^(1/2), which shares the product's eigenvalues but is
    symmetric PSD, so plain eigendecomposition with small eigenvalues
    clamped to 0 gives a real, stable result even for near-singular
    covariances. The value is symmetric in (a, b) up to floating-point
    noise.
    """
    _check_pair(a, b)
    if len(a) < 2 or len(b) < 2:
        raise ValueError("fid needs at least 2 documents per corpus (sample covariance)")
    mu_a, cov_a = _sample_mean_cov(a.matrix)
    mu_b, cov_b = _sample_mean_cov(b.matrix)
    diff = mu_a - mu_b
    root_a = _sqrt_psd(cov_a)
    sandwich = root_a @ cov_b @ root_a
    eig = np.linalg.eigvalsh((sandwich + sandwich.T) / 2.0)
    eig = np.where(eig > FID_EIGENVALUE_FLOOR, eig, 0.0)
    trace_sqrt = float(np.sqrt(eig).sum())
    return float(diff @ diff + np.trace(cov_a) + np.trace(cov_b) - 2.0 * trace_sqrt)


def evaluate_metric(
    mid: MetricId, a: Corpus, b: Corpus, doc_metric: str | DistanceFn = "cosine"
) -> float:
    """Evaluate one identified metric on a corpus pair."""
    if mid.name == "ENERGY":
        return energy_distance(a, b, doc_metric)
    if mid.name == "AHD":
        return ahd(a, b, doc_metric)
    if mid.name == "IRPR":
        return irpr(a, b, doc_metric)
    if mid.name == "PR":
        return pr_distance(a, b, mid.k, doc_metric)
    if mid.name == "DC":
        return dc_distance(a, b, mid.k, doc_metric)
    if mid.name == "FID":
        return fid(a, b)
    raise ValueError(
        f"metric {mid.label!r} is external: its values must be supplied, not computed"
    )
