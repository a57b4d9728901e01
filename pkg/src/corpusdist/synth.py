"""Synthetic paired samples and group-shift perturbations.

The generator draws sample A from a Gaussian mixture (components filled in
equal proportions around centroids placed uniformly in a box) and pairs
each a_i with b_i = a_i + N(0, sigma^2 I), sigma well below the component
spread, so paired points sit closer together than unpaired points from the
same component. This doubles as an embedding-free stand-in for paired
paraphrase corpora.

``perturb`` applies the local group shift used in the sensitivity sweeps:
the k = round(p * n) nearest neighbors of a random origin point (origin
included) are translated rigidly by a vector of exact length delta, either
away from the origin's mixture centroid or in a uniform random direction.
``sweep`` repeats it over a one-axis grid and scores every requested
corpus metric on d(A, B').
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .metrics import MetricId, evaluate_metric
from .seeding import derive_seed, rng_from
from .vectorspace import Corpus, DistanceFn, knn

__all__ = [
    "MixtureSpec",
    "PairedSample",
    "SweepRecord",
    "AWAY_FROM_CENTROID",
    "RANDOM_DIRECTION",
    "SWEEP_AXES",
    "gen_paired_sample",
    "sphere_point",
    "perturb",
    "sweep",
]

AWAY_FROM_CENTROID = "away_from_centroid"
RANDOM_DIRECTION = "random"

SWEEP_AXES = ("delta", "p", "q")

# Stream tags for child-seed derivation inside sweep().
_STREAM_GEN = 0
_STREAM_PERTURB = 1


@dataclass(frozen=True)
class MixtureSpec:
    """Gaussian mixture sampling parameters: dimension q, sample size m,
    component count, per-coordinate component std-dev kappa, and the
    centroid sampling box (low, high) applied to every coordinate."""

    q: int
    m: int
    n_components: int = 3
    kappa: float = 1.0
    box: tuple[float, float] = (-10.0, 10.0)

    def __post_init__(self):
        if self.q < 1:
            raise ValueError(f"q must be >= 1, got {self.q}")
        if self.n_components < 1:
            raise ValueError(f"n_components must be >= 1, got {self.n_components}")
        if self.kappa <= 0:
            raise ValueError(f"kappa must be > 0, got {self.kappa}")
        if self.m < self.n_components:
            raise ValueError(f"m must be >= n_components, got m={self.m}")
        if not self.box[0] < self.box[1]:
            raise ValueError(f"invalid centroid box {self.box}")


@dataclass
class PairedSample:
    """Paired corpora A, B plus the mixture bookkeeping needed to perturb
    them: per-index component assignment and the component centroids."""

    A: Corpus
    B: Corpus
    component_of: np.ndarray
    centroids: np.ndarray


@dataclass(frozen=True)
class SweepRecord:
    """One scored perturbation cell of a sweep."""

    metric: MetricId
    grid_axis: str
    grid_value: float
    rep: int
    value: float


def gen_paired_sample(spec: MixtureSpec, sigma: float, seed: int = 0) -> PairedSample:
    """Draw a paired sample: a_i from the mixture, b_i jittered from a_i.

    ``sigma`` is the per-coordinate jitter std-dev and must satisfy
    0 < sigma < spec.kappa so pairs stay closer than unrelated points.
    kappa and sigma both scale standard deviations (covariances kappa^2 I
    and sigma^2 I).
    """
    if not 0.0 < sigma < spec.kappa:
        raise ValueError(f"need 0 < sigma < kappa, got sigma={sigma}, kappa={spec.kappa}")
    rng = rng_from(seed)
    centroids = rng.uniform(spec.box[0], spec.box[1], size=(spec.n_components, spec.q))
    base, extra = divmod(spec.m, spec.n_components)
    counts = [base + (1 if c < extra else 0) for c in range(spec.n_components)]
    component_of = np.repeat(np.arange(spec.n_components), counts)
    a = centroids[component_of] + spec.kappa * rng.standard_normal((spec.m, spec.q))
    b = a + sigma * rng.standard_normal((spec.m, spec.q))
    corpus_a = Corpus.from_matrix(a, ids=[f"a{i}" for i in range(spec.m)],
                                  pair_ids=[f"p{i}" for i in range(spec.m)])
    corpus_b = Corpus.from_matrix(b, ids=[f"b{i}" for i in range(spec.m)],
                                  pair_ids=[f"p{i}" for i in range(spec.m)])
    return PairedSample(A=corpus_a, B=corpus_b, component_of=component_of, centroids=centroids)


def sphere_point(q: int, radius: float, rng: np.random.Generator) -> np.ndarray:
    """Uniform point on the radius-`radius` sphere in R^q, via a normalized
    Gaussian draw. The shift length is therefore exactly `radius` in any
    dimension."""
    while True:
        g = rng.standard_normal(q)
        norm = np.linalg.norm(g)
        if norm > 0.0:
            return radius * g / norm


def perturb(
    b: Corpus,
    centroids: np.ndarray,
    component_of: np.ndarray,
    p: float,
    delta: float,
    direction: str = AWAY_FROM_CENTROID,
    seed: int = 0,
) -> tuple[Corpus, np.ndarray]:
    """Rigidly translate the round(p * |b|) nearest neighbors of a random
    origin point by a vector of length delta.

    Returns the perturbed corpus and the sorted moved indices. Unmoved
    rows are bit-identical to the input. An origin that coincides with its
    centroid (undefined "away" direction) is redrawn; this is a
    probability-zero event under continuous sampling.
    """
    if not 0.0 < p <= 1.0:
        raise ValueError(f"p must be in (0, 1], got {p}")
    if delta < 0.0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    n = len(b)
    k = int(math.floor(p * n + 0.5))
    if k == 0:
        raise ValueError(f"round(p * n) = 0 for p={p}, n={n}; nothing to move")
    rng = rng_from(seed)
    if direction == AWAY_FROM_CENTROID:
        for _ in range(n):
            origin = int(rng.integers(n))
            radial = b.matrix[origin] - centroids[component_of[origin]]
            norm = float(np.linalg.norm(radial))
            if norm > 0.0:
                break
        else:
            raise ValueError("every candidate origin coincides with its centroid")
        shift = delta * radial / norm
    elif direction == RANDOM_DIRECTION:
        origin = int(rng.integers(n))
        shift = sphere_point(b.dim, delta, rng)
    else:
        raise ValueError(f"unknown direction {direction!r}")
    moved = knn(origin, b, k, exclude_self=False, metric="euclidean")
    moved = np.sort(moved)
    out = b.matrix.copy()
    out[moved] += shift
    return Corpus.from_matrix(out, ids=list(b.ids), pair_ids=list(b.pair_ids)), moved


def sweep(
    sample: PairedSample | None,
    axis: str,
    values: Sequence[float],
    *,
    metrics: Sequence[MetricId],
    reps: int = 20,
    p: float = 0.1,
    delta: float = 3.0,
    direction: str = AWAY_FROM_CENTROID,
    doc_metric: str | DistanceFn = "euclidean",
    mixture: MixtureSpec | None = None,
    sigma: float | None = None,
    seed: int = 0,
) -> list[SweepRecord]:
    """Score d(A, B') for every metric over a one-axis perturbation grid.

    Exactly one parameter varies: axis "delta" or "p" perturbs the fixed
    input sample with the grid value substituted, while axis "q" generates
    a fresh paired sample per grid value (``mixture`` and ``sigma``
    required) and perturbs it at the fixed (p, delta). Each grid value is
    perturbed ``reps`` times with a freshly drawn origin point, and all
    metrics score the same perturbed corpus within a repetition.

    Child seeds derive from (seed, stream, grid_index[, rep]) so cells are
    independent and reordering the metric list never changes the sampling.
    """
    if axis not in SWEEP_AXES:
        raise ValueError(f"axis must be one of {SWEEP_AXES}, got {axis!r}")
    if not values:
        raise ValueError("empty sweep grid")
    if reps < 1:
        raise ValueError(f"reps must be >= 1, got {reps}")
    if not metrics:
        raise ValueError("need at least one metric")
    if axis == "q":
        if mixture is None or sigma is None:
            raise ValueError("axis 'q' needs mixture spec and sigma to regenerate samples")
    elif sample is None:
        raise ValueError(f"axis {axis!r} needs a paired sample")

    records: list[SweepRecord] = []
    for gi, value in enumerate(values):
        p_cell, delta_cell, cell = p, delta, sample
        if axis == "delta":
            delta_cell = float(value)
        elif axis == "p":
            p_cell = float(value)
        else:
            spec_q = replace(mixture, q=int(value))
            cell = gen_paired_sample(spec_q, sigma, seed=derive_seed(seed, _STREAM_GEN, gi))
        for rep in range(1, reps + 1):
            perturbed, _ = perturb(
                cell.B,
                cell.centroids,
                cell.component_of,
                p=p_cell,
                delta=delta_cell,
                direction=direction,
                seed=derive_seed(seed, _STREAM_PERTURB, gi, rep),
            )
            for mid in metrics:
                records.append(
                    SweepRecord(
                        metric=mid,
                        grid_axis=axis,
                        grid_value=float(value),
                        rep=rep,
                        value=evaluate_metric(mid, cell.A, perturbed, doc_metric),
                    )
                )
    order = {float(v): gi for gi, v in enumerate(values)}
    records.sort(key=lambda r: (r.metric.sort_key, order[r.grid_value], r.rep))
    return records
