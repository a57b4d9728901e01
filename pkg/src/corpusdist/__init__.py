"""Corpus distance metrics, known-similarity corpus experiments, and
distributionality scoring for vector-embedded document sets."""

__version__ = "0.1.0"

from .vectorspace import (
    Corpus,
    EmbeddedDoc,
    cosine_distance,
    euclidean_distance,
    knn,
    pairwise_distances,
)
from .metrics import (
    MetricId,
    PrDcComponents,
    ahd,
    dc_components,
    dc_distance,
    directed_avg_nn,
    energy_distance,
    evaluate_metric,
    fid,
    irpr,
    pr_components,
    pr_distance,
)
from .ksc import DistanceRecord, KscSet, build_ksc, distance_table, ell_pairs
from .synth import (
    AWAY_FROM_CENTROID,
    RANDOM_DIRECTION,
    MixtureSpec,
    PairedSample,
    SweepRecord,
    gen_paired_sample,
    perturb,
    sweep,
)
from .distributionality import (
    DEFAULT_GRID,
    DISTRIBUTIONAL,
    NON_DISTRIBUTIONAL,
    DeviationReport,
    KdeGrid,
    StandardizedTable,
    classify,
    density_deviation,
    ell_weights,
    kde,
    silverman_bandwidth,
    standardize,
    weighted_deviation,
)

__all__ = [
    "__version__",
    "Corpus",
    "EmbeddedDoc",
    "cosine_distance",
    "euclidean_distance",
    "knn",
    "pairwise_distances",
    "MetricId",
    "PrDcComponents",
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
    "KscSet",
    "DistanceRecord",
    "build_ksc",
    "ell_pairs",
    "distance_table",
    "MixtureSpec",
    "PairedSample",
    "SweepRecord",
    "AWAY_FROM_CENTROID",
    "RANDOM_DIRECTION",
    "gen_paired_sample",
    "perturb",
    "sweep",
    "StandardizedTable",
    "KdeGrid",
    "DeviationReport",
    "DEFAULT_GRID",
    "DISTRIBUTIONAL",
    "NON_DISTRIBUTIONAL",
    "standardize",
    "silverman_bandwidth",
    "kde",
    "density_deviation",
    "ell_weights",
    "weighted_deviation",
    "classify",
]
