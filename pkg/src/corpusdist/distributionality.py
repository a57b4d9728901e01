"""Distributionality scoring of corpus metrics from their KSC trajectories.

Raw distance scales differ between metrics, so each metric's pooled KSC
distances are first standardized to mean 0 / std 1 (one pooled mean and
std across every separation level and repetition; the trajectory shape is
what survives). For each separation level ell, a Gaussian kernel density
estimate of the standardized level sample is evaluated on a fixed grid,
and two metrics are compared by the discretized integrated squared
difference of those per-level densities, weighted by each level's share of
the pooled sample. A candidate metric is then labeled by whichever
prototype trajectory it deviates from least: the energy statistic
(distributional prototype) or the average Hausdorff distance
(non-distributional prototype).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .ksc import DistanceRecord
from .metrics import MetricId

__all__ = [
    "DEFAULT_GRID",
    "KDE_BANDWIDTH_FLOOR",
    "DISTRIBUTIONAL",
    "NON_DISTRIBUTIONAL",
    "StandardizedTable",
    "KdeGrid",
    "DeviationReport",
    "standardize",
    "silverman_bandwidth",
    "kde",
    "density_deviation",
    "ell_weights",
    "weighted_deviation",
    "classify",
]

# Evaluation window and interval count for all density comparisons. The
# window is wide relative to standardized values, which have pooled std 1.
DEFAULT_GRID = (-8.0, 8.0, 3000)

# Lower bound on the kernel bandwidth. Degenerate level samples are
# structural in a KSC table (the endpoint pair is the same corpus pair in
# every repetition, so its R values coincide), and the floor must keep
# even those point-mass densities resolvable on the default grid
# (spacing 16/3000 ~ 0.0053): a narrower kernel aliases into a Riemann
# mass anywhere between 0 and 2, which both breaks the unit-mass property
# and injects location-lottery noise into every deviation score. 0.01 is
# about twice the default grid spacing, making every floored kernel carry
# the same discretized energy.
KDE_BANDWIDTH_FLOOR = 1e-2

DISTRIBUTIONAL = "DISTRIBUTIONAL"
NON_DISTRIBUTIONAL = "NON_DISTRIBUTIONAL"


@dataclass
class StandardizedTable:
    """One metric's standardized KSC distances with their (ell, rep)
    labels, plus the pooled moments that were removed."""

    metric: MetricId
    ell: np.ndarray
    rep: np.ndarray
    values: np.ndarray
    mu: float
    sigma: float

    def ells(self) -> np.ndarray:
        return np.unique(self.ell)

    def values_at(self, ell: int) -> np.ndarray:
        return self.values[self.ell == ell]


@dataclass(frozen=True, eq=False)
class KdeGrid:
    """Density estimate sampled at the c+1 points a + i*(b-a)/c, i=0..c."""

    a: float
    b: float
    c: int
    densities: np.ndarray

    @property
    def delta_x(self) -> float:
        return (self.b - self.a) / self.c

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.a, self.b, self.c + 1)

    def mass(self) -> float:
        """Riemann-sum total mass; close to 1 for samples well inside
        (a, b) with bandwidth above the grid spacing."""
        return float(self.densities.sum() * self.delta_x)


@dataclass(frozen=True)
class DeviationReport:
    """Weighted deviations of one candidate metric from the two prototype
    trajectories, and the resulting label (ties go to DISTRIBUTIONAL)."""

    metric: MetricId
    i_energy: float
    i_ahd: float
    label: str


def standardize(records: Sequence[DistanceRecord]) -> StandardizedTable:
    """Center and scale one metric's records by their pooled mean and
    population std-dev, preserving the (ell, rep) labels.

    A zero pooled std means the metric is degenerate on this sample and is
    an error rather than a silent division.
    """
    records = list(records)
    if len(records) < 2:
        raise ValueError("standardization needs at least 2 records")
    mids = {r.metric for r in records}
    if len(mids) != 1:
        raise ValueError(f"records mix several metrics: {sorted(m.label for m in mids)}")
    values = np.array([r.value for r in records], dtype=np.float64)
    mu = float(values.mean())
    sigma = float(values.std())
    if sigma == 0.0:
        raise ValueError(
            f"metric {next(iter(mids)).label} has zero variance on this sample"
        )
    return StandardizedTable(
        metric=next(iter(mids)),
        ell=np.array([r.ell for r in records], dtype=np.int64),
        rep=np.array([r.rep for r in records], dtype=np.int64),
        values=(values - mu) / sigma,
        mu=mu,
        sigma=sigma,
    )


def silverman_bandwidth(sample: np.ndarray) -> float:
    """0.9 * min(std, IQR / 1.34) * n^(-1/5), floored at
    ``KDE_BANDWIDTH_FLOOR`` so degenerate samples still yield a density."""
    x = np.asarray(sample, dtype=np.float64)
    std = float(x.std())
    q75, q25 = np.percentile(x, [75, 25])
    spread = min(std, float(q75 - q25) / 1.34)
    return max(0.9 * spread * len(x) ** (-0.2), KDE_BANDWIDTH_FLOOR)


def kde(sample, grid: tuple[float, float, int] = DEFAULT_GRID) -> KdeGrid:
    """Gaussian-kernel density estimate of a scalar sample on a fixed grid."""
    x = np.asarray(sample, dtype=np.float64)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("kde expects a nonempty 1-D sample")
    a, b, c = float(grid[0]), float(grid[1]), int(grid[2])
    if not (a < b and c >= 1):
        raise ValueError(f"invalid grid {grid}")
    h = silverman_bandwidth(x)
    points = np.linspace(a, b, c + 1)
    z = (points[:, None] - x[None, :]) / h
    dens = np.exp(-0.5 * z * z).sum(axis=1) / (x.size * h * np.sqrt(2.0 * np.pi))
    return KdeGrid(a=a, b=b, c=c, densities=dens)


def density_deviation(f: KdeGrid, g: KdeGrid) -> float:
    """Discretized integrated squared difference between two density grids:
    sum over all c+1 grid points of (f - g)^2 * delta_x. Symmetric,
    nonnegative, exactly 0 for identical grids."""
    if (f.a, f.b, f.c) != (g.a, g.b, g.c):
        raise ValueError(
            f"grid mismatch: ({f.a}, {f.b}, {f.c}) vs ({g.a}, {g.b}, {g.c})"
        )
    diff = f.densities - g.densities
    return float((diff * diff).sum() * f.delta_x)


def ell_weights(table: StandardizedTable) -> dict[int, float]:
    """Share of the pooled sample contributed by each separation level;
    the weights sum to 1."""
    total = table.values.size
    return {int(l): float((table.ell == l).sum()) / total for l in table.ells()}


def _check_same_design(v: StandardizedTable, w: StandardizedTable):
    v_counts = {int(l): int((v.ell == l).sum()) for l in v.ells()}
    w_counts = {int(l): int((w.ell == l).sum()) for l in w.ells()}
    if v_counts != w_counts:
        raise ValueError(
            f"metrics {v.metric.label} and {w.metric.label} were not evaluated "
            f"on the same KSC design (per-level counts differ)"
        )


def weighted_deviation(
    v: StandardizedTable,
    w: StandardizedTable,
    grid: tuple[float, float, int] = DEFAULT_GRID,
) -> float:
    """Level-weighted total density deviation between two metrics'
    standardized trajectories."""
    _check_same_design(v, w)
    weights = ell_weights(v)
    total = 0.0
    for l, weight in weights.items():
        f_v = kde(v.values_at(l), grid)
        f_w = kde(w.values_at(l), grid)
        total += weight * density_deviation(f_v, f_w)
    return total


def classify(
    candidate: StandardizedTable,
    energy: StandardizedTable,
    ahd: StandardizedTable,
    grid: tuple[float, float, int] = DEFAULT_GRID,
) -> DeviationReport:
    """Label a candidate metric by its nearer prototype trajectory."""
    i_energy = weighted_deviation(candidate, energy, grid)
    i_ahd = weighted_deviation(candidate, ahd, grid)
    label = DISTRIBUTIONAL if i_energy <= i_ahd else NON_DISTRIBUTIONAL
    return DeviationReport(metric=candidate.metric, i_energy=i_energy, i_ahd=i_ahd, label=label)
