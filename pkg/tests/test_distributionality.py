import math

import numpy as np
import pytest

from corpusdist import (
    DEFAULT_GRID,
    DISTRIBUTIONAL,
    NON_DISTRIBUTIONAL,
    DistanceRecord,
    MetricId,
    classify,
    density_deviation,
    ell_weights,
    kde,
    silverman_bandwidth,
    standardize,
    weighted_deviation,
)


def make_records(metric, values_by_ell, reps=1):
    """Synthetic distance records: values_by_ell maps ell -> per-pair base
    values, repeated across reps with a deterministic tweak."""
    mid = MetricId(metric) if isinstance(metric, str) else metric
    records = []
    for rep in range(1, reps + 1):
        for ell, values in values_by_ell.items():
            for i, v in enumerate(values):
                records.append(
                    DistanceRecord(
                        metric=mid, ell=ell, rep=rep, i=i, j=i + ell,
                        value=v + 0.01 * rep * (i + 1),
                    )
                )
    return records


class TestStandardize:
    def test_constant_records_rejected(self):
        recs = [
            DistanceRecord(MetricId("ENERGY"), 1, 1, i, i + 1, 3.5) for i in range(4)
        ]
        with pytest.raises(ValueError, match="zero variance"):
            standardize(recs)

    def test_two_point_standardization(self):
        recs = [
            DistanceRecord(MetricId("ENERGY"), 1, 1, 0, 1, 0.0),
            DistanceRecord(MetricId("ENERGY"), 1, 1, 1, 2, 2.0),
        ]
        table = standardize(recs)
        # Population std of {0, 2} is 1, so values map to -1 and 1.
        assert list(table.values) == [-1.0, 1.0]
        assert table.mu == 1.0
        assert table.sigma == 1.0

    def test_pooled_moments(self):
        recs = make_records("ENERGY", {1: [0.1, 0.4, 0.3], 2: [0.8, 0.2]}, reps=4)
        table = standardize(recs)
        assert abs(table.values.mean()) < 1e-9
        assert abs(table.values.std() - 1.0) < 1e-9

    def test_mixed_metrics_rejected(self):
        recs = make_records("ENERGY", {1: [0.1, 0.2]}) + make_records("AHD", {1: [0.3, 0.4]})
        with pytest.raises(ValueError, match="mix"):
            standardize(recs)

    def test_needs_two_records(self):
        recs = [DistanceRecord(MetricId("ENERGY"), 1, 1, 0, 1, 0.5)]
        with pytest.raises(ValueError, match="at least 2"):
            standardize(recs)


class TestSilvermanBandwidth:
    def test_floor_applies_to_degenerate_samples(self):
        from corpusdist.distributionality import KDE_BANDWIDTH_FLOOR

        assert silverman_bandwidth(np.array([2.0])) == KDE_BANDWIDTH_FLOOR
        assert silverman_bandwidth(np.full(10, 5.0)) == KDE_BANDWIDTH_FLOOR

    def test_rule_formula(self):
        rng = np.random.default_rng(0)
        x = rng.standard_normal(200)
        q75, q25 = np.percentile(x, [75, 25])
        want = 0.9 * min(x.std(), (q75 - q25) / 1.34) * 200 ** (-0.2)
        assert silverman_bandwidth(x) == pytest.approx(want, rel=1e-12)


class TestKde:
    def test_single_point_unit_mass(self):
        # The bandwidth floors out for a single point; on a grid fine
        # enough to resolve the floored bump, total mass sums to 1
        # within 1%.
        grid = (-0.5, 0.5, 20000)
        f = kde([0.0], grid)
        assert abs(f.mass() - 1.0) < 0.01
        assert f.densities.argmax() == 10000

    def test_symmetric_sample_symmetric_densities(self):
        f = kde([-1.0, 1.0, -0.25, 0.25], (-4.0, 4.0, 800))
        assert np.abs(f.densities - f.densities[::-1]).max() < 1e-9

    def test_matches_normal_pdf(self):
        rng = np.random.default_rng(42)
        x = rng.standard_normal(500)
        f = kde(x, DEFAULT_GRID)
        pts = f.points
        true = np.exp(-0.5 * pts**2) / math.sqrt(2 * math.pi)
        assert np.abs(f.densities - true).max() < 0.05

    def test_mass_close_to_one_for_interior_samples(self):
        rng = np.random.default_rng(7)
        f = kde(rng.standard_normal(300), DEFAULT_GRID)
        assert 0.95 <= f.mass() <= 1.0 + 1e-9

    def test_empty_sample_rejected(self):
        with pytest.raises(ValueError, match="nonempty"):
            kde([])


class TestDensityDeviation:
    def test_identical_grids_zero(self):
        f = kde([0.0, 1.0, -0.5], DEFAULT_GRID)
        assert density_deviation(f, f) == 0.0

    def test_separated_bumps_add(self):
        # Two far-apart unit bumps barely overlap, so the squared deviation
        # is close to the sum of the two squared masses.
        grid = (-8.0, 8.0, 3000)
        f = kde(np.full(5, -4.0) + np.linspace(0, 0.1, 5), grid)
        g = kde(np.full(5, 4.0) + np.linspace(0, 0.1, 5), grid)
        want = (f.densities**2).sum() * f.delta_x + (g.densities**2).sum() * g.delta_x
        assert density_deviation(f, g) == pytest.approx(want, rel=1e-6)

    def test_symmetric(self):
        f = kde([0.0, 0.5], DEFAULT_GRID)
        g = kde([1.0, 1.5], DEFAULT_GRID)
        assert density_deviation(f, g) == density_deviation(g, f)

    def test_grid_mismatch_rejected(self):
        f = kde([0.0], (-8.0, 8.0, 3000))
        g = kde([0.0], (-8.0, 8.0, 1500))
        with pytest.raises(ValueError, match="grid mismatch"):
            density_deviation(f, g)


class TestWeights:
    def test_k2_single_rep(self):
        recs = make_records("ENERGY", {1: [0.1, 0.2], 2: [0.4]})
        w = ell_weights(standardize(recs))
        assert w == {1: pytest.approx(2 / 3), 2: pytest.approx(1 / 3)}

    def test_k15_shape(self):
        values_by_ell = {l: list(np.linspace(0, 1, 16 - l)) for l in range(1, 16)}
        recs = make_records("ENERGY", values_by_ell, reps=5)
        w = ell_weights(standardize(recs))
        for l in range(1, 16):
            assert w[l] == pytest.approx((16 - l) / 120, abs=1e-15)
        assert sum(w.values()) == pytest.approx(1.0, abs=1e-12)


class TestWeightedDeviationAndClassify:
    def _tables(self, seed=0):
        rng = np.random.default_rng(seed)
        shape = {l: rng.uniform(0.2, 1.0, size=6 - l).tolist() for l in range(1, 6)}
        energy = standardize(make_records("ENERGY", shape, reps=3))
        inverted = {l: (1.5 - np.asarray(v)).tolist() for l, v in shape.items()}
        ahd_t = standardize(make_records("AHD", inverted, reps=3))
        return energy, ahd_t

    def test_self_deviation_zero(self):
        energy, ahd_t = self._tables()
        assert weighted_deviation(energy, energy) == 0.0
        assert weighted_deviation(ahd_t, ahd_t) == 0.0

    def test_design_mismatch_rejected(self):
        energy, _ = self._tables()
        other = standardize(make_records("AHD", {1: [0.1, 0.2], 2: [0.3]}))
        with pytest.raises(ValueError, match="design"):
            weighted_deviation(energy, other)

    def test_prototype_self_classification(self):
        energy, ahd_t = self._tables()
        rep_e = classify(energy, energy, ahd_t)
        assert rep_e.i_energy == 0.0
        assert rep_e.label == DISTRIBUTIONAL
        rep_a = classify(ahd_t, energy, ahd_t)
        assert rep_a.i_ahd == 0.0
        assert rep_a.label == NON_DISTRIBUTIONAL

    def test_affine_invariance(self):
        # Rescaling raw values x -> 3x + 7 changes nothing downstream.
        rng = np.random.default_rng(3)
        shape = {l: rng.uniform(0.0, 1.0, size=7 - l).tolist() for l in range(1, 7)}
        base = make_records("IRPR", shape, reps=2)
        scaled = [
            DistanceRecord(r.metric, r.ell, r.rep, r.i, r.j, 3.0 * r.value + 7.0)
            for r in base
        ]
        energy, ahd_t = self._tables(seed=5)
        # Rebuild prototypes on the same 6-level design as the candidate.
        proto_shape = {l: rng.uniform(0.2, 1.0, size=7 - l).tolist() for l in range(1, 7)}
        energy = standardize(make_records("ENERGY", proto_shape, reps=2))
        ahd_t = standardize(
            make_records("AHD", {l: (1.5 - np.asarray(v)).tolist() for l, v in proto_shape.items()}, reps=2)
        )
        rep1 = classify(standardize(base), energy, ahd_t)
        rep2 = classify(standardize(scaled), energy, ahd_t)
        assert np.abs(standardize(base).values - standardize(scaled).values).max() < 1e-9
        assert rep1.label == rep2.label
        assert rep1.i_energy == pytest.approx(rep2.i_energy, abs=1e-9)
        assert rep1.i_ahd == pytest.approx(rep2.i_ahd, abs=1e-9)
