import math

import numpy as np
import pytest

from corpusdist import (
    AWAY_FROM_CENTROID,
    RANDOM_DIRECTION,
    MetricId,
    MixtureSpec,
    gen_paired_sample,
    perturb,
    sweep,
)
from corpusdist.synth import sphere_point
from corpusdist.seeding import rng_from


class TestMixtureSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            MixtureSpec(q=0, m=10)
        with pytest.raises(ValueError):
            MixtureSpec(q=2, m=10, kappa=0.0)
        with pytest.raises(ValueError):
            MixtureSpec(q=2, m=2, n_components=3)
        with pytest.raises(ValueError):
            MixtureSpec(q=2, m=10, box=(3.0, 3.0))


class TestGenPairedSample:
    def test_shapes_and_pairing(self):
        s = gen_paired_sample(MixtureSpec(q=2, m=300), sigma=0.1, seed=1)
        assert len(s.A) == len(s.B) == 300
        assert s.A.pair_ids == s.B.pair_ids
        assert s.component_of.shape == (300,)
        assert s.centroids.shape == (3, 2)

    def test_sigma_bounds(self):
        spec = MixtureSpec(q=2, m=10)
        with pytest.raises(ValueError, match="sigma"):
            gen_paired_sample(spec, sigma=0.0)
        with pytest.raises(ValueError, match="sigma"):
            gen_paired_sample(spec, sigma=1.5)

    def test_jitter_norm_matches_chi_mean(self):
        # |b - a| is sigma times a chi(q) variable; at q=2 its mean is
        # sigma * sqrt(pi / 2). Monte-Carlo agreement within 5%.
        sigma = 0.1
        s = gen_paired_sample(MixtureSpec(q=2, m=300), sigma=sigma, seed=2)
        norms = np.linalg.norm(s.B.matrix - s.A.matrix, axis=1)
        want = sigma * math.sqrt(math.pi / 2.0)
        assert abs(norms.mean() - want) / want < 0.05

    def test_degenerate_jitter(self):
        s = gen_paired_sample(MixtureSpec(q=2, m=50), sigma=1e-9, seed=3)
        assert np.linalg.norm(s.B.matrix - s.A.matrix, axis=1).max() < 1e-7

    def test_pairs_closer_than_within_component(self):
        # Mean paired distance stays below the mean distance between
        # unrelated points of the same component when sigma <= kappa / 10.
        for seed in range(5):
            s = gen_paired_sample(MixtureSpec(q=2, m=120), sigma=0.1, seed=seed)
            paired = np.linalg.norm(s.B.matrix - s.A.matrix, axis=1).mean()
            cross = []
            for comp in range(3):
                idx = np.flatnonzero(s.component_of == comp)
                for i in idx:
                    for j in idx:
                        if i != j:
                            cross.append(
                                np.linalg.norm(s.A.matrix[i] - s.B.matrix[j])
                            )
            assert paired < np.mean(cross)

    def test_deterministic(self):
        s1 = gen_paired_sample(MixtureSpec(q=3, m=30), sigma=0.05, seed=9)
        s2 = gen_paired_sample(MixtureSpec(q=3, m=30), sigma=0.05, seed=9)
        assert np.array_equal(s1.A.matrix, s2.A.matrix)
        assert np.array_equal(s1.B.matrix, s2.B.matrix)
        assert np.array_equal(s1.centroids, s2.centroids)


class TestSpherePoint:
    def test_norm_and_mean(self):
        rng = rng_from(17)
        draws = np.stack([sphere_point(3, 2.5, rng) for _ in range(100_000)])
        norms = np.linalg.norm(draws, axis=1)
        assert np.abs(norms - 2.5).max() < 1e-9
        assert np.linalg.norm(draws.mean(axis=0)) < 0.01 * 2.5


class TestPerturb:
    def _sample(self, m=300, q=2, seed=4):
        return gen_paired_sample(MixtureSpec(q=q, m=m), sigma=0.1, seed=seed)

    def test_zero_delta_is_identity(self):
        s = self._sample()
        out, moved = perturb(s.B, s.centroids, s.component_of, p=0.1, delta=0.0, seed=1)
        assert np.array_equal(out.matrix, s.B.matrix)
        assert len(moved) == 30

    def test_single_point_move(self):
        s = self._sample(m=50)
        out, moved = perturb(s.B, s.centroids, s.component_of, p=0.02, delta=2.0, seed=2)
        assert len(moved) == 1
        disp = np.linalg.norm(out.matrix[moved[0]] - s.B.matrix[moved[0]])
        assert abs(disp - 2.0) < 1e-9

    def test_displacement_audit(self):
        # p=0.1 of 300 points: exactly 30 move by exactly delta, the other
        # 270 rows stay bit-identical.
        s = self._sample()
        delta = 3.0
        out, moved = perturb(s.B, s.centroids, s.component_of, p=0.1, delta=delta, seed=3)
        assert len(moved) == 30
        disp = np.linalg.norm(out.matrix[moved] - s.B.matrix[moved], axis=1)
        assert np.abs(disp - delta).max() < 1e-9
        untouched = np.setdiff1d(np.arange(300), moved)
        assert np.array_equal(out.matrix[untouched], s.B.matrix[untouched])

    def test_moved_group_is_neighborhood_shift(self):
        # All moved points share one displacement vector.
        s = self._sample()
        out, moved = perturb(s.B, s.centroids, s.component_of, p=0.1, delta=3.0, seed=5)
        shifts = out.matrix[moved] - s.B.matrix[moved]
        assert np.abs(shifts - shifts[0]).max() < 1e-12

    def test_random_direction(self):
        s = self._sample()
        out, moved = perturb(
            s.B, s.centroids, s.component_of, p=0.1, delta=1.5,
            direction=RANDOM_DIRECTION, seed=6,
        )
        disp = np.linalg.norm(out.matrix[moved] - s.B.matrix[moved], axis=1)
        assert np.abs(disp - 1.5).max() < 1e-9

    def test_validation(self):
        s = self._sample(m=50)
        with pytest.raises(ValueError, match="p must be"):
            perturb(s.B, s.centroids, s.component_of, p=0.0, delta=1.0)
        with pytest.raises(ValueError, match="delta"):
            perturb(s.B, s.centroids, s.component_of, p=0.1, delta=-1.0)
        with pytest.raises(ValueError, match="nothing to move"):
            perturb(s.B, s.centroids, s.component_of, p=0.001, delta=1.0)
        with pytest.raises(ValueError, match="direction"):
            perturb(s.B, s.centroids, s.component_of, p=0.1, delta=1.0, direction="sideways")

    def test_deterministic(self):
        s = self._sample()
        o1, m1 = perturb(s.B, s.centroids, s.component_of, p=0.1, delta=2.0, seed=8)
        o2, m2 = perturb(s.B, s.centroids, s.component_of, p=0.1, delta=2.0, seed=8)
        assert np.array_equal(o1.matrix, o2.matrix)
        assert np.array_equal(m1, m2)


class TestSweep:
    def _sample(self):
        return gen_paired_sample(MixtureSpec(q=2, m=40), sigma=0.1, seed=11)

    def test_single_cell(self):
        recs = sweep(
            self._sample(), "delta", [1.0],
            metrics=[MetricId("ENERGY")], reps=1, seed=0,
        )
        assert len(recs) == 1
        r = recs[0]
        assert (r.grid_axis, r.grid_value, r.rep) == ("delta", 1.0, 1)

    def test_row_counts_and_order(self):
        mids = [MetricId("ENERGY"), MetricId("IRPR")]
        recs = sweep(self._sample(), "delta", [0.0, 2.0], metrics=mids, reps=3, seed=1)
        assert len(recs) == 2 * 2 * 3
        keys = [(r.metric.sort_key, r.grid_value, r.rep) for r in recs]
        assert keys == sorted(keys)

    def test_zero_delta_equals_unperturbed_distance(self):
        from corpusdist import energy_distance

        s = self._sample()
        recs = sweep(s, "delta", [0.0], metrics=[MetricId("ENERGY")], reps=2, seed=2)
        base = energy_distance(s.A, s.B, "euclidean")
        assert all(r.value == base for r in recs)

    def test_p_axis(self):
        recs = sweep(self._sample(), "p", [0.1, 0.5], metrics=[MetricId("AHD")], reps=2, seed=3)
        assert {r.grid_value for r in recs} == {0.1, 0.5}

    def test_q_axis_regenerates_samples(self):
        mix = MixtureSpec(q=2, m=30)
        recs = sweep(
            None, "q", [2, 4],
            metrics=[MetricId("ENERGY")], reps=2,
            mixture=mix, sigma=0.1, seed=4,
        )
        assert len(recs) == 4

    def test_q_axis_needs_mixture(self):
        with pytest.raises(ValueError, match="mixture"):
            sweep(None, "q", [2], metrics=[MetricId("ENERGY")], sigma=None, seed=0)

    def test_unknown_axis(self):
        with pytest.raises(ValueError, match="axis"):
            sweep(self._sample(), "delta_and_p", [1.0], metrics=[MetricId("ENERGY")])

    def test_deterministic(self):
        s = self._sample()
        mids = [MetricId("ENERGY")]
        r1 = sweep(s, "delta", [0.0, 1.0], metrics=mids, reps=2, seed=5)
        r2 = sweep(s, "delta", [0.0, 1.0], metrics=mids, reps=2, seed=5)
        assert r1 == r2

    def test_metric_list_does_not_perturb_sampling(self):
        s = self._sample()
        only = sweep(s, "delta", [1.0], metrics=[MetricId("ENERGY")], reps=2, seed=6)
        both = sweep(
            s, "delta", [1.0],
            metrics=[MetricId("ENERGY"), MetricId("AHD")], reps=2, seed=6,
        )
        assert [r for r in both if r.metric.name == "ENERGY"] == only
