import math

import numpy as np
import pytest

from gfdc import _density_py
from gfdc.dataset import Dataset, pairwise_distances
from gfdc.density import (
    KERNEL_BACKEND,
    default_k,
    neighborhood_count,
    optimal_radius,
    relative_density,
    sparse_degree_table,
)

from _oracles import density_oracle
from conftest import random_dataset

try:
    from gfdc import _core
except ImportError:
    _core = None


def test_neighborhood_count_zero_radius(micro_dm):
    assert neighborhood_count(micro_dm, 0, 0.0) == 1


def test_neighborhood_count_micro(micro_dm):
    assert neighborhood_count(micro_dm, 0, 1.0) == 2
    assert neighborhood_count(micro_dm, 0, 3.0) == 3


def test_neighborhood_count_rejects_negative_radius(micro_dm):
    with pytest.raises(ValueError):
        neighborhood_count(micro_dm, 0, -0.1)


def test_relative_density_unit_radius():
    dm = pairwise_distances(Dataset(np.array([[0.0, 0.0], [1.0, 0.0]])))
    assert relative_density(dm, 0, 1.0) == math.log(2.0)


def test_relative_density_micro_values(micro_dm):
    # raw ratios 2/1 and 3/3 for the point at 0
    assert math.isclose(math.exp(relative_density(micro_dm, 0, 1.0)), 2.0)
    assert math.isclose(math.exp(relative_density(micro_dm, 0, 3.0)), 1.0)


def test_relative_density_high_dimension_is_finite():
    # raw 10/2**60 would underflow toward 0; the log value stays usable
    pts = np.zeros((12, 60))
    pts[10] = 2.0 / math.sqrt(60.0)
    pts[11] = 5.0
    dm = pairwise_distances(Dataset(pts))
    value = relative_density(dm, 0, 2.0)
    assert math.isfinite(value)
    assert value == math.log(11) - 60.0 * math.log(2.0)


def test_relative_density_rejects_nonpositive_radius(micro_dm):
    with pytest.raises(ValueError):
        relative_density(micro_dm, 0, 0.0)


def test_optimal_radius_micro(micro_dm):
    assert optimal_radius(micro_dm, 0) == 1.0
    assert optimal_radius(micro_dm, 1) == 1.0
    # exact value tie between radius 2 (count 2) and radius 3 (count 3):
    # the smaller radius wins
    assert optimal_radius(micro_dm, 2) == 2.0


def test_optimal_radius_two_points():
    dm = pairwise_distances(Dataset(np.array([[0.0], [7.5]])))
    assert optimal_radius(dm, 0) == 7.5
    assert optimal_radius(dm, 1) == 7.5


def test_optimal_radius_all_duplicates():
    dm = pairwise_distances(Dataset(np.array([[1.0], [1.0], [1.0]])))
    assert optimal_radius(dm, 0) == 0.0


def test_sparse_degree_table_micro(micro_dm):
    table = sparse_degree_table(micro_dm, 2)
    np.testing.assert_array_equal(table.r_star, [1.0, 1.0, 2.0])
    np.testing.assert_array_equal(table.knn_dist, [3.0, 2.0, 3.0])
    np.testing.assert_array_equal(table.sd, [4.0, 3.0, 5.0])
    np.testing.assert_array_equal(table.neighbor_order, [[1, 2], [0, 2], [1, 0]])


def test_sparse_degree_table_two_points():
    dm = pairwise_distances(Dataset(np.array([[0.0], [3.0]])))
    table = sparse_degree_table(dm, 1)
    np.testing.assert_array_equal(table.sd, [6.0, 6.0])


def test_sparse_degree_table_k_bounds(micro_dm):
    with pytest.raises(ValueError):
        sparse_degree_table(micro_dm, 0)
    with pytest.raises(ValueError):
        sparse_degree_table(micro_dm, 3)


def test_default_k():
    assert default_k(373) == 9
    assert default_k(373, c=2) == 9
    assert default_k(373, c=15) == 15
    assert default_k(2) == 1
    assert default_k(4) == 2
    assert default_k(5) == 3


def test_degenerate_samples_flagged():
    dm = pairwise_distances(Dataset(np.array([[1.0], [1.0], [1.0]])))
    table = sparse_degree_table(dm, 1)
    assert table.degenerate_samples.tolist() == [0, 1, 2]
    assert (table.sd == 0.0).all()


def test_duplicate_with_distinct_peer_not_degenerate():
    dm = pairwise_distances(Dataset(np.array([[0.0], [0.0], [9.0]])))
    table = sparse_degree_table(dm, 1)
    # duplicates still have the distinct peer as a radius candidate
    np.testing.assert_array_equal(table.r_star, [9.0, 9.0, 9.0])
    np.testing.assert_array_equal(table.knn_dist, [0.0, 0.0, 9.0])
    assert table.degenerate_samples.size == 0


def test_table_matches_bruteforce_oracle():
    rng = np.random.default_rng(101)
    for _ in range(25):
        ds = random_dataset(rng, n_max=30)
        dm = pairwise_distances(ds)
        k = int(rng.integers(1, ds.n))
        table = sparse_degree_table(dm, k)
        r_star, knn, sd = density_oracle(dm.d, ds.w, k)
        np.testing.assert_array_equal(table.r_star, r_star)
        np.testing.assert_array_equal(table.knn_dist, knn)
        np.testing.assert_array_equal(table.sd, sd)


def test_log_domain_argmax_matches_raw_ratio():
    rng = np.random.default_rng(103)
    for _ in range(25):
        ds = random_dataset(rng, n_max=25)
        dm = pairwise_distances(ds)
        table = sparse_degree_table(dm, 1)
        r_star, _, _ = density_oracle(dm.d, ds.w, 1)
        np.testing.assert_array_equal(table.r_star, r_star)


def test_scaling_by_power_of_two_is_exact():
    rng = np.random.default_rng(105)
    pts = rng.uniform(-3, 3, size=(40, 2))
    k = 5
    base = sparse_degree_table(pairwise_distances(Dataset(pts)), k)
    for s in (2.0, 0.5, 4096.0):
        scaled = sparse_degree_table(pairwise_distances(Dataset(pts * s)), k)
        np.testing.assert_array_equal(scaled.r_star, base.r_star * s)
        np.testing.assert_array_equal(scaled.knn_dist, base.knn_dist * s)
        np.testing.assert_array_equal(scaled.sd, base.r_star * s + base.knn_dist * s)
        np.testing.assert_array_equal(scaled.neighbor_order, base.neighbor_order)


def test_scaling_preserves_decisions_generally():
    rng = np.random.default_rng(107)
    pts = rng.uniform(-3, 3, size=(40, 3))
    k = 4
    base = sparse_degree_table(pairwise_distances(Dataset(pts)), k)
    for s in (3.7, 0.013):
        scaled = sparse_degree_table(pairwise_distances(Dataset(pts * s)), k)
        np.testing.assert_array_equal(scaled.neighbor_order, base.neighbor_order)
        np.testing.assert_allclose(scaled.sd, base.sd * s, rtol=1e-12)


def test_permutation_equivariance():
    rng = np.random.default_rng(109)
    pts = rng.uniform(-3, 3, size=(35, 2))
    pts[5] = pts[3]  # include a duplicate
    k = 6
    base = sparse_degree_table(pairwise_distances(Dataset(pts)), k)
    perm = rng.permutation(35)
    permuted = sparse_degree_table(pairwise_distances(Dataset(pts[perm])), k)
    np.testing.assert_array_equal(permuted.sd, base.sd[perm])
    np.testing.assert_array_equal(permuted.r_star, base.r_star[perm])
    np.testing.assert_array_equal(permuted.knn_dist, base.knn_dist[perm])


def test_knn_dist_nondecreasing_in_k():
    rng = np.random.default_rng(111)
    ds = random_dataset(rng, n_max=20, n_min=6)
    dm = pairwise_distances(ds)
    tables = [sparse_degree_table(dm, k) for k in range(1, ds.n)]
    for a, b in zip(tables, tables[1:]):
        assert (b.knn_dist >= a.knn_dist).all()


@pytest.mark.skipif(_core is None, reason="compiled kernel not built")
def test_backends_bit_identical():
    rng = np.random.default_rng(113)
    for trial in range(30):
        ds = random_dataset(rng, n_max=50)
        pts = ds.points.copy()
        if trial % 3 == 0:
            pts[1] = pts[0]
        if trial % 4 == 0:
            pts = np.round(pts)  # heavy distance ties
        dm = pairwise_distances(Dataset(pts))
        k = int(rng.integers(1, dm.n))
        compiled = _core.sparse_degree_kernel(np.ascontiguousarray(dm.d), k, dm.w)
        pure = _density_py.sparse_degree_kernel(dm.d, k, dm.w)
        for got, want in zip(compiled, pure):
            np.testing.assert_array_equal(got, want)


def test_backend_reported():
    assert KERNEL_BACKEND in ("compiled", "python")
