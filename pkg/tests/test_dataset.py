import math

import numpy as np
import pytest

from gfdc.dataset import Dataset, load_csv, pairwise_distances, standardize
from gfdc.errors import DataFormatError

from _oracles import pairwise_oracle
from conftest import fixture_paths, load_truth


def test_load_headerless(tmp_path):
    path = tmp_path / "tiny.csv"
    path.write_text("0,0\n1,0\n0,1\n")
    ds = load_csv(path)
    assert ds.n == 3 and ds.w == 2
    assert ds.true_labels is None
    np.testing.assert_array_equal(ds.points, [[0, 0], [1, 0], [0, 1]])


def test_load_jain_fixture_with_label_column(tmp_path):
    csv_path, _ = fixture_paths("jain")
    truth = load_truth("jain")
    combined = tmp_path / "jain-labeled.csv"
    rows = csv_path.read_text().splitlines()
    combined.write_text(
        "x,y,label\n"
        + "\n".join(f"{row},{lab}" for row, lab in zip(rows, truth))
        + "\n"
    )

    by_index = load_csv(combined, has_header=True, label_column=2)
    assert (by_index.n, by_index.w) == (373, 2)
    assert by_index.true_labels is not None
    assert by_index.true_labels.tolist() == truth

    by_name = load_csv(combined, has_header=True, label_column="label")
    np.testing.assert_array_equal(by_name.points, by_index.points)
    assert by_name.true_labels.tolist() == truth

    by_negative = load_csv(combined, has_header=True, label_column=-1)
    assert by_negative.true_labels.tolist() == truth


def test_load_nan_cell_names_position(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("0,0\n1,nan\n2,2\n")
    with pytest.raises(DataFormatError, match="line 2, column 2"):
        load_csv(path)


def test_load_non_numeric_cell(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("0,0\n1,oops\n")
    with pytest.raises(DataFormatError, match="line 2, column 2"):
        load_csv(path)


def test_load_ragged_row(tmp_path):
    path = tmp_path / "ragged.csv"
    path.write_text("0,0\n1,1,1\n")
    with pytest.raises(DataFormatError, match="line 2"):
        load_csv(path)


def test_load_too_few_rows(tmp_path):
    path = tmp_path / "one.csv"
    path.write_text("0,0\n")
    with pytest.raises(DataFormatError, match="at least 2"):
        load_csv(path)


def test_load_missing_file(tmp_path):
    with pytest.raises(DataFormatError, match="cannot open"):
        load_csv(tmp_path / "nope.csv")


def test_load_string_labels(tmp_path):
    path = tmp_path / "named.csv"
    path.write_text("0,0,a\n1,1,b\n")
    ds = load_csv(path, label_column=2)
    assert ds.true_labels.tolist() == ["a", "b"]


def test_dataset_rejects_non_finite():
    with pytest.raises(ValueError, match="non-finite"):
        Dataset(np.array([[0.0], [np.nan]]))


def test_standardize_two_point_symmetry():
    ds = standardize(Dataset(np.array([[0.0], [2.0]])))
    np.testing.assert_allclose(ds.points, [[-1.0], [1.0]])


def test_standardize_constant_column():
    ds = standardize(Dataset(np.array([[5.0, 1.0], [5.0, 2.0], [5.0, 3.0]])))
    assert (ds.points[:, 0] == 0.0).all()


def test_standardize_matches_two_pass_oracle():
    col = [1.0, 2.0, 3.0]
    mean = sum(col) / 3
    var = sum((v - mean) ** 2 for v in col) / 3  # population variance
    expected = [(v - mean) / math.sqrt(var) for v in col]
    ds = standardize(Dataset(np.array(col).reshape(-1, 1)))
    np.testing.assert_allclose(ds.points[:, 0], expected, rtol=1e-12)


def test_standardize_idempotent():
    rng = np.random.default_rng(7)
    ds = Dataset(rng.normal(3.0, 10.0, size=(40, 4)))
    once = standardize(ds)
    twice = standardize(once)
    np.testing.assert_allclose(twice.points, once.points, atol=1e-9)


def test_pairwise_345_triangle():
    dm = pairwise_distances(Dataset(np.array([[0.0, 0.0], [3.0, 4.0]])))
    assert dm.d[0, 1] == 5.0


def test_pairwise_coincident_points():
    dm = pairwise_distances(Dataset(np.array([[1.0, 1.0], [1.0, 1.0]])))
    assert dm.d[0, 1] == 0.0


def test_pairwise_matches_per_pair_oracle():
    rng = np.random.default_rng(11)
    pts = rng.uniform(-4, 4, size=(5, 3))
    dm = pairwise_distances(Dataset(pts))
    np.testing.assert_allclose(dm.d, pairwise_oracle(pts), rtol=1e-12)


def test_pairwise_invariants():
    rng = np.random.default_rng(13)
    pts = rng.uniform(-4, 4, size=(30, 2))
    d = pairwise_distances(Dataset(pts)).d
    assert (d >= 0).all()
    assert np.array_equal(d, d.T)  # exact symmetry
    assert (np.diag(d) == 0).all()


def test_pairwise_blocking_is_transparent():
    rng = np.random.default_rng(17)
    ds = Dataset(rng.uniform(-4, 4, size=(50, 3)))
    a = pairwise_distances(ds, block=7).d
    b = pairwise_distances(ds, block=256).d
    assert np.array_equal(a, b)
