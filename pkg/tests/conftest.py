import pathlib

import numpy as np
import pytest

from gfdc.dataset import Dataset, pairwise_distances

REPO_ROOT = pathlib.Path(__file__).resolve().parent.parent
DATA_DIR = REPO_ROOT / "data"

FIXTURES = {
    "jain": 2,
    "aggregation": 7,
    "donut2": 2,
    "donut3": 3,
    "2spiral": 2,
    "zelnik3": 3,
}


def fixture_paths(name: str):
    return DATA_DIR / f"{name}.csv", DATA_DIR / f"{name}-labels.txt"


def load_truth(name: str) -> list[int]:
    _, labels_path = fixture_paths(name)
    return [int(line) for line in labels_path.read_text().splitlines() if line.strip()]


@pytest.fixture
def micro_line() -> Dataset:
    """Three collinear points at 0, 1, 3: the worked micro example."""
    return Dataset(np.array([[0.0], [1.0], [3.0]]))


@pytest.fixture
def micro_dm(micro_line):
    return pairwise_distances(micro_line)


def random_dataset(rng, n_max=50, w_max=3, n_min=3):
    n = int(rng.integers(n_min, n_max + 1))
    w = int(rng.integers(1, w_max + 1))
    pts = rng.uniform(-10.0, 10.0, size=(n, w))
    return Dataset(pts)
