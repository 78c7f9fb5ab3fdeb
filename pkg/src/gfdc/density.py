"""Per-sample density measurement via the sparse degree.

Each sample gets an optimal-granularity radius ``r_star`` (the neighborhood
radius maximizing relative density), the distance to its k-th nearest
neighbor ``knn_dist``, and their sum ``sd`` (the sparse degree). Lower sparse
degree means denser. The heavy per-sample scan runs in the compiled
``gfdc._core`` kernel when available, otherwise in a bit-identical
pure-Python fallback; set ``GFDC_PURE_PYTHON=1`` before import to force the
fallback.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from . import _density_py
from .dataset import DistanceMatrix

__all__ = [
    "SparseDegreeTable",
    "KERNEL_BACKEND",
    "default_k",
    "neighborhood_count",
    "relative_density",
    "optimal_radius",
    "sparse_degree_table",
]

if os.environ.get("GFDC_PURE_PYTHON", "") not in ("", "0"):
    _kernel = _density_py.sparse_degree_kernel
    KERNEL_BACKEND = "python"
else:
    try:
        from . import _core

        _kernel = _core.sparse_degree_kernel
        KERNEL_BACKEND = "compiled"
    except ImportError:
        _kernel = _density_py.sparse_degree_kernel
        KERNEL_BACKEND = "python"


@dataclass(frozen=True)
class SparseDegreeTable:
    """Neighbor ordering and density figures for every sample.

    ``neighbor_order[i]`` lists all other samples by ascending distance to i
    (ties by ascending index). ``sd = r_star + knn_dist`` holds exactly.
    ``degenerate_samples`` flags samples whose peers are all coincident
    (r_star defined as 0 there).
    """

    k: int
    neighbor_order: np.ndarray
    r_star: np.ndarray
    knn_dist: np.ndarray
    sd: np.ndarray

    def __post_init__(self):
        for arr in (self.neighbor_order, self.r_star, self.knn_dist, self.sd):
            arr.setflags(write=False)

    @property
    def n(self) -> int:
        return self.sd.shape[0]

    @property
    def degenerate_samples(self) -> np.ndarray:
        return np.flatnonzero(self.r_star == 0.0)


def default_k(n: int, c: int | None = None) -> int:
    """Default neighbor count: ceil(log2(n)), raised to c when given."""
    if n < 2:
        raise ValueError("need at least 2 samples")
    k = (n - 1).bit_length()  # == ceil(log2(n)) for n >= 2, integer-exact
    if c is not None:
        k = max(c, k)
    return k


def _check_index(dm: DistanceMatrix, i: int) -> None:
    if not 0 <= i < dm.n:
        raise IndexError(f"sample index {i} out of range for n={dm.n}")


def neighborhood_count(dm: DistanceMatrix, i: int, radius: float) -> int:
    """Number of samples within ``radius`` of sample i, counting i itself."""
    _check_index(dm, i)
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    return int(np.count_nonzero(dm.d[i] <= radius))


def relative_density(dm: DistanceMatrix, i: int, radius: float) -> float:
    """Log-domain relative density log(count) - w*log(radius).

    A strictly monotone transform of count/radius**w, which over- or
    underflows for large w; only the argmax over radii is consumed.
    """
    _check_index(dm, i)
    if radius <= 0:
        raise ValueError(f"radius must be > 0, got {radius}")
    count = neighborhood_count(dm, i, radius)
    return math.log(count) - float(dm.w) * math.log(radius)


def optimal_radius(dm: DistanceMatrix, i: int) -> float:
    """The positive peer distance maximizing relative density for sample i.

    Value ties resolve to the smallest radius (and, vacuously for equal
    radii, the smallest neighbor index). Returns 0.0 when every other sample
    coincides with i.
    """
    _check_index(dm, i)
    row = dm.d[i]
    idx = np.argsort(row, kind="stable")
    dists = row[idx[idx != i]].tolist()
    return _density_py.scan_optimal_radius(dists, float(dm.w))


def sparse_degree_table(dm: DistanceMatrix, k: int) -> SparseDegreeTable:
    """Compute the full sparse-degree table for neighbor count ``k``."""
    n = dm.n
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must be in [1, {n - 1}], got {k}")
    d = np.ascontiguousarray(dm.d, dtype=np.float64)
    order, r_star, knn_dist, sd = _kernel(d, k, dm.w)
    return SparseDegreeTable(k, order, r_star, knn_dist, sd)
