"""Pure-Python fallback for the sparse-degree kernel.

Mirrors ``gfdc._core`` bit for bit: both paths sort neighbors by
(distance, index) and run the same scan with the same libm ``log`` calls,
so results are interchangeable regardless of which backend is active.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["sparse_degree_kernel", "scan_optimal_radius"]


def scan_optimal_radius(sorted_dists: list[float], w: float) -> float:
    """Radius maximizing log(count) - w*log(radius) over sorted candidates.

    ``sorted_dists`` are a sample's distances to all other samples in
    ascending order. The count at a candidate radius includes the sample
    itself and every tied neighbor. Zero distances (duplicate positions) are
    counted but are not candidates. Exact value ties resolve to the smallest
    radius; returns 0.0 when every other sample is coincident.
    """
    m = len(sorted_dists)
    best_val = -math.inf
    best_r = 0.0
    p = 0
    while p < m:
        r = sorted_dists[p]
        q = p
        while q + 1 < m and sorted_dists[q + 1] == r:
            q += 1
        if r > 0.0:
            val = math.log(q + 2) - w * math.log(r)
            if val > best_val:
                best_val = val
                best_r = r
        p = q + 1
    return best_r


def sparse_degree_kernel(d: np.ndarray, k: int, w: int):
    """Per-sample neighbor order, optimal radius, k-NN radius and sparse degree.

    Returns ``(neighbor_order, r_star, knn_dist, sd)`` where
    ``neighbor_order`` is (n, n-1) int64 sorted by (distance, index).
    """
    n = d.shape[0]
    order = np.empty((n, n - 1), dtype=np.int64)
    r_star = np.empty(n, dtype=np.float64)
    knn_dist = np.empty(n, dtype=np.float64)
    sd = np.empty(n, dtype=np.float64)
    wd = float(w)
    for i in range(n):
        row = d[i]
        # Stable sort on values == sort by (distance, index).
        idx = np.argsort(row, kind="stable")
        idx = idx[idx != i]
        dists = row[idx].tolist()
        order[i] = idx
        r_star[i] = scan_optimal_radius(dists, wd)
        knn_dist[i] = dists[k - 1]
        sd[i] = r_star[i] + knn_dist[i]
    return order, r_star, knn_dist, sd
