"""End-to-end pipeline: density -> granulation -> fusion -> assignment."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .dataset import Dataset, DistanceMatrix, pairwise_distances, standardize
from .density import SparseDegreeTable, default_k, sparse_degree_table
from .evidence import ClusteringResult, assign_unstable, harden
from .fusion import FusionTrace, InitialClusters, initial_clusters

__all__ = ["PipelineResult", "run_pipeline", "cluster"]


@dataclass
class PipelineResult:
    """Clustering output plus every intermediate stage and per-stage timings."""

    result: ClusteringResult
    initial: InitialClusters
    table: SparseDegreeTable
    trace: FusionTrace
    dm: DistanceMatrix
    dataset: Dataset
    k: int
    timings: dict[str, float] = field(default_factory=dict)

    def stage_counts(self) -> dict:
        flocks = self.trace.granule_flocks
        return {
            "granules": len(self.trace.granules),
            "granule_clusters": len(self.trace.granule_clusters),
            "granule_flocks": None if flocks is None else len(flocks),
            "stable": int(self.dataset.n - len(self.initial.unstable)),
            "unstable": len(self.initial.unstable),
            "recursion_rounds": self.trace.recursion_rounds,
            "fallback_used": self.trace.fallback_used,
        }


def run_pipeline(
    ds: Dataset,
    n_clusters: int,
    tau: float | None = None,
    k: int | None = None,
    standardize_data: bool = False,
) -> PipelineResult:
    """Cluster a dataset into ``n_clusters`` groups.

    ``k`` overrides the default neighbor count max(n_clusters, ceil(log2 n)).
    ``tau`` enables outlier flagging for samples whose frame mass exceeds it.
    The pipeline is fully deterministic; repeated runs return identical
    structures.
    """
    if not 1 <= n_clusters < ds.n:
        raise ValueError(
            f"cluster count must satisfy 1 <= c < n, got c={n_clusters}, n={ds.n}"
        )
    timings: dict[str, float] = {}
    t0 = time.perf_counter()

    if standardize_data:
        ds = standardize(ds)
    timings["standardize"] = time.perf_counter() - t0

    t = time.perf_counter()
    dm = pairwise_distances(ds)
    timings["distances"] = time.perf_counter() - t

    t = time.perf_counter()
    if k is None:
        k = default_k(ds.n, n_clusters)
    table = sparse_degree_table(dm, k)
    timings["density"] = time.perf_counter() - t

    t = time.perf_counter()
    trace = FusionTrace()
    init = initial_clusters(dm, table, n_clusters, trace)
    timings["fusion"] = time.perf_counter() - t

    t = time.perf_counter()
    masses, order = assign_unstable(init, table, dm, k)
    timings["assignment"] = time.perf_counter() - t

    t = time.perf_counter()
    result = harden(masses, tau, order)
    timings["hardening"] = time.perf_counter() - t
    timings["total"] = time.perf_counter() - t0

    return PipelineResult(result, init, table, trace, dm, ds, k, timings)


def cluster(
    points,
    n_clusters: int,
    tau: float | None = None,
    k: int | None = None,
    standardize_data: bool = False,
) -> ClusteringResult:
    """Convenience wrapper: cluster an array of points, return labels/masses."""
    ds = points if isinstance(points, Dataset) else Dataset(np.asarray(points))
    return run_pipeline(ds, n_clusters, tau, k, standardize_data).result
