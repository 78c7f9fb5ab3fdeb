"""Three granule-fusion stages producing exactly c initial clusters.

Stage I merges intersecting granules into granule-clusters (connected
components). Stage II transmits low-density granule-clusters into their
nearest denser neighbor, yielding granule-flocks. Stage III agglomerates
flocks by single-linkage distance down to the requested cluster count; when
there are too few flocks, each flock is re-granulated as its own small
sub-dataset until enough flocks exist. Samples never covered by any granule
stay outside the clusters as the unstable set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dataset import Dataset, DistanceMatrix, pairwise_distances
from .density import SparseDegreeTable, default_k, sparse_degree_table
from .errors import UnsatisfiableClusterCountError
from .granulation import Granule, generate_granules

__all__ = [
    "GranuleCluster",
    "GranuleFlock",
    "InitialClusters",
    "FusionTrace",
    "fuse_intersecting",
    "gc_distance",
    "gc_sparse_degree",
    "fuse_density_transmission",
    "fuse_by_distance",
    "build_initial_clusters",
    "initial_clusters",
]


@dataclass(frozen=True)
class GranuleCluster:
    """Union of intersecting granules (stage I output)."""

    id: int
    members: frozenset[int]


@dataclass(frozen=True)
class GranuleFlock:
    """Union of granule-clusters linked by density transmission (stage II)."""

    id: int
    members: frozenset[int]


@dataclass(frozen=True)
class InitialClusters:
    """Exactly c disjoint stable sample sets plus the unstable remainder."""

    clusters: tuple[frozenset[int], ...]
    unstable: frozenset[int]
    c: int

    def __post_init__(self):
        if len(self.clusters) != self.c:
            raise ValueError(
                f"expected {self.c} clusters, got {len(self.clusters)}"
            )

    @property
    def stable(self) -> frozenset[int]:
        out: set[int] = set()
        for cl in self.clusters:
            out |= cl
        return frozenset(out)


@dataclass
class FusionTrace:
    """Top-level stage structures, for diagnostics and stage dumps."""

    granules: list[Granule] = field(default_factory=list)
    granule_clusters: list[GranuleCluster] = field(default_factory=list)
    granule_flocks: list[GranuleFlock] | None = None
    fallback_used: bool = False
    recursion_rounds: int = 0


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _sorted_groups(groups) -> list[frozenset[int]]:
    """Deterministic renumbering: order groups by smallest member index."""
    return sorted((frozenset(g) for g in groups), key=min)


def fuse_intersecting(granules: list[Granule]) -> list[GranuleCluster]:
    """Merge granules sharing at least one sample (stage I).

    Output granule-clusters are the connected components of the intersection
    graph; each carries the union of its granules' members.
    """
    if not granules:
        return []
    uf = _UnionFind({m for g in granules for m in g.members})
    for g in granules:
        first = next(iter(g.members))
        for m in g.members:
            uf.union(first, m)
    components: dict[int, set[int]] = {}
    for g in granules:
        for m in g.members:
            components.setdefault(uf.find(m), set()).add(m)
    return [
        GranuleCluster(i, members)
        for i, members in enumerate(_sorted_groups(components.values()))
    ]


def gc_distance(a, b, dm: DistanceMatrix) -> float:
    """Single-linkage distance: minimum over cross pairs of sample distance."""
    a, b = frozenset(a), frozenset(b)
    if not a or not b:
        raise ValueError("sets must be nonempty")
    if a & b:
        raise ValueError("sets must be disjoint")
    return float(dm.d[np.ix_(sorted(a), sorted(b))].min())


def gc_sparse_degree(a, table: SparseDegreeTable) -> float:
    """Mean sparse degree of a sample set."""
    a = sorted(a)
    if not a:
        raise ValueError("set must be nonempty")
    return float(table.sd[a].mean())


def _linkage_matrix(groups: list[frozenset[int]], dm: DistanceMatrix) -> np.ndarray:
    g = len(groups)
    idx = [sorted(members) for members in groups]
    dist = np.full((g, g), np.inf)
    for a in range(g):
        for b in range(a + 1, g):
            dab = float(dm.d[np.ix_(idx[a], idx[b])].min())
            dist[a, b] = dist[b, a] = dab
    return dist


def fuse_density_transmission(
    gcs: list[GranuleCluster], table: SparseDegreeTable, dm: DistanceMatrix
) -> list[GranuleFlock]:
    """Merge each granule-cluster into its nearest neighbor when not denser.

    Single pass over the pre-merge granule-clusters: cluster a records a link
    to its nearest cluster b (ties to the smallest id) whenever
    sd*(a) >= sd*(b). Links are then resolved transitively as connected
    components. Distances and sparse degrees are never recomputed mid-pass.
    """
    if not gcs:
        return []
    if len(gcs) == 1:
        return [GranuleFlock(0, gcs[0].members)]

    groups = [gc.members for gc in gcs]
    dist = _linkage_matrix(groups, dm)
    sds = [gc_sparse_degree(members, table) for members in groups]

    uf = _UnionFind(range(len(gcs)))
    for a in range(len(gcs)):
        b = int(np.argmin(dist[a]))  # first minimum == smallest id on ties
        if sds[a] >= sds[b]:
            uf.union(a, b)

    components: dict[int, set[int]] = {}
    for a, gc in enumerate(gcs):
        components.setdefault(uf.find(a), set()).update(gc.members)
    return [
        GranuleFlock(i, members)
        for i, members in enumerate(_sorted_groups(components.values()))
    ]


def _package(groups: list[frozenset[int]], c: int, n: int) -> InitialClusters:
    clusters = tuple(_sorted_groups(groups))
    covered: set[int] = set()
    for cl in clusters:
        covered |= cl
    unstable = frozenset(range(n)) - covered
    return InitialClusters(clusters, unstable, c)


def fuse_by_distance(
    flocks: list[GranuleFlock], c: int, dm: DistanceMatrix
) -> InitialClusters:
    """Agglomerate flocks by minimum single-linkage distance down to c.

    Each iteration merges the closest pair (ties: lexicographically smallest
    id pair) and updates distances before the next. With exactly c flocks
    this is pure packaging. Never-granulated samples form the unstable set.
    """
    if len(flocks) < c:
        raise ValueError(f"need at least {c} flocks, got {len(flocks)}")

    groups = _sorted_groups(f.members for f in flocks)
    if len(groups) > c:
        dist = _linkage_matrix(groups, dm)
        while len(groups) > c:
            g = len(groups)
            best = (math.inf, -1, -1)
            for a in range(g):
                for b in range(a + 1, g):
                    if dist[a, b] < best[0]:
                        best = (dist[a, b], a, b)
            _, a, b = best
            # Single linkage: the merged row is the elementwise minimum.
            merged_row = np.minimum(dist[a], dist[b])
            groups[a] = groups[a] | groups[b]
            del groups[b]
            dist[a] = merged_row
            dist[:, a] = merged_row
            dist = np.delete(np.delete(dist, b, axis=0), b, axis=1)
            dist[a, a] = np.inf
    return _package(groups, c, dm.n)


def _sub_flocks(members: frozenset[int], c: int, dm: DistanceMatrix) -> list[frozenset[int]]:
    """Re-granulate one flock as a small sub-dataset and return its new flocks.

    Runs density, granulation and fusion stages I-II on the flock alone with
    k recomputed for the sub-dataset size (capped at n_sub - 1). Samples in
    no resulting flock become singleton flocks, so the output partitions the
    input members.
    """
    idx = sorted(members)
    n_sub = len(idx)
    if n_sub == 1:
        return [members]
    k_sub = min(default_k(n_sub, c), n_sub - 1)
    dm_sub = dm.submatrix(idx)
    table_sub = sparse_degree_table(dm_sub, k_sub)
    granules = generate_granules(table_sub)
    gcs = fuse_intersecting(granules)
    gfs = fuse_density_transmission(gcs, table_sub, dm_sub)

    covered: set[int] = set()
    local_groups: list[set[int]] = []
    for gf in gfs:
        local_groups.append(set(gf.members))
        covered |= gf.members
    local_groups.extend({s} for s in range(n_sub) if s not in covered)
    return _sorted_groups(
        frozenset(idx[local] for local in group) for group in local_groups
    )


def initial_clusters(
    dm: DistanceMatrix,
    table: SparseDegreeTable,
    c: int,
    trace: FusionTrace | None = None,
) -> InitialClusters:
    """Run all three fusion stages on a precomputed sparse-degree table."""
    if not 1 <= c < dm.n:
        raise ValueError(f"cluster count must satisfy 1 <= c < n, got c={c}, n={dm.n}")
    if trace is None:
        trace = FusionTrace()

    granules = generate_granules(table)
    trace.granules = granules
    gcs = fuse_intersecting(granules)
    trace.granule_clusters = gcs
    if len(gcs) == c:
        return _package([gc.members for gc in gcs], c, dm.n)

    gfs = fuse_density_transmission(gcs, table, dm)
    trace.granule_flocks = gfs
    flocks = [gf.members for gf in gfs]

    while len(flocks) < c:
        trace.recursion_rounds += 1
        new_flocks: list[frozenset[int]] = []
        for members in flocks:
            new_flocks.extend(_sub_flocks(members, c, dm))
        new_flocks = _sorted_groups(new_flocks)
        if new_flocks == flocks:
            # No flock split any further; force the single-sample limit.
            trace.fallback_used = True
            singles = sorted(s for members in flocks for s in members)
            if len(singles) < c:
                raise UnsatisfiableClusterCountError(
                    f"cannot form {c} clusters: only {len(singles)} granulated "
                    "samples are available"
                )
            new_flocks = [frozenset({s}) for s in singles]
        flocks = new_flocks

    return fuse_by_distance(
        [GranuleFlock(i, members) for i, members in enumerate(flocks)], c, dm
    )


def build_initial_clusters(
    ds: Dataset, c: int, k: int | None = None
) -> InitialClusters:
    """Initial clusters straight from a dataset (density + granulation + fusion)."""
    if not 1 <= c < ds.n:
        raise ValueError(f"cluster count must satisfy 1 <= c < n, got c={c}, n={ds.n}")
    dm = pairwise_distances(ds)
    if k is None:
        k = default_k(ds.n, c)
    table = sparse_degree_table(dm, k)
    return initial_clusters(dm, table, c)
