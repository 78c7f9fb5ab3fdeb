"""Granule-fusion density-based clustering with evidential assignment.

Measures per-sample density with a sparse-degree metric, granulates samples
around local density peaks, fuses granules (intersection, density
transmission, distance) into exactly c initial clusters, then assigns the
remaining unstable samples with Dempster-Shafer evidence from their nearest
assigned neighbors. Outliers surface as samples whose belief stays on the
whole frame.
"""

from .dataset import (
    Dataset,
    DistanceMatrix,
    load_csv,
    pairwise_distances,
    standardize,
)
from .density import (
    KERNEL_BACKEND,
    SparseDegreeTable,
    default_k,
    neighborhood_count,
    optimal_radius,
    relative_density,
    sparse_degree_table,
)
from .errors import DataFormatError, GFDCError, UnsatisfiableClusterCountError
from .evidence import (
    OUTLIER,
    ClusteringResult,
    MassVector,
    assign_unstable,
    combine_evidence,
    combine_evidence_commonality,
    conflict,
    dempster_combine,
    evidence_mass,
    harden,
    init_stable_masses,
)
from .fusion import (
    FusionTrace,
    GranuleCluster,
    GranuleFlock,
    InitialClusters,
    build_initial_clusters,
    fuse_by_distance,
    fuse_density_transmission,
    fuse_intersecting,
    gc_distance,
    gc_sparse_degree,
)
from .granulation import Granule, generate_granules
from .metrics import ContingencyTable, ami, ari, fmi, purity
from .pipeline import PipelineResult, cluster, run_pipeline

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "DistanceMatrix",
    "load_csv",
    "standardize",
    "pairwise_distances",
    "SparseDegreeTable",
    "KERNEL_BACKEND",
    "default_k",
    "neighborhood_count",
    "relative_density",
    "optimal_radius",
    "sparse_degree_table",
    "Granule",
    "generate_granules",
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
    "OUTLIER",
    "MassVector",
    "ClusteringResult",
    "init_stable_masses",
    "evidence_mass",
    "conflict",
    "dempster_combine",
    "combine_evidence",
    "combine_evidence_commonality",
    "assign_unstable",
    "harden",
    "ContingencyTable",
    "purity",
    "ari",
    "ami",
    "fmi",
    "PipelineResult",
    "run_pipeline",
    "cluster",
    "GFDCError",
    "DataFormatError",
    "UnsatisfiableClusterCountError",
]
