"""Evidential assignment of unstable samples and hardening to labels.

Belief is carried by mass vectors over the c candidate clusters plus the
whole frame (omega); all other subsets are structurally zero, which keeps
every operation O(c). Stable samples hold crisp masses. Unstable samples are
processed densest-first: each collects one piece of evidence per nearest
assigned neighbor (discounted by distance plus the neighbor's sparse
degree) and fuses them with Dempster's rule. High leftover omega mass marks
outliers.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .dataset import DistanceMatrix
from .density import SparseDegreeTable
from .fusion import InitialClusters

__all__ = [
    "OUTLIER",
    "MassVector",
    "CredalPartition",
    "ClusteringResult",
    "init_stable_masses",
    "evidence_mass",
    "conflict",
    "dempster_combine",
    "combine_evidence",
    "combine_evidence_commonality",
    "assign_unstable",
    "harden",
]

OUTLIER = -1


@dataclass(frozen=True, eq=False)
class MassVector:
    """Belief over c singleton clusters plus the whole frame.

    ``singleton_mass[u]`` is the mass on cluster u+1, ``omega_mass`` the mass
    on the full frame; they sum to 1.
    """

    singleton_mass: np.ndarray
    omega_mass: float

    def __post_init__(self):
        arr = np.array(self.singleton_mass, dtype=np.float64, copy=True)
        arr.setflags(write=False)
        object.__setattr__(self, "singleton_mass", arr)
        object.__setattr__(self, "omega_mass", float(self.omega_mass))

    @classmethod
    def crisp(cls, c: int, u: int) -> "MassVector":
        """Full belief on cluster index u (0-based)."""
        s = np.zeros(c)
        s[u] = 1.0
        return cls(s, 0.0)

    @classmethod
    def vacuous(cls, c: int) -> "MassVector":
        """Total ignorance: all mass on the frame."""
        return cls(np.zeros(c), 1.0)

    @property
    def c(self) -> int:
        return self.singleton_mass.shape[0]

    def total(self) -> float:
        return float(self.singleton_mass.sum()) + self.omega_mass

    def argmax_cluster(self) -> int:
        """0-based index of the largest singleton mass (ties: smallest)."""
        return int(np.argmax(self.singleton_mass))


CredalPartition = list[MassVector]


def init_stable_masses(init: InitialClusters) -> list[MassVector | None]:
    """Crisp masses for stable samples; None placeholders for unstable ones."""
    n = len(init.unstable) + sum(len(cl) for cl in init.clusters)
    masses: list[MassVector | None] = [None] * n
    for u, cl in enumerate(init.clusters):
        for i in cl:
            masses[i] = MassVector.crisp(init.c, u)
    return masses


def evidence_mass(m_j: MassVector, d_ij: float, sd_j: float) -> MassVector:
    """One neighbor's evidence, discounted by exp(-(distance + sparse degree)).

    A far or sparse neighbor contributes almost nothing: its singleton masses
    shrink toward 0 and the freed mass moves to the frame.
    """
    if d_ij < 0 or sd_j < 0:
        raise ValueError("distance and sparse degree must be nonnegative")
    factor = math.exp(-(d_ij + sd_j))
    s = factor * m_j.singleton_mass
    # Guard against rounding when factor == 1 and the input sums to 1 + eps.
    omega = max(1.0 - float(s.sum()), 0.0)
    return MassVector(s, omega)


def conflict(m1: MassVector, m2: MassVector) -> float:
    """Mass falling on the empty intersection when combining m1 and m2.

    Only pairs of distinct singletons conflict; the frame intersects
    everything.
    """
    s1, s2 = m1.singleton_mass, m2.singleton_mass
    return float(s1.sum() * s2.sum() - s1 @ s2)


def dempster_combine(m1: MassVector, m2: MassVector) -> MassVector:
    """Dempster's rule: conjunctive combination normalized by 1 - conflict."""
    k = conflict(m1, m2)
    if not k < 1.0:
        raise ValueError("total conflict between certain contradictory masses")
    s1, s2 = m1.singleton_mass, m2.singleton_mass
    s = s1 * s2 + s1 * m2.omega_mass + m1.omega_mass * s2
    omega = m1.omega_mass * m2.omega_mass
    norm = 1.0 - k
    return MassVector(s / norm, omega / norm)


def combine_evidence(masses) -> MassVector:
    """Left-fold of Dempster's rule over a nonempty sequence of masses."""
    masses = list(masses)
    if not masses:
        raise ValueError("need at least one mass vector")
    return reduce(dempster_combine, masses)


def combine_evidence_commonality(masses) -> MassVector:
    """Closed-form combination through commonality products.

    For the singleton-plus-frame focal family the commonality of cluster u is
    singleton_mass[u] + omega_mass; multiplying commonalities across sources
    and mapping back equals the pairwise Dempster fold up to rounding.
    """
    masses = list(masses)
    if not masses:
        raise ValueError("need at least one mass vector")
    c = masses[0].c
    q = np.ones(c)
    q_omega = 1.0
    for m in masses:
        q = q * (m.singleton_mass + m.omega_mass)
        q_omega *= m.omega_mass
    s = q - q_omega
    total = float(s.sum()) + q_omega  # == 1 - total conflict
    if not total > 0.0:
        raise ValueError("total conflict between certain contradictory masses")
    return MassVector(s / total, q_omega / total)


def assign_unstable(
    init: InitialClusters,
    table: SparseDegreeTable,
    dm: DistanceMatrix,
    k: int,
) -> tuple[CredalPartition, list[int]]:
    """Credal partition for all samples, plus the unstable processing order.

    Unstable samples are handled by ascending sparse degree (ties by index).
    Each one gathers evidence from its k nearest already-assigned neighbors:
    previously assigned unstable samples contribute their soft masses, not a
    hardened label. Stable masses are never touched.
    """
    masses = init_stable_masses(init)
    assigned = sorted(i for i, m in enumerate(masses) if m is not None)
    if len(assigned) < k:
        raise ValueError(
            f"stable set has {len(assigned)} samples but k={k} neighbors are needed"
        )
    order = sorted(init.unstable, key=lambda i: (table.sd[i], i))
    d = dm.d
    for i in order:
        row = d[i]
        neighbors = heapq.nsmallest(k, assigned, key=lambda j: (row[j], j))
        evidence = [
            evidence_mass(masses[j], float(row[j]), float(table.sd[j]))
            for j in neighbors
        ]
        masses[i] = combine_evidence(evidence)
        assigned.append(i)
    return masses, order  # type: ignore[return-value]


def harden(
    masses: CredalPartition,
    tau: float | None = None,
    assignment_order=(),
) -> "ClusteringResult":
    """Crisp labels from a credal partition.

    Labels are 1-based cluster indices (argmax singleton mass, ties to the
    smallest cluster). With ``tau`` set, samples whose frame mass exceeds it
    are labeled ``OUTLIER`` instead.
    """
    if tau is not None and not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must be in [0, 1], got {tau}")
    labels = np.empty(len(masses), dtype=np.int64)
    for i, m in enumerate(masses):
        if tau is not None and m.omega_mass > tau:
            labels[i] = OUTLIER
        else:
            labels[i] = m.argmax_cluster() + 1
    labels.setflags(write=False)
    return ClusteringResult(labels, list(masses), tau, tuple(assignment_order))


@dataclass(frozen=True)
class ClusteringResult:
    """Hardened labels plus the full credal partition behind them."""

    labels: np.ndarray
    masses: CredalPartition
    outlier_threshold: float | None
    assignment_order: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.labels.shape[0]

    @property
    def outlier_indices(self) -> np.ndarray:
        return np.flatnonzero(self.labels == OUTLIER)

    def to_records(self) -> list[dict]:
        """JSON-ready per-sample records: masses, frame mass, label, flag."""
        return [
            {
                "index": i,
                "masses": [float(v) for v in m.singleton_mass],
                "omega": float(m.omega_mass),
                "label": int(self.labels[i]),
                "outlier": bool(self.labels[i] == OUTLIER),
            }
            for i, m in enumerate(self.masses)
        ]
