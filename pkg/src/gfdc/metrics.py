"""External clustering evaluation: purity, ARI, AMI and FMI.

ARI, AMI and FMI delegate to scikit-learn behind this module's surface; the
test suite checks them against brute-force pair counting. Outlier labels
(any value, conventionally -1) simply act as one extra predicted cluster in
all four measures.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from sklearn.metrics import (
    adjusted_mutual_info_score,
    adjusted_rand_score,
    fowlkes_mallows_score,
)

__all__ = ["ContingencyTable", "purity", "ari", "ami", "fmi"]


@dataclass(frozen=True)
class ContingencyTable:
    """Predicted-cluster x true-class co-occurrence counts."""

    counts: np.ndarray
    n: int

    @classmethod
    def from_labels(cls, pred, truth) -> "ContingencyTable":
        pred, truth = _check_labels(pred, truth)
        # First-occurrence order keeps the mapping deterministic for any
        # label type; all four measures are relabeling-invariant anyway.
        row_of: dict = {}
        col_of: dict = {}
        pairs = []
        for p, t in zip(pred, truth):
            pairs.append(
                (row_of.setdefault(p, len(row_of)), col_of.setdefault(t, len(col_of)))
            )
        counts = np.zeros((len(row_of), len(col_of)), dtype=np.int64)
        for r, c in pairs:
            counts[r, c] += 1
        return cls(counts, len(pairs))


def _check_labels(pred, truth):
    pred = list(pred)
    truth = list(truth)
    if len(pred) != len(truth):
        raise ValueError(
            f"label sequences differ in length: {len(pred)} vs {len(truth)}"
        )
    if len(pred) == 0:
        raise ValueError("label sequences must be nonempty")
    return pred, truth


def purity(pred, truth) -> float:
    """Fraction of samples in the majority true class of their cluster."""
    table = ContingencyTable.from_labels(pred, truth)
    return float(table.counts.max(axis=1).sum()) / table.n


def ari(pred, truth) -> float:
    """Adjusted Rand index (pair counting, adjusted for chance)."""
    pred, truth = _check_labels(pred, truth)
    if len(pred) < 2:
        raise ValueError("ARI needs at least 2 samples")
    return float(adjusted_rand_score(truth, pred))


def ami(pred, truth, average_method: str = "max") -> float:
    """Adjusted mutual information.

    ``average_method`` picks the normalizing denominator; the default "max"
    uses max(H(pred), H(truth)).
    """
    pred, truth = _check_labels(pred, truth)
    return float(adjusted_mutual_info_score(truth, pred, average_method=average_method))


def fmi(pred, truth) -> float:
    """Fowlkes-Mallows index: geometric mean of pairwise precision and recall.

    Defined as 0 (with a warning) when either partition has no co-clustered
    pair at all.
    """
    pred, truth = _check_labels(pred, truth)
    table = ContingencyTable.from_labels(pred, truth).counts
    if (table.sum(axis=1) <= 1).all() or (table.sum(axis=0) <= 1).all():
        warnings.warn(
            "FMI undefined (a partition has no co-clustered pairs); returning 0",
            stacklevel=2,
        )
        return 0.0
    return float(fowlkes_mallows_score(truth, pred))
