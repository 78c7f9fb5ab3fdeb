"""Granule generation: k-sample neighborhoods centered on local density peaks."""

from __future__ import annotations

from dataclasses import dataclass

from .density import SparseDegreeTable

__all__ = ["Granule", "generate_granules"]


@dataclass(frozen=True)
class Granule:
    """A sample together with its k-1 nearest neighbors.

    The center has the (non-strict) minimum sparse degree among the members.
    """

    center: int
    members: frozenset[int]


def generate_granules(table: SparseDegreeTable, k: int | None = None) -> list[Granule]:
    """All granules of the dataset, ordered by center index.

    A sample centers a granule when none of its k-1 nearest neighbors has a
    strictly lower sparse degree. Membership takes exactly k samples by
    (distance, index) order, so exact distance ties at the boundary never
    inflate a granule. Multi-sample granules only: with k == 1 every
    candidate is a singleton and the result is empty. Samples covered by no
    granule are the seeds of the unstable set downstream.
    """
    if k is None:
        k = table.k
    elif k != table.k:
        raise ValueError(f"table was built with k={table.k}, got k={k}")
    if k < 2:
        return []

    sd = table.sd
    order = table.neighbor_order
    granules = []
    for i in range(table.n):
        neighbors = order[i, : k - 1]
        if sd[i] <= sd[neighbors].min():
            members = frozenset(neighbors.tolist()) | {i}
            granules.append(Granule(i, members))
    return granules
