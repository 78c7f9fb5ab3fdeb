"""Tabular data loading, standardization and the pairwise distance matrix."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import DataFormatError

__all__ = [
    "Dataset",
    "DistanceMatrix",
    "load_csv",
    "standardize",
    "pairwise_distances",
    "looks_like_header",
]


@dataclass(frozen=True)
class Dataset:
    """An n x w matrix of finite real attributes plus optional true labels.

    ``points`` is copied and made read-only on construction. ``true_labels``,
    when present, is an array of length n (integers or strings).
    """

    points: np.ndarray
    true_labels: np.ndarray | None = None

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64, copy=True, order="C")
        if pts.ndim != 2:
            raise ValueError(f"points must be 2-D, got shape {pts.shape}")
        if not np.isfinite(pts).all():
            bad = np.argwhere(~np.isfinite(pts))[0]
            raise ValueError(f"non-finite attribute at row {bad[0]}, column {bad[1]}")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        if self.true_labels is not None:
            labels = np.asarray(self.true_labels)
            if labels.shape != (pts.shape[0],):
                raise ValueError(
                    f"true_labels has length {labels.shape}, expected {pts.shape[0]}"
                )
            object.__setattr__(self, "true_labels", labels)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def w(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric Euclidean distance matrix with a zero diagonal.

    Carries ``w``, the attribute count of the source points, because the
    relative-density exponent downstream needs it.
    """

    d: np.ndarray
    w: int

    def __post_init__(self):
        self.d.setflags(write=False)

    @property
    def n(self) -> int:
        return self.d.shape[0]

    def submatrix(self, indices) -> "DistanceMatrix":
        """Distance matrix restricted to ``indices`` (kept in given order)."""
        idx = np.asarray(indices, dtype=np.intp)
        return DistanceMatrix(np.ascontiguousarray(self.d[np.ix_(idx, idx)]), self.w)


def looks_like_header(row: list[str]) -> bool:
    """Heuristic: a first row with any non-numeric cell is a header row."""

    def _numeric(cell: str) -> bool:
        try:
            float(cell)
        except ValueError:
            return False
        return True

    return not all(_numeric(cell) for cell in row)


def load_csv(
    path,
    has_header: bool = False,
    label_column: int | str | None = None,
) -> Dataset:
    """Load a comma-delimited numeric file into a :class:`Dataset`.

    ``label_column`` selects a column to strip from the attributes and store
    as ``true_labels``; an ``int`` is a 0-based column index (negatives count
    from the end), a ``str`` is a header name and requires ``has_header``.

    Raises :class:`DataFormatError` with the offending file position for
    ragged rows, non-numeric or non-finite attribute cells, and files with
    fewer than 2 data rows.
    """
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise DataFormatError(f"cannot open {path}: {exc}") from exc

    with fh:
        reader = csv.reader(fh)
        header: list[str] | None = None
        rows: list[list[str]] = []
        line_numbers: list[int] = []
        for lineno, row in enumerate(reader, start=1):
            if not row or all(cell.strip() == "" for cell in row):
                continue
            row = [cell.strip() for cell in row]
            if has_header and header is None:
                header = row
                continue
            rows.append(row)
            line_numbers.append(lineno)

    if len(rows) < 2:
        raise DataFormatError(f"{path}: need at least 2 data rows, got {len(rows)}")

    width = len(rows[0])
    for row, lineno in zip(rows, line_numbers):
        if len(row) != width:
            raise DataFormatError(
                f"{path}: line {lineno}: expected {width} fields, got {len(row)}"
            )

    label_idx: int | None = None
    if label_column is not None:
        if isinstance(label_column, str):
            if header is None:
                raise DataFormatError(
                    f"{path}: label column {label_column!r} given by name "
                    "but the file was read without a header"
                )
            try:
                label_idx = header.index(label_column)
            except ValueError:
                raise DataFormatError(
                    f"{path}: no header column named {label_column!r}"
                ) from None
        else:
            label_idx = int(label_column)
            if label_idx < 0:
                label_idx += width
            if not 0 <= label_idx < width:
                raise DataFormatError(
                    f"{path}: label column index {label_column} out of range "
                    f"for {width} columns"
                )

    attr_cols = [j for j in range(width) if j != label_idx]
    if not attr_cols:
        raise DataFormatError(f"{path}: no attribute columns left after label removal")

    points = np.empty((len(rows), len(attr_cols)), dtype=np.float64)
    for r, (row, lineno) in enumerate(zip(rows, line_numbers)):
        for c, j in enumerate(attr_cols):
            cell = row[j]
            try:
                value = float(cell)
            except ValueError:
                raise DataFormatError(
                    f"{path}: line {lineno}, column {j + 1}: "
                    f"non-numeric value {cell!r}"
                ) from None
            if not math.isfinite(value):
                raise DataFormatError(
                    f"{path}: line {lineno}, column {j + 1}: "
                    f"non-finite value {cell!r}"
                )
            points[r, c] = value

    labels: np.ndarray | None = None
    if label_idx is not None:
        raw = [row[label_idx] for row in rows]
        try:
            labels = np.array([int(cell) for cell in raw], dtype=np.int64)
        except ValueError:
            labels = np.array(raw)

    return Dataset(points, labels)


def standardize(ds: Dataset) -> Dataset:
    """Rescale every attribute to zero mean and unit (population) variance.

    Constant columns become all-zero instead of dividing by zero.
    """
    if ds.n < 2:
        raise ValueError("standardize needs at least 2 samples")
    mean = ds.points.mean(axis=0)
    std = ds.points.std(axis=0)  # population: divide by n
    scale = np.where(std > 0.0, std, 1.0)
    pts = (ds.points - mean) / scale
    pts[:, std == 0.0] = 0.0
    return Dataset(pts, ds.true_labels)


def pairwise_distances(ds: Dataset, block: int = 256) -> DistanceMatrix:
    """Full Euclidean distance matrix, computed in row blocks.

    The per-pair summation order is fixed (attribute axis, in order), so the
    result is deterministic and exactly symmetric.
    """
    x = ds.points
    n = ds.n
    d = np.empty((n, n), dtype=np.float64)
    for start in range(0, n, block):
        stop = min(start + block, n)
        diff = x[start:stop, None, :] - x[None, :, :]
        np.sqrt((diff * diff).sum(axis=2), out=d[start:stop])
    return DistanceMatrix(d, ds.w)
