"""Command-line interface: run, eval and sparse-degree subcommands.

Exit codes: 0 success, 1 I/O or parse failure, 2 invalid configuration,
3 requested cluster count unsatisfiable from stable samples.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, load_csv, looks_like_header, pairwise_distances
from .density import default_k, sparse_degree_table
from .errors import DataFormatError, GFDCError, UnsatisfiableClusterCountError
from .metrics import ami, ari, fmi, purity
from .pipeline import run_pipeline

__all__ = ["RunConfig", "main"]

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class RunConfig:
    """Validated options for one clustering run. The pipeline is seedless."""

    input: str
    clusters: int
    tau: float | None = None
    standardize: bool = False
    k: int | None = None
    output: str | None = None
    plot: str | None = None
    dump_stages: bool = False
    quiet: bool = False

    def validate(self) -> None:
        if self.clusters < 1:
            raise ValueError(f"--clusters must be >= 1, got {self.clusters}")
        if self.tau is not None and not 0.0 <= self.tau <= 1.0:
            raise ValueError(f"--tau must be in [0, 1], got {self.tau}")
        if self.k is not None and self.k < 1:
            raise ValueError(f"--k must be >= 1, got {self.k}")


def _load_input(path: str) -> Dataset:
    with open(path, encoding="utf-8") as fh:
        first = fh.readline()
    has_header = bool(first.strip()) and looks_like_header(
        [cell.strip() for cell in first.split(",")]
    )
    return load_csv(path, has_header=has_header)


def _read_label_file(path: str) -> list[int]:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [line.strip() for line in fh if line.strip()]
    except OSError as exc:
        raise DataFormatError(f"cannot open {path}: {exc}") from exc
    labels = []
    for lineno, line in enumerate(lines, start=1):
        try:
            labels.append(int(line))
        except ValueError:
            raise DataFormatError(
                f"{path}: line {lineno}: expected an integer label, got {line!r}"
            ) from None
    if not labels:
        raise DataFormatError(f"{path}: no labels found")
    return labels


def _write_plot(path: str, ds: Dataset, labels: np.ndarray) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "gfdc"  # deterministic SVG ids
    fig, ax = plt.subplots(figsize=(6, 5))
    pts = ds.points
    outliers = labels == -1
    for lab in sorted(set(labels[~outliers].tolist())):
        sel = labels == lab
        ax.scatter(pts[sel, 0], pts[sel, 1], s=12, label=f"cluster {lab}")
    if outliers.any():
        ax.scatter(
            pts[outliers, 0], pts[outliers, 1], s=40, c="k", marker="x",
            label="outlier",
        )
    ax.legend(loc="best", fontsize=8)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def _cmd_run(args: argparse.Namespace) -> int:
    config = RunConfig(
        input=args.input,
        clusters=args.clusters,
        tau=args.tau,
        standardize=args.standardize,
        k=args.k,
        output=args.output,
        plot=args.plot,
        dump_stages=args.dump_stages,
        quiet=args.quiet,
    )
    try:
        config.validate()
    except ValueError as exc:
        print(f"gfdc: {exc}", file=sys.stderr)
        return 2

    try:
        ds = _load_input(config.input)
    except (DataFormatError, OSError) as exc:
        print(f"gfdc: {exc}", file=sys.stderr)
        return 1

    if not 1 <= config.clusters < ds.n:
        print(
            f"gfdc: --clusters must be in [1, {ds.n - 1}] for {ds.n} samples, "
            f"got {config.clusters}",
            file=sys.stderr,
        )
        return 2
    if config.k is not None and config.k > ds.n - 1:
        print(f"gfdc: --k must be <= {ds.n - 1}, got {config.k}", file=sys.stderr)
        return 2
    if config.plot is not None and ds.w != 2:
        print(
            f"gfdc: --plot requires 2-D data, input has {ds.w} attributes",
            file=sys.stderr,
        )
        return 2

    try:
        pres = run_pipeline(
            ds,
            config.clusters,
            tau=config.tau,
            k=config.k,
            standardize_data=config.standardize,
        )
    except UnsatisfiableClusterCountError as exc:
        print(f"gfdc: {exc}", file=sys.stderr)
        return 3

    result = pres.result
    doc = {
        "schema_version": SCHEMA_VERSION,
        "input": config.input,
        "n": ds.n,
        "w": ds.w,
        "clusters": config.clusters,
        "k": pres.k,
        "tau": config.tau,
        "standardized": config.standardize,
        "labels": [int(v) for v in result.labels],
        "outliers": [int(i) for i in result.outlier_indices],
        "stage_meta": pres.stage_counts(),
        "assignment_order": [int(i) for i in result.assignment_order],
        "masses": result.to_records(),
        "timings": {k: round(v, 6) for k, v in pres.timings.items()},
    }
    if config.dump_stages:
        trace = pres.trace
        doc["stages"] = {
            "granules": [
                {"center": g.center, "members": sorted(g.members)}
                for g in trace.granules
            ],
            "granule_clusters": [sorted(gc.members) for gc in trace.granule_clusters],
            "granule_flocks": None
            if trace.granule_flocks is None
            else [sorted(gf.members) for gf in trace.granule_flocks],
            "initial_clusters": [sorted(cl) for cl in pres.initial.clusters],
            "unstable": sorted(pres.initial.unstable),
        }

    text = json.dumps(doc, indent=2) + "\n"
    if config.output:
        with open(config.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    if config.plot is not None:
        _write_plot(config.plot, pres.dataset, result.labels)

    if not config.quiet:
        counts = pres.stage_counts()
        print(
            f"gfdc: n={ds.n} w={ds.w} k={pres.k} granules={counts['granules']} "
            f"gcs={counts['granule_clusters']} gfs={counts['granule_flocks']} "
            f"unstable={counts['unstable']} outliers={len(result.outlier_indices)} "
            f"({pres.timings['total']:.3f}s)",
            file=sys.stderr,
        )
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    try:
        pred = _read_label_file(args.pred)
        truth = _read_label_file(args.truth)
        if len(pred) != len(truth):
            raise DataFormatError(
                f"label files differ in length: {len(pred)} vs {len(truth)}"
            )
        doc = {
            "purity": purity(pred, truth),
            "ari": ari(pred, truth),
            "ami": ami(pred, truth),
            "fmi": fmi(pred, truth),
        }
    except (DataFormatError, OSError, ValueError) as exc:
        print(f"gfdc: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    return 0


def _cmd_sparse_degree(args: argparse.Namespace) -> int:
    try:
        ds = _load_input(args.input)
    except (DataFormatError, OSError) as exc:
        print(f"gfdc: {exc}", file=sys.stderr)
        return 1
    k = args.k if args.k is not None else default_k(ds.n)
    if not 1 <= k <= ds.n - 1:
        print(f"gfdc: --k must be in [1, {ds.n - 1}], got {k}", file=sys.stderr)
        return 2
    table = sparse_degree_table(pairwise_distances(ds), k)
    lines = ["index,r_star,knn_dist,sd"]
    for i in range(table.n):
        lines.append(
            f"{i},{float(table.r_star[i])!r},"
            f"{float(table.knn_dist[i])!r},{float(table.sd[i])!r}"
        )
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not args.quiet and len(table.degenerate_samples):
        print(
            f"gfdc: {len(table.degenerate_samples)} samples have only "
            "coincident peers (r_star = 0)",
            file=sys.stderr,
        )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gfdc",
        description="Granule-fusion density-based clustering with "
        "evidential assignment.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="cluster a CSV dataset")
    run.add_argument("--input", required=True, help="CSV file of attributes")
    run.add_argument("--clusters", type=int, required=True, help="cluster count")
    run.add_argument("--tau", type=float, default=None,
                     help="frame-mass threshold for outliers (recommended 0.99-1)")
    run.add_argument("--standardize", action="store_true",
                     help="zero-mean/unit-variance per attribute before clustering")
    run.add_argument("--k", type=int, default=None, help="override neighbor count")
    run.add_argument("--output", default=None, help="result JSON path (default stdout)")
    run.add_argument("--plot", default=None, help="SVG scatter path (2-D data only)")
    run.add_argument("--dump-stages", action="store_true",
                     help="embed granule/fusion stage member sets in the JSON")
    run.add_argument("--quiet", action="store_true", help="suppress the summary line")
    run.set_defaults(func=_cmd_run)

    ev = sub.add_parser("eval", help="score predicted labels against ground truth")
    ev.add_argument("pred", help="predicted labels, one integer per line (-1 = outlier)")
    ev.add_argument("truth", help="true labels, one integer per line")
    ev.set_defaults(func=_cmd_eval)

    sd = sub.add_parser("sparse-degree", help="dump the per-sample density table")
    sd.add_argument("--input", required=True, help="CSV file of attributes")
    sd.add_argument("--k", type=int, default=None,
                    help="neighbor count (default ceil(log2 n))")
    sd.add_argument("--output", default=None, help="CSV path (default stdout)")
    sd.add_argument("--quiet", action="store_true")
    sd.set_defaults(func=_cmd_sparse_degree)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GFDCError as exc:
        print(f"gfdc: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
