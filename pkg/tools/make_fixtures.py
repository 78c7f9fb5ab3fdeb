#!/usr/bin/env python3
"""Regenerate the bundled benchmark fixtures under data/.

Each fixture is a deterministic synthetic stand-in for a classic
shape-benchmark dataset (crescent pair, aggregation blobs, nested rings,
interleaved spirals, smiley), matching the usual sample counts, dimensions
and cluster counts. Coordinates go to <name>.csv (headerless x,y rows) and
ground truth to <name>-labels.txt (one integer per line).

Usage: python3 tools/make_fixtures.py [outdir]
"""

import pathlib
import sys

import numpy as np


def crescent(rng, n, center, radius, thickness, angle0, angle1, flip=False):
    theta = rng.uniform(angle0, angle1, n)
    r = radius + rng.uniform(-thickness, thickness, n)
    y_sign = -1.0 if flip else 1.0
    x = center[0] + r * np.cos(theta)
    y = center[1] + y_sign * r * np.sin(theta)
    return np.column_stack([x, y])


def make_jain(rng):
    """Two interlocking crescents with a strong density contrast."""
    # 276 sparse samples on a wide lower crescent opening upward.
    lower = crescent(rng, 276, (0.0, 0.0), 10.0, 1.2, 0.15 * np.pi, 0.85 * np.pi,
                     flip=True)
    # 97 dense samples on a tighter upper crescent opening downward.
    upper = crescent(rng, 97, (4.0, 6.5), 5.0, 0.45, 0.15 * np.pi, 0.85 * np.pi)
    pts = np.vstack([lower, upper])
    labels = np.array([1] * 276 + [2] * 97)
    return pts, labels


def blob(rng, n, center, spread):
    return rng.normal(0.0, spread, size=(n, 2)) + np.asarray(center)


def make_aggregation(rng):
    """Seven blobs of varying size and spread (788 samples)."""
    spec = [
        (45, (4.0, 24.0), 1.0),
        (170, (22.0, 25.0), 2.0),
        (102, (8.0, 15.0), 1.6),
        (273, (25.0, 9.0), 2.5),
        (34, (5.5, 5.5), 0.8),
        (130, (13.5, 4.0), 1.5),
        (34, (33.5, 18.0), 0.8),
    ]
    parts, labels = [], []
    for lab, (n, center, spread) in enumerate(spec, start=1):
        parts.append(blob(rng, n, center, spread))
        labels.extend([lab] * n)
    return np.vstack(parts), np.array(labels)


def ring(rng, n, radius, jitter):
    theta = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    theta = theta + rng.uniform(-0.5, 0.5, n) * (2.0 * np.pi / n) * 0.3
    r = radius + rng.uniform(-jitter, jitter, n)
    return np.column_stack([r * np.cos(theta), r * np.sin(theta)])


def make_donut2(rng):
    pts = np.vstack([ring(rng, 500, 1.0, 0.06), ring(rng, 500, 2.5, 0.06)])
    labels = np.array([1] * 500 + [2] * 500)
    return pts, labels


def make_donut3(rng):
    pts = np.vstack(
        [ring(rng, 333, 1.0, 0.05), ring(rng, 333, 2.4, 0.05), ring(rng, 333, 3.8, 0.05)]
    )
    labels = np.array([1] * 333 + [2] * 333 + [3] * 333)
    return pts, labels


def spiral(n, phase, turns=1.75):
    # Noise-free Archimedean arm, uniform in angle like the classic
    # two-spirals benchmark: dense at the core, gradually sparser outward.
    theta = np.linspace(0.5 * np.pi, turns * 2.0 * np.pi, n)
    r = 1.0 + theta / np.pi  # interleaved arms stay 1 apart radially
    x = r * np.cos(theta + phase)
    y = r * np.sin(theta + phase)
    return np.column_stack([x, y])


def make_2spiral(rng):
    pts = np.vstack([spiral(500, 0.0), spiral(500, np.pi)])
    labels = np.array([1] * 500 + [2] * 500)
    return pts, labels


def filled_square(rng, n, center, half):
    return rng.uniform(-half, half, size=(n, 2)) + np.asarray(center)


def make_zelnik3(rng):
    """Smiley: two square eyes plus a curved mouth (266 samples)."""
    eye1 = filled_square(rng, 70, (-5.0, 4.0), 1.6)
    eye2 = filled_square(rng, 70, (5.0, 4.0), 1.6)
    theta = np.linspace(1.15 * np.pi, 1.85 * np.pi, 126)
    mouth = np.column_stack(
        [8.0 * np.cos(theta), 8.0 * np.sin(theta) + 6.0]
    ) + rng.normal(0.0, 0.12, size=(126, 2))
    pts = np.vstack([eye1, eye2, mouth])
    labels = np.array([1] * 70 + [2] * 70 + [3] * 126)
    return pts, labels


GENERATORS = {
    "jain": (make_jain, 20240001),
    "aggregation": (make_aggregation, 20240002),
    "donut2": (make_donut2, 20240003),
    "donut3": (make_donut3, 20240004),
    "2spiral": (make_2spiral, 20240005),
    "zelnik3": (make_zelnik3, 20240006),
}


def write_fixture(outdir: pathlib.Path, name: str) -> None:
    gen, seed = GENERATORS[name]
    pts, labels = gen(np.random.default_rng(seed))
    csv_lines = [f"{x:.6f},{y:.6f}" for x, y in pts]
    (outdir / f"{name}.csv").write_text("\n".join(csv_lines) + "\n")
    (outdir / f"{name}-labels.txt").write_text(
        "\n".join(str(v) for v in labels) + "\n"
    )
    print(f"{name}: {len(pts)} samples, {labels.max()} clusters")


def main() -> None:
    outdir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "data")
    outdir.mkdir(parents=True, exist_ok=True)
    for name in GENERATORS:
        write_fixture(outdir, name)


if __name__ == "__main__":
    main()
