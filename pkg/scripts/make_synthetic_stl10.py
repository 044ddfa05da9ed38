#!/usr/bin/env python3
"""Generate a synthetic labeled dataset in the STL-10 binary layout.

Each class gets a distinct visual signature (base color plus an oriented
stripe pattern whose frequency and angle depend on the class) with additive
noise, so small classifiers can learn the labels quickly. Useful for codec
tests, demos and training smoke tests where the real corpus is unavailable.

Example:
    python3 scripts/make_synthetic_stl10.py out/train_X.bin out/train_y.bin \
        --count 500 --seed 7
"""

import argparse
from pathlib import Path

import numpy as np

from stylepatch import DatasetItem, DatasetView, Image
from stylepatch.dataio import STL10_CLASSES, STL10_SIZE, write_stl10

# one base RGB color per class, spread around the color wheel
_CLASS_COLORS = np.array(
    [
        [0.8, 0.2, 0.2], [0.2, 0.8, 0.2], [0.2, 0.2, 0.8], [0.8, 0.8, 0.2],
        [0.8, 0.2, 0.8], [0.2, 0.8, 0.8], [0.6, 0.4, 0.2], [0.4, 0.2, 0.6],
        [0.7, 0.7, 0.7], [0.3, 0.3, 0.3],
    ],
    dtype=np.float64,
)


def synthesize(label: int, rng: np.random.Generator, size: int = STL10_SIZE) -> Image:
    """One image of the given class: colored stripes plus noise."""
    yy, xx = np.mgrid[0:size, 0:size].astype(np.float64)
    angle = label * np.pi / STL10_CLASSES + rng.normal(0.0, 0.05)
    freq = (2.0 + label) * 2.0 * np.pi / size
    phase = rng.uniform(0.0, 2.0 * np.pi)
    stripes = 0.5 + 0.5 * np.sin(freq * (xx * np.cos(angle) + yy * np.sin(angle)) + phase)
    base = _CLASS_COLORS[label]
    px = 0.35 * base + 0.45 * stripes[:, :, None] * base + 0.2 * rng.random((size, size, 3))
    return Image(np.clip(px, 0.0, 1.0).astype(np.float32))


def build_dataset(count: int, seed: int) -> DatasetView:
    rng = np.random.default_rng(seed)
    items = tuple(
        DatasetItem(image=synthesize(i % STL10_CLASSES, rng), label=i % STL10_CLASSES,
                    source_id=f"synthetic-{i}")
        for i in range(count)
    )
    return DatasetView(items=items)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("images_out", help="STL-10 image binary to write")
    parser.add_argument("labels_out", help="STL-10 label binary to write")
    parser.add_argument("--count", type=int, default=500)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    view = build_dataset(args.count, args.seed)
    Path(args.images_out).parent.mkdir(parents=True, exist_ok=True)
    write_stl10(view, args.images_out, args.labels_out)
    print(f"wrote {len(view)} images -> {args.images_out}, labels -> {args.labels_out}")


if __name__ == "__main__":
    main()
