#!/usr/bin/env python3
"""Measure augmentation throughput across patch modes and worker counts.

Builds a synthetic 96x96 dataset in memory, runs augment_dataset for each
(mode, threads) combination and prints emitted and augmented-only rates.

Example:
    python3 scripts/benchmark_throughput.py --count 2000 --threads 1 4 8
"""

import argparse
import time

import numpy as np

from stylepatch import (
    AugmentConfig,
    ColorStatProvider,
    DatasetItem,
    DatasetView,
    Image,
    augment_dataset,
)

MODES = ("subregion", "pixel", "full", "erase-noise")


def synthetic_view(count: int, size: int = 96, seed: int = 0) -> DatasetView:
    rng = np.random.default_rng(seed)
    items = tuple(
        DatasetItem(image=Image(rng.random((size, size, 3)).astype(np.float32)),
                    label=None, source_id=str(i))
        for i in range(count)
    )
    return DatasetView(items=items)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=2000)
    parser.add_argument("--size", type=int, default=96)
    parser.add_argument("--threads", type=int, nargs="+", default=[1, 4, 8])
    parser.add_argument("--seed", type=int, default=5)
    args = parser.parse_args()

    view = synthetic_view(args.count, args.size)
    provider = ColorStatProvider(alpha=0.5)
    print(f"{'mode':<12} {'threads':>7} {'wall[s]':>8} {'emitted/s':>10} {'augmented/s':>12}")
    for mode in MODES:
        cfg = AugmentConfig(gate_probability=1.0, patch_mode=mode)
        for threads in args.threads:
            t0 = time.perf_counter()
            out, records = augment_dataset(view, cfg, provider, 1, args.seed,
                                           threads=threads)
            wall = time.perf_counter() - t0
            print(f"{mode:<12} {threads:>7} {wall:>8.2f} "
                  f"{len(out) / wall:>10.0f} {len(records) / wall:>12.0f}")


if __name__ == "__main__":
    main()
