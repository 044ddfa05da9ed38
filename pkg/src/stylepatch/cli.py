"""Batch command-line front end.

Subcommands: ``augment`` (dataset in, augmented dataset + manifest out),
``gallery`` (side-by-side grid of the patch modes), ``validate`` (config
feasibility check). Exit codes: 0 success, 1 I/O failure, 2 configuration
error. Diagnostics go to stderr; the summary line goes to stdout.
"""

from __future__ import annotations

import json
import os
import secrets
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import click
import numpy as np
from PIL import Image as PilImage

from . import dataio
from .errors import ConfigError, StylepatchError
from .external import load_external_provider
from .patching import fill_region, patch_pixels, patch_subregion, sample_region
from .pipeline import augment_dataset, augment_dataset_in_place
from .rng import derive_stream
from .style import ColorStatProvider, IdentityProvider, StyleProvider
from .types import AugmentConfig, Image, validate_config

GUTTER = 2  # pixels between gallery cells
GALLERY_COLUMNS = 5  # original, erased, full style, subregion, pixel

THREADS_ENV = "STYLEPATCH_THREADS"


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _config_options(f):
    opts = [
        click.option("--mode", default="subregion", show_default=True,
                     type=click.Choice(["subregion", "pixel", "full", "erase-noise", "erase-mean", "none"]),
                     help="How the stylized source is written into the base image."),
        click.option("-p", "--gate-probability", "p", default=0.5, show_default=True,
                     help="Per-image probability that augmentation is applied."),
        click.option("-q", "--pixel-probability", "q", default=0.5, show_default=True,
                     help="Per-pixel replacement probability (pixel mode)."),
        click.option("--alpha", default=0.5, show_default=True,
                     help="Blend weight between original and fully stylized image."),
        click.option("--sl", default=0.02, show_default=True, help="Min patched-area fraction."),
        click.option("--sh", default=0.4, show_default=True, help="Max patched-area fraction."),
        click.option("--rl", default=0.3, show_default=True, help="Min aspect ratio (height/width)."),
        click.option("--rh", default=1.0 / 0.3, show_default=True, help="Max aspect ratio."),
        click.option("--style", default="colorstat", show_default=True,
                     help="Style provider: identity, colorstat, or external:<model-path>."),
    ]
    for opt in reversed(opts):
        f = opt(f)
    return f


def _build_config(mode, p, q, alpha, sl, sh, rl, rh) -> AugmentConfig:
    return AugmentConfig(
        gate_probability=p,
        area_ratio_min=sl,
        area_ratio_max=sh,
        aspect_ratio_min=rl,
        aspect_ratio_max=rh,
        patch_mode=mode,
        pixel_probability=q,
        style_alpha=alpha,
    )


def _build_provider(style: str, alpha: float) -> StyleProvider:
    if style == "identity":
        return IdentityProvider()
    if style == "colorstat":
        return ColorStatProvider(alpha=alpha)
    if style.startswith("external:"):
        return load_external_provider(style.split(":", 1)[1], alpha=alpha)
    raise ConfigError(f"unknown style provider {style!r}")


def _resolve_format(fmt: str, path: str) -> str:
    if fmt != "auto":
        return fmt
    return "imgdir" if os.path.isdir(path) else "stl10"


def _read_dataset(fmt: str, path: str, labels: Optional[str]):
    if fmt == "stl10":
        return dataio.read_stl10(path, labels)
    return dataio.read_image_dir(path)


def _write_dataset(fmt: str, view, path: str, labels: Optional[str]):
    if fmt == "stl10":
        write_labels = labels if all(it.label is not None for it in view) else None
        dataio.write_stl10(view, path, write_labels)
    else:
        dataio.write_image_dir(view, path)


def _resolve_seed(seed: Optional[int]) -> int:
    if seed is None:
        seed = secrets.randbits(63)
        click.echo(f"seed: {seed} (auto-generated; pass --seed to reproduce)", err=True)
    return seed


@click.group()
def cli():
    """Deterministic style-replacement augmentation for image datasets."""


@cli.command()
@click.argument("input_path", type=click.Path(exists=True))
@click.argument("output_path")
@click.option("--format", "fmt", default="auto", show_default=True,
              type=click.Choice(["auto", "stl10", "imgdir"]))
@click.option("--labels-in", type=click.Path(exists=True), default=None,
              help="STL-10 label file for the input.")
@click.option("--labels-out", default=None, help="STL-10 label file to write.")
@_config_options
@click.option("--ratio", default=1, show_default=True,
              help="Augmented copies emitted per original.")
@click.option("--in-place", is_flag=True,
              help="Gate the originals themselves instead of emitting copies.")
@click.option("--stream-offset", default=0, show_default=True,
              help="Stream index of the first item (in-place mode).")
@click.option("--seed", type=int, default=None,
              help="Master seed; auto-generated and printed when omitted.")
@click.option("--threads", default=None, type=int,
              help=f"Worker threads (default ${THREADS_ENV} or 1).")
@click.option("--manifest", "manifest_path", default=None,
              help="Where to write the provenance manifest.")
@click.option("--json-summary", is_flag=True, help="Machine-readable summary on stdout.")
def augment(input_path, output_path, fmt, labels_in, labels_out, mode, p, q, alpha,
            sl, sh, rl, rh, style, ratio, in_place, stream_offset, seed, threads,
            manifest_path, json_summary):
    """Augment a dataset and write the result plus an optional manifest."""
    t0 = time.perf_counter()
    seed = _resolve_seed(seed)
    threads = threads if threads is not None else _default_threads()
    cfg = _build_config(mode, p, q, alpha, sl, sh, rl, rh)
    provider = _build_provider(style, alpha)

    in_fmt = _resolve_format(fmt, input_path)
    view = _read_dataset(in_fmt, input_path, labels_in)
    if len(view):
        validate_config(cfg, view[0].image.width, view[0].image.height)

    if in_place:
        out_view, records = augment_dataset_in_place(
            view, cfg, provider, seed, stream_offset=stream_offset, threads=threads
        )
    else:
        out_view, records = augment_dataset(
            view, cfg, provider, ratio, seed, threads=threads
        )

    out_fmt = in_fmt if fmt == "auto" else fmt
    _write_dataset(out_fmt, out_view, output_path, labels_out)

    if manifest_path:
        manifest = dataio.Manifest(
            master_seed=seed,
            config=cfg,
            provider_name=provider.name,
            records=tuple(records),
            extra={
                "format": out_fmt,
                "ratio": ratio,
                "in_place": in_place,
                "stream_offset": stream_offset,
                "threads": threads,
                "style": style,
            },
        )
        dataio.write_manifest(manifest, manifest_path)

    wall = time.perf_counter() - t0
    applied = sum(1 for r in records if r.applied)
    rate = len(out_view) / wall if wall > 0 else float("inf")
    if json_summary:
        click.echo(json.dumps({
            "items_in": len(view), "items_out": len(out_view), "applied": applied,
            "seed": seed, "wall_seconds": round(wall, 4),
            "images_per_second": round(rate, 1),
        }, sort_keys=True))
    else:
        click.echo(
            f"in={len(view)} out={len(out_view)} applied={applied} seed={seed} "
            f"wall={wall:.2f}s throughput={rate:.0f} img/s"
        )


@cli.command()
@click.option("--width", default=96, show_default=True)
@click.option("--height", default=96, show_default=True)
@_config_options
def validate(width, height, mode, p, q, alpha, sl, sh, rl, rh, style):
    """Check a configuration against an image size."""
    cfg = _build_config(mode, p, q, alpha, sl, sh, rl, rh)
    validate_config(cfg, width, height)
    click.echo(f"ok: config is feasible for {width}x{height} images")


def build_gallery(view, cfg: AugmentConfig, provider: StyleProvider, n: int,
                  master_seed: int) -> np.ndarray:
    """n rows x 5 columns (original, erased, full style, subregion, pixel)
    with 2-pixel white gutters; returns a float [0,1] array."""
    if n < 1:
        raise ValueError("gallery needs n >= 1")
    if n > len(view):
        raise ValueError(f"gallery needs {n} images, dataset has {len(view)}")

    rows = []
    for i in range(n):
        base = view[i].image
        streams = [derive_stream(master_seed, i * 4 + k) for k in range(4)]
        erased_draw = sample_region(streams[0], base.width, base.height, cfg)
        erased = fill_region(base, erased_draw.region, "noise", streams[0])
        full, _ = provider.stylize(base, streams[1])
        styled_sub, _ = provider.stylize(base, streams[2])
        sub_draw = sample_region(streams[2], base.width, base.height, cfg)
        sub = patch_subregion(base, styled_sub, sub_draw.region)
        styled_pix, _ = provider.stylize(base, streams[3])
        pix, _ = patch_pixels(base, styled_pix, streams[3], cfg.pixel_probability)
        rows.append([base, erased, full, sub, pix])

    h, w, c = view[0].image.pixels.shape
    grid_h = n * h + (n - 1) * GUTTER
    grid_w = GALLERY_COLUMNS * w + (GALLERY_COLUMNS - 1) * GUTTER
    grid = np.ones((grid_h, grid_w, c), dtype=np.float32)
    for r, row in enumerate(rows):
        for col, img in enumerate(row):
            y0 = r * (h + GUTTER)
            x0 = col * (w + GUTTER)
            grid[y0:y0 + h, x0:x0 + w] = img.pixels
    return grid


@cli.command()
@click.argument("input_path", type=click.Path(exists=True))
@click.argument("output_path")
@click.option("--format", "fmt", default="auto", show_default=True,
              type=click.Choice(["auto", "stl10", "imgdir"]))
@click.option("--labels-in", type=click.Path(exists=True), default=None)
@click.option("-n", "--count", default=5, show_default=True,
              help="Number of input images (rows).")
@_config_options
@click.option("--seed", type=int, default=None)
def gallery(input_path, output_path, fmt, labels_in, count, mode, p, q, alpha,
            sl, sh, rl, rh, style, seed):
    """Write a side-by-side grid of the augmentation modes as a PNG."""
    if count < 1:
        raise click.UsageError("-n must be >= 1")
    seed = _resolve_seed(seed)
    cfg = _build_config(mode, p, q, alpha, sl, sh, rl, rh)
    provider = _build_provider(style, alpha)
    view = _read_dataset(_resolve_format(fmt, input_path), input_path, labels_in)
    if not len(view):
        raise click.UsageError("input dataset is empty")
    validate_config(cfg, view[0].image.width, view[0].image.height)
    grid = build_gallery(view, cfg, provider, count, seed)
    PilImage.fromarray(dataio._quantize(grid).squeeze()).save(output_path)
    click.echo(f"gallery: {count} rows -> {output_path}")


def main(argv=None) -> int:
    """Entry point mapping errors to the documented exit codes."""
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        sys.exit(2)
    except click.ClickException as exc:
        exc.show()
        sys.exit(exc.exit_code)
    except click.exceptions.Abort:
        sys.exit(1)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(2)
    except StylepatchError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    except OSError as exc:
        click.echo(f"i/o error: {exc}", err=True)
        sys.exit(1)
    return 0


if __name__ == "__main__":
    main()
