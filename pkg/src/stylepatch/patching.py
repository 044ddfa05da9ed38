"""Region sampling and the ways of writing a source image into a base image.

Region sampling follows a rejection scheme: a rectangle shape is drawn from
the configured area/aspect ranges, then integer corners are drawn uniformly
over the whole image and rejected until the rectangle fits. Both loops are
capped so the sampler always terminates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, RegionOutOfBounds, SamplingExhausted
from .rng import RngStream
from .types import AugmentConfig, Image, Region

FILL_KINDS = ("noise", "mean", "zero")


@dataclass(frozen=True, eq=False)
class PixelMask:
    """Per-position replacement mask (true = pixel was substituted)."""

    bits: np.ndarray  # bool, shape (height, width)

    def __post_init__(self):
        arr = np.asarray(self.bits, dtype=bool)
        arr = arr if arr is not self.bits else arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "bits", arr)

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    def replaced_fraction(self) -> float:
        return float(self.bits.mean())


@dataclass(frozen=True)
class RegionSample:
    """A sampled region plus the pre-discretization draw that produced it."""

    region: Region
    attempts_used: int
    target_area: float  # continuous area drawn before discretization
    aspect: float  # height/width ratio drawn


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def sample_region(
    rng: RngStream, width: int, height: int, cfg: AugmentConfig
) -> RegionSample:
    """Draw a rectangle whose area fraction and aspect ratio lie in the
    configured ranges and whose discretized extent fits the image.

    Draw order per shape round: area fraction, aspect ratio, then corner
    pairs (x, y) as uniform integers over {0..width-1} × {0..height-1},
    rejected until ``x + w <= width and y + h <= height``. After
    ``max_placement_attempts`` rejections the shape is redrawn, up to
    ``max_shape_resamples`` times.
    """
    image_area = width * height
    attempts = 0
    for _ in range(cfg.max_shape_resamples):
        target_area = rng.uniform(cfg.area_ratio_min, cfg.area_ratio_max) * image_area
        aspect = rng.uniform(cfg.aspect_ratio_min, cfg.aspect_ratio_max)
        h_e = math.sqrt(target_area * aspect)
        w_e = math.sqrt(target_area / aspect)
        w_px = max(1, _round_half_up(w_e))
        h_px = max(1, _round_half_up(h_e))
        for _ in range(cfg.max_placement_attempts):
            x = int(rng.integers(0, width))
            y = int(rng.integers(0, height))
            attempts += 1
            if x + w_px <= width and y + h_px <= height:
                return RegionSample(
                    region=Region(x=x, y=y, width=w_px, height=h_px),
                    attempts_used=attempts,
                    target_area=float(target_area),
                    aspect=float(aspect),
                )
    raise SamplingExhausted(
        f"no placement found in {cfg.max_shape_resamples} shape rounds of "
        f"{cfg.max_placement_attempts} attempts",
        attempts_used=attempts,
    )


def _check_pair(base: Image, style: Image) -> None:
    if base.pixels.shape != style.pixels.shape:
        raise DimensionMismatch(
            f"base {base.pixels.shape} vs style {style.pixels.shape}"
        )


def _check_region(image: Image, region: Region) -> None:
    if not region.fits(image.width, image.height):
        raise RegionOutOfBounds(
            f"region {region} does not fit {image.width}x{image.height} image"
        )


def patch_subregion(base: Image, style: Image, region: Region) -> Image:
    """Overwrite the region's pixels with the style image's; leave the rest."""
    _check_pair(base, style)
    _check_region(base, region)
    out = base.pixels.copy()
    ys = slice(region.y, region.y + region.height)
    xs = slice(region.x, region.x + region.width)
    out[ys, xs] = style.pixels[ys, xs]
    return Image._wrap(out)


def patch_pixels(
    base: Image, style: Image, rng: RngStream, q: float
) -> tuple[Image, PixelMask]:
    """Replace each pixel position independently with probability q.

    One Bernoulli draw per position in row-major order; all channels of a
    position are replaced together.
    """
    _check_pair(base, style)
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"pixel probability {q} outside [0, 1]")
    draws = rng.random(size=(base.height, base.width))
    bits = draws < q
    out = np.where(bits[:, :, None], style.pixels, base.pixels)
    return Image._wrap(np.ascontiguousarray(out, dtype=np.float32)), PixelMask(bits)


def fill_region(
    base: Image, region: Region, fill: str, rng: RngStream | None = None
) -> Image:
    """Overwrite the region with noise, the per-channel image mean, or zeros.

    ``fill`` is one of 'noise' (uniform [0,1) intensities drawn from ``rng``),
    'mean', or 'zero'.
    """
    _check_region(base, region)
    if fill not in FILL_KINDS:
        raise ValueError(f"unknown fill kind {fill!r}; expected one of {FILL_KINDS}")
    out = base.pixels.copy()
    ys = slice(region.y, region.y + region.height)
    xs = slice(region.x, region.x + region.width)
    if fill == "noise":
        if rng is None:
            raise ValueError("fill='noise' requires an RngStream")
        out[ys, xs] = rng.random(
            size=(region.height, region.width, base.channels)
        ).astype(np.float32)
    elif fill == "mean":
        out[ys, xs] = base.pixels.mean(axis=(0, 1), dtype=np.float64).astype(np.float32)
    else:
        out[ys, xs] = 0.0
    return Image._wrap(out)
