"""Core domain types: images, regions, configuration, provenance records."""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from typing import Optional

import numpy as np

from .errors import EmptyRanges, Infeasible, OutOfBounds

PATCH_MODES = ("subregion", "pixel", "full", "erase-noise", "erase-mean", "none")

#: Patch modes that need a sampled rectangle, hence a feasibility check.
REGION_MODES = ("subregion", "erase-noise", "erase-mean")


@dataclass(frozen=True, eq=False)
class Image:
    """A height × width × channels raster with intensities in [0, 1].

    Pixels are stored row-major and channel-interleaved (``pixels[y, x, c]``,
    float32, C-contiguous) regardless of the source format. The array is
    frozen on construction; operations return new images, never mutate.
    """

    pixels: np.ndarray

    def __post_init__(self):
        arr = self.pixels
        if not isinstance(arr, np.ndarray) or arr.ndim != 3:
            raise ValueError("pixels must be a 3-d array (height, width, channels)")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"zero image dimension: {arr.shape}")
        if arr.shape[2] not in (1, 3):
            raise ValueError(f"unsupported channel count {arr.shape[2]} (expected 1 or 3)")
        if arr.dtype != np.float32 or not arr.flags.c_contiguous:
            arr = np.ascontiguousarray(arr, dtype=np.float32)
        lo, hi = float(arr.min()), float(arr.max())
        if lo < 0.0 or hi > 1.0:
            raise ValueError(f"intensities outside [0, 1]: min={lo}, max={hi}")
        arr = arr if arr is not self.pixels else arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "pixels", arr)

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "Image":
        """Adopt a fresh float32 C-contiguous array already known to be valid.

        Internal fast path for operations that construct their output arrays;
        skips the validating copy.
        """
        obj = object.__new__(cls)
        arr.flags.writeable = False
        object.__setattr__(obj, "pixels", arr)
        return obj

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def channels(self) -> int:
        return self.pixels.shape[2]

    @property
    def area(self) -> int:
        return self.width * self.height

    def same_shape(self, other: "Image") -> bool:
        return self.pixels.shape == other.pixels.shape

    def same_pixels(self, other: "Image") -> bool:
        """Bit-exact pixel equality."""
        return self.pixels.shape == other.pixels.shape and bool(
            np.array_equal(self.pixels, other.pixels)
        )


@dataclass(frozen=True)
class Region:
    """Axis-aligned rectangle with its minimal-index corner at (x, y).

    x is the column, y the row, in standard raster coordinates (origin at the
    first stored pixel).
    """

    x: int
    y: int
    width: int
    height: int

    def __post_init__(self):
        if self.x < 0 or self.y < 0:
            raise ValueError(f"negative region corner ({self.x}, {self.y})")
        if self.width < 1 or self.height < 1:
            raise ValueError(f"degenerate region size {self.width}x{self.height}")

    def fits(self, image_width: int, image_height: int) -> bool:
        return self.x + self.width <= image_width and self.y + self.height <= image_height

    def to_dict(self) -> dict:
        return {"x": self.x, "y": self.y, "width": self.width, "height": self.height}

    @classmethod
    def from_dict(cls, d: dict) -> "Region":
        return cls(x=d["x"], y=d["y"], width=d["width"], height=d["height"])


@dataclass(frozen=True)
class AugmentConfig:
    """All augmentation parameters.

    Defaults: gate and pixel probabilities 0.5, blend weight 0.5, patched-area
    fraction in [0.02, 0.4], aspect ratio (height/width) in [0.3, 1/0.3].
    """

    gate_probability: float = 0.5
    area_ratio_min: float = 0.02
    area_ratio_max: float = 0.4
    aspect_ratio_min: float = 0.3
    aspect_ratio_max: float = 1.0 / 0.3
    patch_mode: str = "subregion"
    pixel_probability: float = 0.5
    style_alpha: float = 0.5
    max_placement_attempts: int = 100
    max_shape_resamples: int = 10

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "AugmentConfig":
        return cls(**d)


def validate_config(cfg: AugmentConfig, width: int, height: int) -> AugmentConfig:
    """Check a config against an image size; return it unchanged or raise.

    Pure function: same inputs, same verdict. Raises ``OutOfBounds`` for
    probabilities or range endpoints outside their bounds, ``EmptyRanges``
    for inverted ranges, and ``Infeasible`` when no rectangle in the
    configured area/aspect ranges can fit a width × height image.
    """
    for name in ("gate_probability", "pixel_probability", "style_alpha"):
        v = getattr(cfg, name)
        if not 0.0 <= v <= 1.0:
            raise OutOfBounds(f"{name}={v} outside [0, 1]")
    if cfg.patch_mode not in PATCH_MODES:
        raise OutOfBounds(f"unknown patch_mode {cfg.patch_mode!r}; expected one of {PATCH_MODES}")
    if not (0.0 < cfg.area_ratio_min and cfg.area_ratio_max <= 1.0):
        raise OutOfBounds(
            f"area ratio range ({cfg.area_ratio_min}, {cfg.area_ratio_max}) outside (0, 1]"
        )
    if cfg.area_ratio_min > cfg.area_ratio_max:
        raise EmptyRanges(f"area_ratio_min {cfg.area_ratio_min} > area_ratio_max {cfg.area_ratio_max}")
    if cfg.aspect_ratio_min <= 0.0:
        raise OutOfBounds(f"aspect_ratio_min {cfg.aspect_ratio_min} must be > 0")
    if cfg.aspect_ratio_min > cfg.aspect_ratio_max:
        raise EmptyRanges(
            f"aspect_ratio_min {cfg.aspect_ratio_min} > aspect_ratio_max {cfg.aspect_ratio_max}"
        )
    if cfg.max_placement_attempts < 1 or cfg.max_shape_resamples < 1:
        raise OutOfBounds("placement attempt and shape resample caps must be positive")
    if width < 1 or height < 1:
        raise OutOfBounds(f"image size {width}x{height} must be positive")

    if cfg.patch_mode in REGION_MODES and not _region_feasible(cfg, width, height):
        raise Infeasible(
            f"no rectangle with area fraction >= {cfg.area_ratio_min} and aspect ratio in "
            f"[{cfg.aspect_ratio_min}, {cfg.aspect_ratio_max}] fits a {width}x{height} image"
        )
    return cfg


def _region_feasible(cfg: AugmentConfig, width: int, height: int) -> bool:
    """True when at least one in-range (area, aspect) pair fits the image.

    Uses the smallest allowed area and the aspect ratio closest to the
    image's own, which jointly minimize the larger of the two relative
    overhangs; dimensions are ceil-discretized for a conservative check.
    """
    target_area = cfg.area_ratio_min * width * height
    aspect = min(max(height / width, cfg.aspect_ratio_min), cfg.aspect_ratio_max)
    h_e = math.sqrt(target_area * aspect)
    w_e = math.sqrt(target_area / aspect)
    return math.ceil(h_e) <= height and math.ceil(w_e) <= width


@dataclass(frozen=True)
class AugmentRecord:
    """Provenance of one augmented image, sufficient to replay it bit-exactly
    given the run's master seed."""

    source_id: str
    stream_index: int
    applied: bool
    patch_mode: str
    region: Optional[Region] = None
    region_draw: Optional[dict] = None  # pre-discretization target area / aspect
    pixel_mask_seed: Optional[int] = None
    style_params: Optional[dict] = None
    attempts_used: int = 0
    reason: Optional[str] = None

    def __post_init__(self):
        has_region = self.region is not None
        expect_region = self.patch_mode == "subregion" and self.applied
        if has_region != expect_region:
            raise ValueError(
                "region must be present exactly when patch_mode='subregion' and applied=True"
            )

    def to_dict(self) -> dict:
        d = asdict(self)
        if self.region is not None:
            d["region"] = self.region.to_dict()
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "AugmentRecord":
        d = dict(d)
        if d.get("region") is not None:
            d["region"] = Region.from_dict(d["region"])
        return cls(**d)
