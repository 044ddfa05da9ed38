"""Style providers: fast, randomized stylizers used as patch sources.

The built-in provider performs per-channel statistical color transfer toward
randomly sampled target moments, blended with the original by a convex
weight alpha. An external provider can be loaded from a serialized network
(see ``external.py``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Protocol, runtime_checkable

import numpy as np

from .errors import ChannelMismatch
from .rng import RngStream
from .types import Image

#: Guards division when a source channel is constant.
VARIANCE_FLOOR = 1e-6


@runtime_checkable
class StyleProvider(Protocol):
    """Stylizer contract: deterministic given (image, stream), dimension and
    range preserving. ``stylize`` returns the stylized image and the sampled
    parameters for the manifest (or None)."""

    name: str

    def stylize(self, image: Image, rng: RngStream) -> tuple[Image, Optional[dict]]: ...


@dataclass(frozen=True)
class ParamBoxes:
    """Uniform sampling boxes for the color-transfer targets."""

    mean_low: float = 0.25
    mean_high: float = 0.75
    std_low: float = 0.05
    std_high: float = 0.3

    def __post_init__(self):
        if not (0.0 <= self.mean_low <= self.mean_high <= 1.0):
            raise ValueError(f"mean box [{self.mean_low}, {self.mean_high}] outside [0, 1]")
        if not (0.0 < self.std_low <= self.std_high <= 0.5):
            raise ValueError(f"std box [{self.std_low}, {self.std_high}] outside (0, 0.5]")


@dataclass(frozen=True)
class ColorStatParams:
    """Sampled per-channel targets and the blend weight of one stylize call."""

    target_mean: tuple[float, float, float]
    target_std: tuple[float, float, float]
    alpha: float

    def to_dict(self) -> dict:
        return {
            "target_mean": self.target_mean,
            "target_std": self.target_std,
            "alpha": self.alpha,
        }


def identity_stylize(image: Image) -> Image:
    """Return the input unchanged (test provider)."""
    return image


def color_stat_transfer(
    image: Image,
    rng: RngStream,
    alpha: float,
    boxes: ParamBoxes = ParamBoxes(),
) -> tuple[Image, ColorStatParams]:
    """Shift each channel's mean/std toward randomly drawn targets.

    Draw order: the three target means, then the three target stds. The fully
    stylized pixel is ``(x - mu_s) / max(sigma_s, floor) * sigma_t + mu_t``;
    the result is ``alpha``-blended with the input and clamped to [0, 1].
    """
    if image.channels != 3:
        raise ChannelMismatch(f"color transfer needs 3 channels, got {image.channels}")
    mu_t = rng.uniform(boxes.mean_low, boxes.mean_high, size=3)
    sigma_t = rng.uniform(boxes.std_low, boxes.std_high, size=3)
    params = ColorStatParams(
        target_mean=tuple(float(v) for v in mu_t),
        target_std=tuple(float(v) for v in sigma_t),
        alpha=float(alpha),
    )
    if alpha == 0.0:
        # interpolation endpoint: bit-exact identity (targets still drawn so
        # the stream position is independent of alpha)
        return image, params

    mu_s, gain, offset = transfer_coefficients(image.pixels, mu_t, sigma_t, alpha)
    out = apply_transfer(image.pixels, mu_s, gain, offset)
    return Image._wrap(out), params


def transfer_coefficients(
    px: np.ndarray, mu_t: np.ndarray, sigma_t: np.ndarray, alpha: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-channel (mu_s, gain, offset) such that the transfer is
    ``clip((x - mu_s) * gain + offset)``.

    Refactored around (x - mu_s) so constant channels map exactly to the
    blended target mean. Source moments are taken over the full image.
    """
    flat = px.reshape(-1, px.shape[-1])
    n = flat.shape[0]
    mu_s = np.einsum("ij->j", flat).astype(np.float64) / n
    mean_sq = np.einsum("ij,ij->j", flat, flat).astype(np.float64) / n
    sigma_s = np.sqrt(np.maximum(mean_sq - mu_s * mu_s, 0.0))
    if sigma_s.min() < 1e-3:
        # near-constant channels need exact moments: float32 accumulation
        # error gets amplified by the large 1/sigma scale below
        mu_s = np.einsum("ij->j", flat, dtype=np.float64) / n
        mean_sq = np.einsum("ij,ij->j", flat, flat, dtype=np.float64) / n
        sigma_s = np.sqrt(np.maximum(mean_sq - mu_s * mu_s, 0.0))
    scale = sigma_t / np.maximum(sigma_s, VARIANCE_FLOOR)
    gain = (alpha * scale + (1.0 - alpha)).astype(np.float32)
    offset = (mu_s + alpha * (mu_t - mu_s)).astype(np.float32)
    return mu_s.astype(np.float32), gain, offset


def apply_transfer(
    px: np.ndarray, mu_s: np.ndarray, gain: np.ndarray, offset: np.ndarray
) -> np.ndarray:
    """Elementwise ``clip((px - mu_s) * gain + offset)``; px may be any slice."""
    out = px - mu_s
    out *= gain
    out += offset
    np.clip(out, 0.0, 1.0, out=out)
    return out


@dataclass(frozen=True)
class IdentityProvider:
    """Provider that returns the input unchanged."""

    name: str = "identity"

    def stylize(self, image: Image, rng: RngStream) -> tuple[Image, Optional[dict]]:
        return identity_stylize(image), None

    def stylize_subregion(self, image: Image, rng: RngStream, cfg):
        """Fused stylize-then-patch: patching an image with itself is a no-op,
        so only the region draws are consumed."""
        from .patching import sample_region

        draw = sample_region(rng, image.width, image.height, cfg)
        return image, None, draw


@dataclass(frozen=True)
class ColorStatProvider:
    """Built-in statistical color-transfer provider."""

    alpha: float = 0.5
    boxes: ParamBoxes = ParamBoxes()
    name: str = "colorstat"

    def stylize(self, image: Image, rng: RngStream) -> tuple[Image, Optional[dict]]:
        out, params = color_stat_transfer(image, rng, self.alpha, self.boxes)
        return out, params.to_dict()

    def stylize_subregion(self, image: Image, rng: RngStream, cfg):
        """Fused stylize-then-patch: bit-identical to stylize followed by
        a rectangle overwrite, but only touches the region's pixels.

        Draw order matches the unfused path (targets, then region)."""
        from .patching import sample_region

        if image.channels != 3:
            raise ChannelMismatch(f"color transfer needs 3 channels, got {image.channels}")
        mu_t = rng.uniform(self.boxes.mean_low, self.boxes.mean_high, size=3)
        sigma_t = rng.uniform(self.boxes.std_low, self.boxes.std_high, size=3)
        params = ColorStatParams(
            target_mean=tuple(float(v) for v in mu_t),
            target_std=tuple(float(v) for v in sigma_t),
            alpha=float(self.alpha),
        )
        draw = sample_region(rng, image.width, image.height, cfg)
        if self.alpha == 0.0:
            return image, params.to_dict(), draw
        mu_s, gain, offset = transfer_coefficients(image.pixels, mu_t, sigma_t, self.alpha)
        out = image.pixels.copy()
        r = draw.region
        ys = slice(r.y, r.y + r.height)
        xs = slice(r.x, r.x + r.width)
        out[ys, xs] = apply_transfer(image.pixels[ys, xs], mu_s, gain, offset)
        return Image._wrap(out), params.to_dict(), draw
