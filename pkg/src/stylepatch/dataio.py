"""Dataset codecs and manifest serialization.

The STL-10 binary layout stores each image as three planes of 96x96 bytes
(R, G, B), column-major within a plane; labels are one byte per image,
1-based on disk. Image directories hold one PNG per image with the label
inferred from the subdirectory name. Manifests are newline-delimited JSON
with a versioned header line.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np
from PIL import Image as PilImage, UnidentifiedImageError

from .errors import (
    DimensionMismatch,
    LabelCountMismatch,
    LabelOutOfRange,
    ManifestParseError,
    MixedDimensions,
    TruncatedFile,
    UnsupportedFormat,
)
from .pipeline import DatasetItem, DatasetView
from .types import AugmentConfig, AugmentRecord, Image

STL10_SIZE = 96
STL10_CHANNELS = 3
STL10_CLASSES = 10
STL10_IMAGE_BYTES = STL10_SIZE * STL10_SIZE * STL10_CHANNELS  # 27648

MANIFEST_VERSION = 1

_PNG_SUFFIX = ".png"


def _quantize(pixels: np.ndarray) -> np.ndarray:
    """[0,1] floats to bytes, round half up."""
    return np.floor(pixels.astype(np.float64) * 255.0 + 0.5).clip(0, 255).astype(np.uint8)


def read_stl10(image_file: str, label_file: Optional[str] = None) -> DatasetView:
    """Decode an STL-10 binary file (optionally with its label file).

    Intensities are mapped to [0, 1] by /255; labels from the file's 1..10
    to 0..9. Ids are the zero-based record indices.
    """
    raw = np.fromfile(image_file, dtype=np.uint8)
    if raw.size % STL10_IMAGE_BYTES != 0:
        raise TruncatedFile(
            f"{image_file}: {raw.size} bytes is not a multiple of {STL10_IMAGE_BYTES}"
        )
    n = raw.size // STL10_IMAGE_BYTES
    # [n, channel, column, row] on disk -> [n, row, column, channel]
    planes = raw.reshape(n, STL10_CHANNELS, STL10_SIZE, STL10_SIZE)
    pixels = planes.transpose(0, 3, 2, 1).astype(np.float32) / 255.0

    labels: list[Optional[int]] = [None] * n
    if label_file is not None:
        lab = np.fromfile(label_file, dtype=np.uint8)
        if lab.size != n:
            raise LabelCountMismatch(f"{lab.size} labels for {n} images")
        if lab.size and (lab.min() < 1 or lab.max() > STL10_CLASSES):
            raise LabelOutOfRange(
                f"labels must be in 1..{STL10_CLASSES}, got range "
                f"[{lab.min()}, {lab.max()}]"
            )
        labels = [int(v) - 1 for v in lab]

    items = tuple(
        DatasetItem(image=Image(pixels[i]), label=labels[i], source_id=str(i))
        for i in range(n)
    )
    return DatasetView(items=items)


def write_stl10(
    view: DatasetView, image_file: str, label_file: Optional[str] = None
) -> None:
    """Encode a dataset to the STL-10 binary layout (exact inverse of
    ``read_stl10`` including quantization, round half up)."""
    for it in view:
        if it.image.pixels.shape != (STL10_SIZE, STL10_SIZE, STL10_CHANNELS):
            raise DimensionMismatch(
                f"item {it.source_id}: shape {it.image.pixels.shape} is not "
                f"{STL10_SIZE}x{STL10_SIZE}x{STL10_CHANNELS}"
            )
    n = len(view)
    pixels = np.empty((n, STL10_SIZE, STL10_SIZE, STL10_CHANNELS), dtype=np.uint8)
    for i, it in enumerate(view):
        pixels[i] = _quantize(it.image.pixels)
    planes = pixels.transpose(0, 3, 2, 1)  # -> [n, channel, column, row]
    with open(image_file, "wb") as f:
        f.write(np.ascontiguousarray(planes).tobytes())
    if label_file is not None:
        labels = [it.label for it in view]
        if any(l is None for l in labels):
            raise LabelCountMismatch("cannot write labels: some items are unlabeled")
        with open(label_file, "wb") as f:
            f.write(bytes(int(l) + 1 for l in labels))


def read_image_dir(path: str) -> DatasetView:
    """Read one PNG per image; labels come from subdirectory names, assigned
    0..k-1 in sorted order. Files directly under ``path`` are unlabeled.
    Ordering is lexicographic by (subdir, filename)."""
    root = Path(path)
    class_dirs = sorted(p.name for p in root.iterdir() if p.is_dir())
    class_index = {name: i for i, name in enumerate(class_dirs)}

    entries: list[tuple[Optional[int], Path]] = []
    for f in sorted(p for p in root.iterdir() if p.is_file()):
        entries.append((None, f))
    for name in class_dirs:
        for f in sorted(p for p in (root / name).iterdir() if p.is_file()):
            entries.append((class_index[name], f))

    items = []
    shape = None
    for label, f in entries:
        if f.suffix.lower() != _PNG_SUFFIX:
            raise UnsupportedFormat(f"{f}: only PNG files are supported")
        try:
            with PilImage.open(f) as im:
                if im.mode not in ("L", "RGB"):
                    im = im.convert("RGB")
                arr = np.asarray(im, dtype=np.float32) / 255.0
        except UnidentifiedImageError as exc:
            raise UnsupportedFormat(f"{f}: {exc}")
        if arr.ndim == 2:
            arr = arr[:, :, None]
        if shape is None:
            shape = arr.shape
        elif arr.shape != shape:
            raise MixedDimensions(f"{f}: shape {arr.shape} != {shape}")
        rel = f.relative_to(root)
        items.append(DatasetItem(image=Image(arr), label=label, source_id=str(rel)))
    return DatasetView(items=tuple(items))


def write_image_dir(view: DatasetView, path: str) -> None:
    """Write one PNG per item. Labeled items go into ``class_<label>``
    subdirectories so a round trip recovers the labels; ids become safe
    filenames."""
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)
    for it in view:
        name = it.source_id.replace("/", "_").replace("#", "_")
        if not name.lower().endswith(_PNG_SUFFIX):
            name += _PNG_SUFFIX
        if it.label is None:
            target = root / name
        else:
            sub = root / f"class_{it.label}"
            sub.mkdir(exist_ok=True)
            target = sub / os.path.basename(name)
        PilImage.fromarray(_quantize(it.image.pixels).squeeze()).save(target)


@dataclass(frozen=True)
class Manifest:
    """Run provenance: header metadata plus one record per augmented copy."""

    master_seed: int
    config: AugmentConfig
    provider_name: str
    records: tuple[AugmentRecord, ...] = field(default_factory=tuple)
    version: int = MANIFEST_VERSION
    extra: Optional[dict] = None  # CLI flag echo, free-form

    def header_dict(self) -> dict:
        d = {
            "version": self.version,
            "master_seed": self.master_seed,
            "config": self.config.to_dict(),
            "provider": self.provider_name,
        }
        if self.extra is not None:
            d["extra"] = self.extra
        return d


def write_manifest(manifest: Manifest, path: str) -> None:
    """One JSON object per line: header first, then records."""
    with open(path, "w", encoding="utf-8") as f:
        f.write(json.dumps(manifest.header_dict(), sort_keys=True) + "\n")
        for rec in manifest.records:
            f.write(json.dumps(rec.to_dict(), sort_keys=True) + "\n")


def read_manifest(path: str) -> Manifest:
    """Inverse of ``write_manifest``; parse failures name the line."""
    with open(path, "r", encoding="utf-8") as f:
        lines = f.read().splitlines()
    if not lines:
        raise ManifestParseError("empty manifest", 1)
    try:
        header = json.loads(lines[0])
        version = header["version"]
        master_seed = header["master_seed"]
        config = AugmentConfig.from_dict(header["config"])
        provider = header["provider"]
        extra = header.get("extra")
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ManifestParseError(str(exc), 1)
    records = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            records.append(AugmentRecord.from_dict(json.loads(line)))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise ManifestParseError(str(exc), lineno)
    return Manifest(
        master_seed=master_seed,
        config=config,
        provider_name=provider,
        records=tuple(records),
        version=version,
        extra=extra,
    )
