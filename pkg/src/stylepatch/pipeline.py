"""Gate-and-patch augmentation of single images and whole datasets.

Per item, the draw order on its stream is: gate draw, then provider draws,
then patch-mode draws. Datasets are processed as an embarrassingly parallel
map with one derived stream per emitted item, so outputs are identical for
any worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .errors import DimensionMismatch, SamplingExhausted
from .patching import fill_region, patch_pixels, patch_subregion, sample_region
from .rng import RngStream, derive_stream
from .style import StyleProvider
from .types import AugmentConfig, AugmentRecord, Image, validate_config


@dataclass(frozen=True)
class DatasetItem:
    """One dataset entry: image, optional class label, unique id."""

    image: Image
    label: Optional[int]
    source_id: str


@dataclass(frozen=True)
class DatasetView:
    """Ordered, dimension-homogeneous collection of items with unique ids."""

    items: tuple[DatasetItem, ...]

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        if self.items:
            shape = self.items[0].image.pixels.shape
            for it in self.items:
                if it.image.pixels.shape != shape:
                    raise DimensionMismatch(
                        f"item {it.source_id}: shape {it.image.pixels.shape} != {shape}"
                    )
        ids = [it.source_id for it in self.items]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate source ids in dataset")

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, i: int) -> DatasetItem:
        return self.items[i]


def random_style_replacement(
    image: Image,
    rng: RngStream,
    cfg: AugmentConfig,
    provider: StyleProvider,
    source_id: str = "",
) -> tuple[Image, AugmentRecord]:
    """Gate, stylize and patch one image; return the result and its record.

    A uniform draw in [0, 1) below ``gate_probability`` applies the
    configured patch mode; otherwise the image passes through unchanged. The
    erase modes are baselines that skip the provider entirely. Exhausted
    region sampling leaves the image unchanged and records the reason.
    """
    index = rng.stream_index

    def skipped(reason: Optional[str], attempts: int = 0) -> tuple[Image, AugmentRecord]:
        return image, AugmentRecord(
            source_id=source_id,
            stream_index=index,
            applied=False,
            patch_mode=cfg.patch_mode,
            attempts_used=attempts,
            reason=reason,
        )

    if cfg.patch_mode == "none":
        return skipped("mode-none")

    p1 = float(rng.random())
    if p1 >= cfg.gate_probability:
        return skipped(None)

    if cfg.patch_mode in ("erase-noise", "erase-mean"):
        try:
            draw = sample_region(rng, image.width, image.height, cfg)
        except SamplingExhausted as exc:
            return skipped("sampling-exhausted", exc.attempts_used)
        fill = "noise" if cfg.patch_mode == "erase-noise" else "mean"
        out = fill_region(image, draw.region, fill, rng)
        return out, AugmentRecord(
            source_id=source_id,
            stream_index=index,
            applied=True,
            patch_mode=cfg.patch_mode,
            region_draw={"target_area": draw.target_area, "aspect": draw.aspect},
            attempts_used=draw.attempts_used,
        )

    if cfg.patch_mode == "subregion":
        fused = getattr(provider, "stylize_subregion", None)
        if fused is not None:
            # bit-identical to stylize + patch_subregion, but skips the
            # full-frame stylize work
            try:
                out, style_params, draw = fused(image, rng, cfg)
            except SamplingExhausted as exc:
                return skipped("sampling-exhausted", exc.attempts_used)
            return out, AugmentRecord(
                source_id=source_id,
                stream_index=index,
                applied=True,
                patch_mode="subregion",
                region=draw.region,
                region_draw={"target_area": draw.target_area, "aspect": draw.aspect},
                style_params=style_params,
                attempts_used=draw.attempts_used,
            )

    styled, style_params = provider.stylize(image, rng)

    if cfg.patch_mode == "full":
        return styled, AugmentRecord(
            source_id=source_id,
            stream_index=index,
            applied=True,
            patch_mode="full",
            style_params=style_params,
        )

    if cfg.patch_mode == "pixel":
        out, _mask = patch_pixels(image, styled, rng, cfg.pixel_probability)
        return out, AugmentRecord(
            source_id=source_id,
            stream_index=index,
            applied=True,
            patch_mode="pixel",
            pixel_mask_seed=index,
            style_params=style_params,
        )

    # subregion
    try:
        draw = sample_region(rng, image.width, image.height, cfg)
    except SamplingExhausted as exc:
        return skipped("sampling-exhausted", exc.attempts_used)
    out = patch_subregion(image, styled, draw.region)
    return out, AugmentRecord(
        source_id=source_id,
        stream_index=index,
        applied=True,
        patch_mode="subregion",
        region=draw.region,
        region_draw={"target_area": draw.target_area, "aspect": draw.aspect},
        style_params=style_params,
        attempts_used=draw.attempts_used,
    )


def replay_item(
    image: Image,
    record: AugmentRecord,
    cfg: AugmentConfig,
    provider: StyleProvider,
    master_seed: int,
) -> tuple[Image, AugmentRecord]:
    """Reproduce one augmented output from its record and the run seed."""
    rng = derive_stream(master_seed, record.stream_index)
    return random_style_replacement(image, rng, cfg, provider, source_id=record.source_id)


def _run_items(jobs, worker, threads: int):
    if threads <= 1:
        return [worker(job) for job in jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, jobs))


def augment_dataset(
    view: DatasetView,
    cfg: AugmentConfig,
    provider: StyleProvider,
    ratio: int,
    master_seed: int,
    threads: int = 1,
) -> tuple[DatasetView, list[AugmentRecord]]:
    """Emit all originals followed by ``ratio`` gated copies of each.

    Copy ``j`` of original ``i`` uses stream index ``len(view) + i*ratio + j``
    and carries its source's label; the manifest gets one record per emitted
    copy, in emission order.
    """
    if ratio < 0:
        raise ValueError(f"ratio must be >= 0, got {ratio}")
    if len(view) and ratio:
        validate_config(cfg, view[0].image.width, view[0].image.height)

    n = len(view)
    jobs = [(i, j) for i in range(n) for j in range(ratio)]

    def worker(job):
        i, j = job
        item = view[i]
        stream = derive_stream(master_seed, n + i * ratio + j)
        out, record = random_style_replacement(
            item.image, stream, cfg, provider, source_id=item.source_id
        )
        copy = DatasetItem(
            image=out, label=item.label, source_id=f"{item.source_id}#aug{j}"
        )
        return copy, record

    results = _run_items(jobs, worker, threads)
    items = list(view.items) + [copy for copy, _ in results]
    records = [record for _, record in results]
    return DatasetView(items=tuple(items)), records


def augment_dataset_in_place(
    view: DatasetView,
    cfg: AugmentConfig,
    provider: StyleProvider,
    master_seed: int,
    stream_offset: int = 0,
    threads: int = 1,
) -> tuple[DatasetView, list[AugmentRecord]]:
    """Gate-and-patch each original itself (dataloader-style use).

    Item ``i`` uses stream index ``stream_offset + i``; output has the same
    length and ids as the input.
    """
    if len(view):
        validate_config(cfg, view[0].image.width, view[0].image.height)

    def worker(i):
        item = view[i]
        stream = derive_stream(master_seed, stream_offset + i)
        out, record = random_style_replacement(
            item.image, stream, cfg, provider, source_id=item.source_id
        )
        return DatasetItem(image=out, label=item.label, source_id=item.source_id), record

    results = _run_items(range(len(view)), worker, threads)
    items = tuple(it for it, _ in results)
    records = [record for _, record in results]
    return DatasetView(items=items), records
