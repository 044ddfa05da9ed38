"""stylepatch: deterministic style-replacement image augmentation."""

from .errors import (
    ChannelMismatch,
    ConfigError,
    DimensionMismatch,
    EmptyRanges,
    Infeasible,
    OutOfBounds,
    RegionOutOfBounds,
    SamplingExhausted,
    StylepatchError,
)
from .patching import (
    PixelMask,
    RegionSample,
    fill_region,
    patch_pixels,
    patch_subregion,
    sample_region,
)
from .pipeline import (
    DatasetItem,
    DatasetView,
    augment_dataset,
    augment_dataset_in_place,
    random_style_replacement,
    replay_item,
)
from .rng import RngStream, derive_stream
from .style import (
    ColorStatParams,
    ColorStatProvider,
    IdentityProvider,
    ParamBoxes,
    StyleProvider,
    color_stat_transfer,
    identity_stylize,
)
from .types import (
    AugmentConfig,
    AugmentRecord,
    Image,
    Region,
    validate_config,
)

__version__ = "0.1.0"

__all__ = [
    "AugmentConfig",
    "AugmentRecord",
    "ChannelMismatch",
    "ColorStatParams",
    "ColorStatProvider",
    "ConfigError",
    "DatasetItem",
    "DatasetView",
    "DimensionMismatch",
    "EmptyRanges",
    "IdentityProvider",
    "Image",
    "Infeasible",
    "OutOfBounds",
    "ParamBoxes",
    "PixelMask",
    "Region",
    "RegionOutOfBounds",
    "RegionSample",
    "RngStream",
    "SamplingExhausted",
    "StylepatchError",
    "StyleProvider",
    "augment_dataset",
    "augment_dataset_in_place",
    "color_stat_transfer",
    "derive_stream",
    "fill_region",
    "identity_stylize",
    "patch_pixels",
    "patch_subregion",
    "random_style_replacement",
    "replay_item",
    "sample_region",
    "validate_config",
]
