"""Exception hierarchy for stylepatch."""


class StylepatchError(Exception):
    """Base class for all stylepatch errors."""


class ConfigError(StylepatchError):
    """A configuration was rejected by validation."""


class EmptyRanges(ConfigError):
    """A (min, max) range field has min > max."""


class OutOfBounds(ConfigError):
    """A probability or range field lies outside its permitted bounds."""


class Infeasible(ConfigError):
    """No region satisfying the configured area/aspect ranges fits the image."""


class SamplingExhausted(StylepatchError):
    """Region sampling failed after all shape resamples and placement attempts."""

    def __init__(self, message, attempts_used=0):
        super().__init__(message)
        self.attempts_used = attempts_used


class DimensionMismatch(StylepatchError):
    """Two images (or an image and a dataset) disagree on dimensions or channels."""


class RegionOutOfBounds(StylepatchError):
    """A region does not fit inside the image it is applied to."""


class ChannelMismatch(StylepatchError):
    """An operation requires a channel count the image does not have."""


class ModelNotFound(StylepatchError):
    """External style model file does not exist."""


class ModelParseError(StylepatchError):
    """External style model file could not be deserialized."""


class ShapeMismatch(StylepatchError):
    """External style model input/output shapes are incompatible with the image."""


class CodecError(StylepatchError):
    """Base class for dataset codec failures."""


class TruncatedFile(CodecError):
    """Binary dataset file size is not a whole number of records."""


class LabelCountMismatch(CodecError):
    """Label file entry count differs from the image count."""


class LabelOutOfRange(CodecError):
    """A stored label byte is outside the valid class range."""


class UnsupportedFormat(CodecError):
    """A file in an image directory is not a supported raster format."""


class MixedDimensions(CodecError):
    """Images in one dataset do not all share the same dimensions."""


class ManifestParseError(CodecError):
    """A manifest line failed to parse."""

    def __init__(self, message, line_number):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number
