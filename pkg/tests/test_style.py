import numpy as np
import pytest

from stylepatch import (
    ChannelMismatch,
    ColorStatProvider,
    IdentityProvider,
    Image,
    ParamBoxes,
    color_stat_transfer,
    derive_stream,
    identity_stylize,
)

from conftest import make_image
from oracles import image_to_nested, oracle_color_stat

#: boxes under which the clamp stays inactive for uniform-noise images
NARROW_BOXES = ParamBoxes(mean_low=0.45, mean_high=0.55, std_low=0.05, std_high=0.12)


class TestIdentity:
    def test_identity_stylize(self, small_image):
        assert identity_stylize(small_image) is small_image

    def test_provider(self, small_image):
        out, params = IdentityProvider().stylize(small_image, derive_stream(0, 0))
        assert out.same_pixels(small_image)
        assert params is None


class TestColorStatTransfer:
    def test_alpha_zero_is_identity(self, small_image):
        out, _ = color_stat_transfer(small_image, derive_stream(3, 0), alpha=0.0)
        assert out.same_pixels(small_image)

    def test_constant_image_hits_variance_floor(self):
        base = Image(np.full((4, 4, 3), 0.5, dtype=np.float32))
        boxes = ParamBoxes(mean_low=0.2, mean_high=0.2, std_low=0.1, std_high=0.1)
        out, params = color_stat_transfer(base, derive_stream(3, 1), alpha=1.0, boxes=boxes)
        assert np.allclose(out.pixels, 0.2, atol=1e-6)
        assert params.target_mean == pytest.approx((0.2, 0.2, 0.2))

    def test_moments_match_targets_at_alpha_one(self):
        for index in range(20):
            img = make_image(seed=100 + index, height=32, width=32)
            out, params = color_stat_transfer(
                img, derive_stream(17, index), alpha=1.0, boxes=NARROW_BOXES
            )
            # clamp must have stayed inactive for the moment identity to hold
            assert out.pixels.min() > 0.0 and out.pixels.max() < 1.0
            mean = out.pixels.mean(axis=(0, 1), dtype=np.float64)
            std = out.pixels.std(axis=(0, 1), dtype=np.float64)
            assert np.allclose(mean, params.target_mean, atol=1e-3)
            assert np.allclose(std, params.target_std, atol=1e-3)

    def test_matches_scalar_oracle(self):
        img = make_image(seed=12, height=6, width=5)
        rng = derive_stream(21, 4)
        out, params = color_stat_transfer(img, rng, alpha=0.5)
        expected = oracle_color_stat(
            image_to_nested(img), params.target_mean, params.target_std, 0.5
        )
        assert np.allclose(out.pixels, np.array(expected, dtype=np.float32), atol=1e-6)

    def test_range_preserved(self):
        for index in range(200):
            img = make_image(seed=index, height=8, width=8)
            out, _ = color_stat_transfer(img, derive_stream(9, index), alpha=1.0)
            assert out.pixels.min() >= 0.0
            assert out.pixels.max() <= 1.0

    def test_deterministic(self, small_image):
        a, pa = color_stat_transfer(small_image, derive_stream(7, 7), alpha=0.5)
        b, pb = color_stat_transfer(small_image, derive_stream(7, 7), alpha=0.5)
        assert a.same_pixels(b)
        assert pa == pb

    def test_rejects_grayscale(self):
        gray = Image(np.zeros((4, 4, 1), dtype=np.float32))
        with pytest.raises(ChannelMismatch):
            color_stat_transfer(gray, derive_stream(0, 0), alpha=0.5)

    def test_param_box_validation(self):
        with pytest.raises(ValueError):
            ParamBoxes(std_low=0.0)
        with pytest.raises(ValueError):
            ParamBoxes(mean_low=0.8, mean_high=0.2)


class TestColorStatProvider:
    def test_params_recorded(self, small_image):
        out, params = ColorStatProvider(alpha=0.5).stylize(small_image, derive_stream(1, 1))
        assert set(params) == {"target_mean", "target_std", "alpha"}
        assert params["alpha"] == 0.5
        assert out.same_shape(small_image)
