import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stylepatch import (
    AugmentConfig,
    DimensionMismatch,
    Image,
    Region,
    RegionOutOfBounds,
    SamplingExhausted,
    derive_stream,
    fill_region,
    patch_pixels,
    patch_subregion,
    sample_region,
)

from conftest import make_image
from oracles import (
    image_to_nested,
    oracle_fill_noise,
    oracle_patch_pixels,
    oracle_patch_subregion,
    oracle_sample_region,
)

DEFAULTS = AugmentConfig()


class TestSampleRegion:
    def test_forced_shape_on_4x4(self):
        # area fraction 0.25 of a 4x4 image at aspect 1 forces a 2x2 square
        cfg = AugmentConfig(area_ratio_min=0.25, area_ratio_max=0.25,
                            aspect_ratio_min=1.0, aspect_ratio_max=1.0)
        corners = set()
        for index in range(500):
            draw = sample_region(derive_stream(11, index), 4, 4, cfg)
            assert (draw.region.width, draw.region.height) == (2, 2)
            assert draw.region.fits(4, 4)
            corners.add((draw.region.x, draw.region.y))
        assert corners == {(x, y) for x in range(3) for y in range(3)}

    def test_matches_scalar_oracle(self):
        for index in range(300):
            got = sample_region(derive_stream(23, index), 96, 96, DEFAULTS)
            expected = oracle_sample_region(
                derive_stream(23, index), 96, 96,
                DEFAULTS.area_ratio_min, DEFAULTS.area_ratio_max,
                DEFAULTS.aspect_ratio_min, DEFAULTS.aspect_ratio_max,
                DEFAULTS.max_placement_attempts, DEFAULTS.max_shape_resamples,
            )
            assert expected is not None
            x, y, w, h, attempts, target_area, aspect = expected
            assert (got.region.x, got.region.y) == (x, y)
            assert (got.region.width, got.region.height) == (w, h)
            assert got.attempts_used == attempts
            assert got.target_area == pytest.approx(target_area)
            assert got.aspect == pytest.approx(aspect)

    def test_unique_placement_full_square(self):
        # only corner (0,0) fits a full-image square; raise the caps so the
        # 1-in-9216 placement draw is found with overwhelming probability
        cfg = AugmentConfig(area_ratio_min=1.0, area_ratio_max=1.0,
                            aspect_ratio_min=1.0, aspect_ratio_max=1.0,
                            max_placement_attempts=200_000, max_shape_resamples=1)
        draw = sample_region(derive_stream(5, 0), 96, 96, cfg)
        assert (draw.region.x, draw.region.y, draw.region.width, draw.region.height) \
            == (0, 0, 96, 96)

    def test_exhaustion_raises(self):
        cfg = AugmentConfig(area_ratio_min=1.0, area_ratio_max=1.0,
                            aspect_ratio_min=1.0, aspect_ratio_max=1.0,
                            max_placement_attempts=2, max_shape_resamples=2)
        with pytest.raises(SamplingExhausted) as err:
            sample_region(derive_stream(5, 1), 96, 96, cfg)
        assert err.value.attempts_used == 4

    def test_pre_discretization_values_in_range(self):
        for index in range(1000):
            draw = sample_region(derive_stream(31, index), 96, 96, DEFAULTS)
            frac = draw.target_area / (96 * 96)
            assert DEFAULTS.area_ratio_min <= frac <= DEFAULTS.area_ratio_max
            assert DEFAULTS.aspect_ratio_min <= draw.aspect <= DEFAULTS.aspect_ratio_max


class TestPatchSubregion:
    def test_single_pixel(self):
        base = Image(np.zeros((2, 2, 3), dtype=np.float32))
        style = Image(np.ones((2, 2, 3), dtype=np.float32))
        out = patch_subregion(base, style, Region(0, 0, 1, 1))
        expected = np.zeros((2, 2, 3), dtype=np.float32)
        expected[0, 0] = 1.0
        assert np.array_equal(out.pixels, expected)

    def test_identity_style_is_noop(self, small_image):
        out = patch_subregion(small_image, small_image, Region(1, 2, 4, 3))
        assert out.same_pixels(small_image)

    def test_dimension_mismatch(self, small_image):
        other = make_image(height=9, width=8)
        with pytest.raises(DimensionMismatch):
            patch_subregion(small_image, other, Region(0, 0, 1, 1))

    def test_region_out_of_bounds(self, small_image):
        with pytest.raises(RegionOutOfBounds):
            patch_subregion(small_image, small_image, Region(5, 5, 4, 4))

    def test_matches_scalar_oracle(self):
        base = make_image(seed=2, height=6, width=7)
        style = make_image(seed=3, height=6, width=7)
        region = Region(x=2, y=1, width=3, height=4)
        out = patch_subregion(base, style, region)
        expected = oracle_patch_subregion(
            image_to_nested(base), image_to_nested(style),
            region.x, region.y, region.width, region.height,
        )
        assert np.array_equal(out.pixels, np.array(expected, dtype=np.float32))

    @given(seed=st.integers(0, 10_000), data=st.data())
    @settings(max_examples=100, deadline=None)
    def test_outside_region_untouched(self, seed, data):
        base = make_image(seed=seed, height=10, width=12)
        style = make_image(seed=seed + 1, height=10, width=12)
        x = data.draw(st.integers(0, 11))
        y = data.draw(st.integers(0, 9))
        w = data.draw(st.integers(1, 12 - x))
        h = data.draw(st.integers(1, 10 - y))
        out = patch_subregion(base, style, Region(x, y, w, h))
        mask = np.zeros((10, 12), dtype=bool)
        mask[y:y + h, x:x + w] = True
        assert np.array_equal(out.pixels[~mask], base.pixels[~mask])
        assert np.array_equal(out.pixels[mask], style.pixels[mask])
        # inputs unmodified
        assert base.same_pixels(make_image(seed=seed, height=10, width=12))


class TestPatchPixels:
    def test_q_zero_is_identity(self, small_image):
        style = make_image(seed=9)
        out, mask = patch_pixels(small_image, style, derive_stream(1, 0), 0.0)
        assert out.same_pixels(small_image)
        assert not mask.bits.any()

    def test_q_one_is_style(self, small_image):
        style = make_image(seed=9)
        out, mask = patch_pixels(small_image, style, derive_stream(1, 0), 1.0)
        assert out.same_pixels(style)
        assert mask.bits.all()

    def test_replaced_fraction_binomial_bound(self):
        base = make_image(seed=4, height=96, width=96)
        style = make_image(seed=5, height=96, width=96)
        _, mask = patch_pixels(base, style, derive_stream(42, 0), 0.5)
        sigma = (0.25 / (96 * 96)) ** 0.5
        assert abs(mask.replaced_fraction() - 0.5) < 4 * sigma

    def test_matches_scalar_oracle(self):
        base = make_image(seed=6, height=5, width=7)
        style = make_image(seed=7, height=5, width=7)
        out, mask = patch_pixels(base, style, derive_stream(13, 2), 0.5)
        expected, expected_mask = oracle_patch_pixels(
            image_to_nested(base), image_to_nested(style), derive_stream(13, 2), 0.5
        )
        assert np.array_equal(out.pixels, np.array(expected, dtype=np.float32))
        assert np.array_equal(mask.bits, np.array(expected_mask))

    def test_mask_image_consistency(self):
        base = make_image(seed=8, height=9, width=9)
        style = make_image(seed=9, height=9, width=9)
        out, mask = patch_pixels(base, style, derive_stream(77, 0), 0.3)
        assert np.array_equal(out.pixels[mask.bits], style.pixels[mask.bits])
        assert np.array_equal(out.pixels[~mask.bits], base.pixels[~mask.bits])

    def test_dimension_mismatch(self, small_image):
        other = make_image(height=9, width=8)
        with pytest.raises(DimensionMismatch):
            patch_pixels(small_image, other, derive_stream(0, 0), 0.5)


class TestFillRegion:
    def test_zero_fill_full_image(self):
        base = Image(np.ones((3, 3, 3), dtype=np.float32))
        out = fill_region(base, Region(0, 0, 3, 3), "zero")
        assert np.array_equal(out.pixels, np.zeros((3, 3, 3), dtype=np.float32))

    def test_mean_fill_constant_image_is_noop(self):
        base = Image(np.full((4, 4, 3), 0.25, dtype=np.float32))
        out = fill_region(base, Region(1, 1, 2, 2), "mean")
        assert out.same_pixels(base)

    def test_noise_fill_matches_oracle(self):
        base = make_image(seed=10, height=6, width=6)
        region = Region(1, 2, 3, 2)
        out = fill_region(base, region, "noise", derive_stream(55, 0))
        expected = oracle_fill_noise(
            image_to_nested(base), derive_stream(55, 0),
            region.x, region.y, region.width, region.height,
        )
        assert np.array_equal(out.pixels, np.array(expected, dtype=np.float32))
        assert out.pixels.min() >= 0.0 and out.pixels.max() <= 1.0

    def test_out_of_bounds(self, small_image):
        with pytest.raises(RegionOutOfBounds):
            fill_region(small_image, Region(7, 7, 3, 3), "zero")

    def test_unknown_fill_kind(self, small_image):
        with pytest.raises(ValueError):
            fill_region(small_image, Region(0, 0, 1, 1), "sparkles")
