import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stylepatch import (
    AugmentConfig,
    AugmentRecord,
    EmptyRanges,
    Image,
    Infeasible,
    OutOfBounds,
    Region,
    validate_config,
)

from conftest import make_image


class TestImage:
    def test_rejects_out_of_range_intensity(self):
        arr = np.full((2, 2, 3), 1.5, dtype=np.float32)
        with pytest.raises(ValueError):
            Image(arr)
        with pytest.raises(ValueError):
            Image(-arr)

    def test_rejects_zero_dimension(self):
        with pytest.raises(ValueError):
            Image(np.zeros((0, 4, 3), dtype=np.float32))

    def test_rejects_bad_channel_count(self):
        with pytest.raises(ValueError):
            Image(np.zeros((2, 2, 4), dtype=np.float32))

    def test_accessors(self):
        img = make_image(height=5, width=7)
        assert (img.width, img.height, img.channels, img.area) == (7, 5, 3, 35)

    def test_pixels_are_frozen(self):
        img = make_image()
        with pytest.raises(ValueError):
            img.pixels[0, 0, 0] = 0.5

    def test_construction_does_not_freeze_caller_array(self):
        arr = np.zeros((2, 2, 3), dtype=np.float32)
        Image(arr)
        arr[0, 0, 0] = 1.0  # still writeable

    def test_grayscale_allowed(self):
        img = Image(np.zeros((4, 4, 1), dtype=np.float32))
        assert img.channels == 1


class TestRegion:
    def test_rejects_negative_corner(self):
        with pytest.raises(ValueError):
            Region(x=-1, y=0, width=1, height=1)

    def test_rejects_degenerate_size(self):
        with pytest.raises(ValueError):
            Region(x=0, y=0, width=0, height=1)

    def test_fits(self):
        assert Region(x=2, y=3, width=4, height=5).fits(6, 8)
        assert not Region(x=3, y=3, width=4, height=5).fits(6, 8)

    def test_dict_round_trip(self):
        r = Region(x=1, y=2, width=3, height=4)
        assert Region.from_dict(r.to_dict()) == r


class TestValidateConfig:
    def test_small_area_always_fits(self):
        cfg = AugmentConfig(area_ratio_min=0.02, area_ratio_max=0.02,
                            aspect_ratio_min=0.3, aspect_ratio_max=1 / 0.3)
        assert validate_config(cfg, 96, 96) is cfg

    def test_full_area_extreme_aspect_infeasible(self):
        # area fraction 1 at aspect 4 needs a 192-pixel side on a 96x96 image
        cfg = AugmentConfig(area_ratio_min=1.0, area_ratio_max=1.0,
                            aspect_ratio_min=4.0, aspect_ratio_max=4.0)
        with pytest.raises(Infeasible):
            validate_config(cfg, 96, 96)

    def test_probability_out_of_bounds(self):
        with pytest.raises(OutOfBounds):
            validate_config(AugmentConfig(gate_probability=1.3), 96, 96)

    def test_inverted_range(self):
        with pytest.raises(EmptyRanges):
            validate_config(AugmentConfig(area_ratio_min=0.4, area_ratio_max=0.2), 96, 96)
        with pytest.raises(EmptyRanges):
            validate_config(
                AugmentConfig(aspect_ratio_min=2.0, aspect_ratio_max=1.0), 96, 96
            )

    def test_full_square_feasible(self):
        cfg = AugmentConfig(area_ratio_min=1.0, area_ratio_max=1.0,
                            aspect_ratio_min=1.0, aspect_ratio_max=1.0)
        assert validate_config(cfg, 96, 96) is cfg

    def test_unknown_mode(self):
        with pytest.raises(OutOfBounds):
            validate_config(AugmentConfig(patch_mode="bogus"), 96, 96)

    @given(
        sl=st.floats(0.01, 1.0), sh=st.floats(0.01, 1.0),
        rl=st.floats(0.05, 5.0), rh=st.floats(0.05, 5.0),
        w=st.integers(4, 128), h=st.integers(4, 128),
    )
    @settings(max_examples=200)
    def test_validation_is_pure(self, sl, sh, rl, rh, w, h):
        cfg = AugmentConfig(area_ratio_min=sl, area_ratio_max=sh,
                            aspect_ratio_min=rl, aspect_ratio_max=rh)

        def verdict():
            try:
                validate_config(cfg, w, h)
                return "ok"
            except Exception as exc:
                return type(exc).__name__

        assert verdict() == verdict()


class TestAugmentRecord:
    def test_region_presence_invariant(self):
        with pytest.raises(ValueError):
            AugmentRecord(source_id="a", stream_index=0, applied=False,
                          patch_mode="subregion", region=Region(0, 0, 1, 1))
        with pytest.raises(ValueError):
            AugmentRecord(source_id="a", stream_index=0, applied=True,
                          patch_mode="subregion", region=None)

    def test_dict_round_trip(self):
        rec = AugmentRecord(
            source_id="img3", stream_index=12, applied=True, patch_mode="subregion",
            region=Region(1, 2, 3, 4),
            region_draw={"target_area": 11.5, "aspect": 0.8},
            style_params={"alpha": 0.5}, attempts_used=2,
        )
        assert AugmentRecord.from_dict(rec.to_dict()) == rec
