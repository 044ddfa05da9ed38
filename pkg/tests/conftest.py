import numpy as np
import pytest

from stylepatch import Image


def make_image(seed=0, height=8, width=8, channels=3):
    rng = np.random.default_rng(seed)
    return Image(rng.random((height, width, channels)).astype(np.float32))


@pytest.fixture
def small_image():
    return make_image()


@pytest.fixture
def stl_sized_image():
    return make_image(seed=1, height=96, width=96)
