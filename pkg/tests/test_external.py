import numpy as np
import pytest

torch = pytest.importorskip("torch")

from stylepatch import derive_stream
from stylepatch.errors import ModelNotFound, ModelParseError, ShapeMismatch
from stylepatch.external import load_external_provider

from conftest import make_image


class _IdentityNet(torch.nn.Module):
    """Stylizer whose transfer is the identity map on the image."""

    def __init__(self):
        super().__init__()
        self.embedding_dim = 8

    def forward(self, image, embedding):
        # consume the embedding without affecting the output
        return image + 0.0 * embedding.sum()


class _WrongShapeNet(torch.nn.Module):
    def __init__(self):
        super().__init__()
        self.embedding_dim = 8

    def forward(self, image, embedding):
        return image[:, :, :4, :4] + 0.0 * embedding.sum()


@pytest.fixture
def identity_model(tmp_path):
    path = tmp_path / "identity.pt"
    torch.jit.script(_IdentityNet()).save(str(path))
    return str(path)


def test_missing_path():
    with pytest.raises(ModelNotFound):
        load_external_provider("/nonexistent/model.pt")


def test_parse_error(tmp_path):
    bad = tmp_path / "bad.pt"
    bad.write_bytes(b"not a model")
    with pytest.raises(ModelParseError):
        load_external_provider(str(bad))


def test_identity_network_blend_is_identity(identity_model):
    provider = load_external_provider(identity_model, alpha=0.5)
    assert provider.embedding_dim == 8
    img = make_image(seed=1, height=16, width=16)
    out, params = provider.stylize(img, derive_stream(4, 0))
    # blending an image with itself leaves it unchanged up to float rounding
    assert np.allclose(out.pixels, img.pixels, atol=1e-6)
    assert params["embedding_dim"] == 8


def test_deterministic(identity_model):
    provider = load_external_provider(identity_model, alpha=0.5)
    img = make_image(seed=2, height=16, width=16)
    a, _ = provider.stylize(img, derive_stream(5, 3))
    b, _ = provider.stylize(img, derive_stream(5, 3))
    assert a.same_pixels(b)


def test_output_shape_mismatch(tmp_path):
    path = tmp_path / "wrong.pt"
    torch.jit.script(_WrongShapeNet()).save(str(path))
    provider = load_external_provider(str(path))
    img = make_image(seed=3, height=16, width=16)
    with pytest.raises(ShapeMismatch):
        provider.stylize(img, derive_stream(0, 0))
