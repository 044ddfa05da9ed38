"""Optional external style provider backed by a serialized network.

The model file is a TorchScript module with signature
``forward(image: float tensor [N, 3, H, W] in [0, 1], embedding: float
tensor [N, D]) -> float tensor [N, 3, H, W]``. The embedding dimension D is
read from a ``embedding_dim`` attribute on the module, or passed explicitly.
The provider draws the embedding from a standard normal per call, runs the
network, alpha-blends with the input, and clamps to [0, 1].
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ModelNotFound, ModelParseError, ShapeMismatch
from .rng import RngStream
from .types import Image

DEFAULT_EMBEDDING_DIM = 100


@dataclass(frozen=True, eq=False)
class ExternalProvider:
    """Provider wrapping a loaded TorchScript stylizer."""

    model: object
    embedding_dim: int
    alpha: float
    name: str = "external"

    def stylize(self, image: Image, rng: RngStream) -> tuple[Image, Optional[dict]]:
        import torch

        if image.channels != 3:
            raise ShapeMismatch(f"external model expects 3 channels, got {image.channels}")
        embedding = rng.normal(size=(1, self.embedding_dim))
        tensor = torch.from_numpy(
            np.ascontiguousarray(image.pixels.transpose(2, 0, 1))[None]
        )
        emb = torch.from_numpy(embedding.astype(np.float32))
        with torch.no_grad():
            try:
                result = self.model(tensor, emb)
            except RuntimeError as exc:
                raise ShapeMismatch(f"model rejected input of shape {tuple(tensor.shape)}: {exc}")
        if tuple(result.shape) != tuple(tensor.shape):
            raise ShapeMismatch(
                f"model output shape {tuple(result.shape)} != input shape {tuple(tensor.shape)}"
            )
        stylized = result[0].numpy().transpose(1, 2, 0).astype(np.float64)
        out = self.alpha * stylized + (1.0 - self.alpha) * image.pixels
        np.clip(out, 0.0, 1.0, out=out)
        params = {"embedding_dim": self.embedding_dim, "alpha": self.alpha}
        return Image._wrap(np.ascontiguousarray(out, dtype=np.float32)), params


def load_external_provider(
    model_path: str, alpha: float = 0.5, embedding_dim: Optional[int] = None
) -> ExternalProvider:
    """Load a serialized stylizer network from ``model_path``.

    Raises ``ModelNotFound`` if the file is missing and ``ModelParseError``
    if it cannot be deserialized. Shape incompatibilities surface as
    ``ShapeMismatch`` when the provider is first applied to an image.
    """
    if not os.path.isfile(model_path):
        raise ModelNotFound(f"no model file at {model_path}")
    try:
        import torch

        model = torch.jit.load(model_path, map_location="cpu")
        model.eval()
    except ModuleNotFoundError as exc:
        raise ModelParseError(f"torch is required to load external models: {exc}")
    except Exception as exc:
        raise ModelParseError(f"failed to load {model_path}: {exc}")
    if embedding_dim is None:
        embedding_dim = int(getattr(model, "embedding_dim", DEFAULT_EMBEDDING_DIM))
    return ExternalProvider(model=model, embedding_dim=embedding_dim, alpha=alpha)
