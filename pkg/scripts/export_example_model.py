#!/usr/bin/env python3
"""Export a tiny TorchScript style model usable with ``--style external:...``.

The exported module follows the external-provider contract: a scripted
``forward(image, embedding)`` where ``image`` is [N, 3, H, W] float in
[0, 1] and ``embedding`` is [N, D] float, returning an image-shaped tensor,
plus an ``embedding_dim`` attribute. This example tints the image by a
color derived from the embedding; it is a format demonstrator, not a real
style network.

Example:
    python3 scripts/export_example_model.py tint.pt --embedding-dim 16
"""

import argparse

import torch


class TintModel(torch.nn.Module):
    def __init__(self, embedding_dim: int):
        super().__init__()
        self.embedding_dim = embedding_dim
        proj = torch.linspace(-1.0, 1.0, 3 * embedding_dim).reshape(embedding_dim, 3)
        self.register_buffer("proj", proj / embedding_dim)

    def forward(self, image: torch.Tensor, embedding: torch.Tensor) -> torch.Tensor:
        tint = torch.sigmoid(embedding @ self.proj)  # [N, 3] in (0, 1)
        return (image + tint[:, :, None, None]).clamp(0.0, 1.0)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("output", help="TorchScript file to write")
    parser.add_argument("--embedding-dim", type=int, default=16)
    args = parser.parse_args()

    scripted = torch.jit.script(TintModel(args.embedding_dim))
    scripted.save(args.output)
    print(f"wrote TorchScript model (embedding_dim={args.embedding_dim}) -> {args.output}")


if __name__ == "__main__":
    main()
