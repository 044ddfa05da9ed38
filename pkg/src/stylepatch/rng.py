"""Deterministic, splittable random streams.

Every stream is keyed by ``(master_seed, stream_index)`` through a
counter-based Philox generator, so per-item streams can be derived in any
order, on any thread, and always replay the same draw sequence.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


class RngStream:
    """A single-owner deterministic random stream.

    Two streams constructed from the same ``(master_seed, stream_index)``
    produce bit-identical draw sequences; distinct indices give statistically
    independent streams. Instances must not be shared mutably across threads.
    """

    __slots__ = ("master_seed", "stream_index", "_gen")

    def __init__(self, master_seed: int, stream_index: int):
        self.master_seed = int(master_seed)
        self.stream_index = int(stream_index)
        key = np.array(
            [self.master_seed & _MASK64, self.stream_index & _MASK64], dtype=np.uint64
        )
        self._gen = np.random.Generator(np.random.Philox(key=key))

    def random(self, size=None):
        """Uniform floats in [0, 1)."""
        return self._gen.random(size)

    def uniform(self, low=0.0, high=1.0, size=None):
        """Uniform floats in [low, high)."""
        return self._gen.uniform(low, high, size)

    def integers(self, low, high=None, size=None):
        """Uniform integers in [low, high)."""
        return self._gen.integers(low, high, size)

    def normal(self, loc=0.0, scale=1.0, size=None):
        return self._gen.normal(loc, scale, size)

    def clone(self) -> "RngStream":
        """A fresh stream at the start of the same sequence."""
        return RngStream(self.master_seed, self.stream_index)

    def __repr__(self):
        return f"RngStream(master_seed={self.master_seed}, stream_index={self.stream_index})"


def derive_stream(master_seed: int, item_index: int) -> RngStream:
    """The unique stream for one work item.

    Independent of processing order and thread count: deriving the stream
    twice yields identical sequences.
    """
    return RngStream(master_seed, item_index)
