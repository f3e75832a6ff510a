"""Seeded, independent random-number streams."""

from dataclasses import dataclass, field, replace
from typing import Tuple

import numpy as np


@dataclass(frozen=True)
class RngStream:
    """A reproducible random stream identified by (seed, stream_id).

    Streams with the same seed but different ids (or substream paths) are
    derived through ``numpy.random.SeedSequence`` spawn keys, so they are
    statistically independent while remaining deterministic.
    """

    seed: int
    stream_id: int = 0
    path: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if not 0 <= self.stream_id < 2**64:
            raise ValueError(f"stream_id must be a 64-bit unsigned integer, got {self.stream_id}")

    def generator(self) -> np.random.Generator:
        """A fresh generator positioned at the start of this stream."""
        sequence = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_id, *self.path))
        return np.random.Generator(np.random.PCG64(sequence))

    def substream(self, index: int) -> "RngStream":
        """Child stream, e.g. one per Monte Carlo chunk."""
        return replace(self, path=(*self.path, index))

    def with_stream(self, stream_id: int) -> "RngStream":
        return RngStream(seed=self.seed, stream_id=stream_id)
