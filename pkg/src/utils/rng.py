"""Seeded random streams, one per simulation concern."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

STREAM_NAMES = ("placement", "battery", "identity", "mobility")


@dataclass(frozen=True)
class RandomStreams:
    placement: np.random.Generator
    battery: np.random.Generator
    identity: np.random.Generator
    mobility: np.random.Generator

    @classmethod
    def from_seed(cls, seed: int) -> RandomStreams:
        """Split one 64-bit seed into independent child streams.

        Streams are spawned in a fixed order, so drawing more values from one
        concern never shifts the values another concern sees.
        """
        children = np.random.SeedSequence(seed).spawn(len(STREAM_NAMES))
        generators = {
            name: np.random.Generator(np.random.PCG64(child))
            for name, child in zip(STREAM_NAMES, children)
        }
        return cls(**generators)
