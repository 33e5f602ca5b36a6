"""
Counter-based random streams

Every stream is a Philox generator keyed by (seed, stream id), so the same pair
reproduces the same samples on any machine and in any worker.
"""

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class RngStream:
    seed: int
    stream: int = 0

    def __post_init__(self):
        object.__setattr__(self, "seed", int(self.seed) & _MASK64)
        object.__setattr__(self, "stream", int(self.stream) & _MASK64)

    def generator(self) -> np.random.Generator:
        key = np.array([self.seed, self.stream], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))

    def substream(self, index: int) -> "RngStream":
        """
        Independent child stream.

        The child id hashes (seed, parent id, index) through a SeedSequence, so paths of
        any depth map to distinct 64-bit ids.
        """
        if index < 0:
            raise ValueError(f"substream index must be non-negative, got {index}")
        sequence = np.random.SeedSequence(self.seed, spawn_key=(self.stream, int(index)))
        return RngStream(self.seed, int(sequence.generate_state(1, np.uint64)[0]))

    def to_dict(self):
        return {"seed": self.seed, "stream": self.stream}
