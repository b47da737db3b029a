# radio/streams.py
"""
Per-node random streams.

Node v's generator is seeded by SeedSequence(master_seed, spawn_key=(*salt, v)),
so every node's draws are independent of the others and of iteration order.
The x used by node v in round t is the t-th uniform of v's stream.
"""

import numpy as np

CHUNK_ROUNDS = 512


class NodeStreams:
    """
    Independent float64 uniform streams, one per node, read round by round.

    Rounds must be requested in non-decreasing order.
    """

    def __init__(self, seed: int, n: int, salt: tuple[int, ...] = ()):
        self.seed = int(seed)
        self.n = n
        self.salt = tuple(int(s) for s in salt)
        self._generators = [
            np.random.Generator(
                np.random.PCG64(np.random.SeedSequence(self.seed, spawn_key=(*self.salt, v)))
            )
            for v in range(n)
        ]
        self._block = np.empty((n, 0))
        self._block_start = 1

    def _refill(self) -> None:
        self._block_start += self._block.shape[1]
        if self.n == 0:
            self._block = np.empty((0, CHUNK_ROUNDS))
            return
        self._block = np.stack([g.random(CHUNK_ROUNDS) for g in self._generators])

    def round_uniforms(self, t: int) -> np.ndarray:
        """Uniforms in [0, 1) drawn by every node for round t (1-based)."""
        if t < self._block_start:
            raise ValueError(f"Round {t} already consumed (stream at {self._block_start})")
        while t >= self._block_start + self._block.shape[1]:
            self._refill()
        return self._block[:, t - self._block_start]
