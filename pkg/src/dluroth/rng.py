"""Counter-based random draws.

Draw ``i`` of stream ``s`` is a pure function of ``(seed, s, i)`` (BLAKE2b of
the three), so results do not depend on the order in which independent
consumers pull numbers.
"""

from __future__ import annotations

import hashlib
import struct


class CounterRNG:
    def __init__(self, seed: int, stream: str = ""):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self.stream = stream
        self.counter = 0

    def child(self, name: str) -> "CounterRNG":
        """Independent stream derived from this one's seed."""
        return CounterRNG(self.seed, f"{self.stream}/{name}")

    def _block(self, i: int) -> int:
        h = hashlib.blake2b(digest_size=16)
        h.update(struct.pack("<Q", self.seed))
        h.update(self.stream.encode())
        h.update(struct.pack("<Q", i))
        return int.from_bytes(h.digest(), "little")

    def bits128(self) -> int:
        v = self._block(self.counter)
        self.counter += 1
        return v

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        span = hi - lo + 1
        if span <= 0:
            raise ValueError("empty range")
        limit = (1 << 128) - (1 << 128) % span
        while True:
            v = self.bits128()
            if v < limit:
                return lo + v % span

    def choice(self, seq):
        return seq[self.randint(0, len(seq) - 1)]

    def random(self) -> float:
        return self.bits128() / float(1 << 128)
